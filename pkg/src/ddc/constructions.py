"""Periodic and folded DDC constructions.

Arrays index columns by ``i`` and rows by ``j``; an "``l x k`` window" is
``l`` rows by ``k`` columns, i.e. ``window(a, origin, width=k, height=l)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

import numpy as np

from .algebra import (FiniteField, SidonSet, gf, gf_primitive, is_prime, is_prime_power,
                      is_primitive_root, lift_to_ruler, primitive_root)
from .configuration import Configuration, LinearRule, PeriodicArray, Shape
from .grid import GridKind

SQ = GridKind.SQUARE


def periodic_welch(p: int, alpha: int | None = None) -> PeriodicArray:
    """Dot at ``(i, j)`` iff ``alpha**i == j (mod p)``; period ``(p-1, p)``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if alpha is None:
        alpha = primitive_root(p)
    if not is_primitive_root(alpha, p):
        raise ValueError(f"{alpha} is not a primitive root modulo {p}")
    dots = [(i, pow(alpha, i, p)) for i in range(p - 1)]
    return PeriodicArray(SQ, (p - 1, p), dots,
                         {"construction": "welch", "p": p, "alpha": alpha})


def periodic_golomb(q: int, alpha: int | None = None, beta: int | None = None,
                    field: FiniteField | None = None) -> PeriodicArray:
    """Dot at ``(i, j)`` iff ``alpha**i + beta**j == 1`` in GF(q); period
    ``(q-1, q-1)``.  Field elements use the integer encoding of
    :class:`~ddc.algebra.FiniteField`."""
    if not is_prime_power(q):
        raise ValueError(f"{q} is not a prime power")
    F = field if field is not None else gf(q)
    if alpha is None:
        alpha = gf_primitive(F)
    if beta is None:
        beta = alpha
    for name, g in (("alpha", alpha), ("beta", beta)):
        if not 0 < g < q or not F.is_primitive(g):
            raise ValueError(f"{name}={g} is not a primitive element of GF({q})")
    n = q - 1
    # beta**j == 1 - alpha**i
    dots = []
    for i in range(n):
        rhs = F.sub(1, F.pow(alpha, i))
        if rhs:
            dots.append((i, F.dlog(rhs, beta)))
    return PeriodicArray(SQ, (n, n), dots,
                         {"construction": "golomb", "q": q, "alpha": alpha, "beta": beta})


def _ruler(S) -> SidonSet:
    S = S if isinstance(S, SidonSet) else SidonSet(S)
    if S.modulus is not None:
        raise ValueError("expected a ruler over the integers")
    return S


def _modular(D, n=None) -> SidonSet:
    if isinstance(D, SidonSet):
        if D.modulus is None:
            if n is None:
                raise ValueError("a modulus is required")
            return SidonSet(D.elements, n)
        return D
    if n is None:
        raise ValueError("a modulus is required")
    return SidonSet(D, n)


def folded_ruler(S, ell: int, k: int) -> Configuration:
    """``ell`` rows by ``k`` columns; dot at ``(i, j)`` iff ``i*ell + j`` is a mark."""
    S = _ruler(S)
    n = S.elements[-1] if S.elements else 0
    if ell < 1 or k < 1:
        raise ValueError("ell and k must be positive")
    if ell * k > n + 1:
        raise ValueError(f"ell*k = {ell * k} exceeds ruler length + 1 = {n + 1}")
    return Configuration(SQ, [(i, j) for i in range(k) for j in range(ell)
                              if i * ell + j in S])


def doubly_periodic_folding(D, ell: int, k: int, n: int | None = None) -> PeriodicArray:
    """Dot at ``(i, j)`` iff ``(i*ell + j) mod n`` lies in ``D``; every
    ``ell x k`` window is a DDC."""
    D = _modular(D, n)
    n = D.modulus
    if ell < 1 or k < 1:
        raise ValueError("ell and k must be positive")
    if ell * k > n:
        raise ValueError(f"ell*k = {ell * k} exceeds n = {n}")
    eta = n // gcd(n, ell)
    return PeriodicArray(SQ, (eta, n), None,
                         {"construction": "dpf", "n": n, "ell": ell, "k": k},
                         LinearRule(ell, 1, n, frozenset(D.elements)))


def crt_construction(D, ell: int, k: int, n: int | None = None) -> PeriodicArray:
    """Dot at ``(i, j)`` iff ``(i*ell + j*k) mod n`` lies in ``D`` with
    ``n = ell*k`` and ``gcd(ell, k) = 1``; period ``(k, ell)``."""
    D = _modular(D, ell * k if n is None else n)
    n = D.modulus
    if n != ell * k:
        raise ValueError(f"n = {n} is not ell*k = {ell * k}")
    if gcd(ell, k) != 1:
        raise ValueError(f"gcd({ell}, {k}) != 1")
    return PeriodicArray(SQ, (k, ell), None,
                         {"construction": "crt", "n": n, "ell": ell, "k": k},
                         LinearRule(ell, k, n, frozenset(D.elements)))


# ---------------------------------------------------------------------------
# Lee-sphere constructions

def lee_sphere_cells(R: int, centre=(0, 0)):
    ci, cj = centre
    return [(ci + di, cj + dj) for di in range(-R, R + 1)
            for dj in range(-(R - abs(di)), R - abs(di) + 1)]


def leedd_index(i: int, j: int, R: int) -> int:
    return i * R + j * (R + 1) + R * R + R


def leedd(r: int, D) -> Configuration:
    """Dots of the Lee sphere of radius ``floor(r/2)`` about the origin whose
    fold index ``iR + j(R+1) + R^2 + R`` is a mark of the ruler ``D``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if isinstance(D, SidonSet) and D.modulus is not None:
        D = lift_to_ruler(D)
    D = _ruler(D)
    R = r // 2
    return Configuration(SQ, [p for p in lee_sphere_cells(R) if leedd_index(*p, R) in D])


def doubly_periodic_leedd(R: int, D, n: int | None = None, min_n: int | None = None,
                          meta=None) -> PeriodicArray:
    """Dot at ``(i, j)`` iff ``(iR + j(R+1)) mod n`` lies in ``D``; period ``(n, n)``."""
    D = _modular(D, n)
    n = D.modulus
    need = 2 * R * R + 2 * R + 1 if min_n is None else min_n
    if n < need:
        raise ValueError(f"n = {n} is below the required {need}")
    info = {"construction": "dpleedd", "R": R, "n": n}
    if meta:
        info.update(meta)
    return PeriodicArray(SQ, (n, n), None, info, LinearRule(R, R + 1, n, frozenset(D.elements)))


@dataclass(frozen=True)
class ExtendedLeeSphereSpec:
    R: int
    t: int
    anchor: tuple = (0, 0)

    def __post_init__(self):
        if self.R < 0 or self.t < 1:
            raise ValueError(f"need R >= 0 and t >= 1, got R={self.R}, t={self.t}")

    @property
    def size(self) -> int:
        return 2 * self.R * self.R + self.t * (2 * self.R + 1)


def extended_lee_shape(spec: ExtendedLeeSphereSpec) -> Shape:
    """Union of Lee spheres of radius ``R`` centred on ``anchor + (s, s)``, ``0 <= s < t``."""
    R, t = spec.R, spec.t
    ai, aj = spec.anchor
    x, y = np.meshgrid(np.arange(-R, t + R), np.arange(-R, t + R), indexing="ij")
    # nearest centre on the diagonal segment: clamp into [min(x,y), max(x,y)] and [0, t-1]
    s = np.clip(np.clip(0, np.minimum(x, y), np.maximum(x, y)), 0, t - 1)
    s = np.where(np.maximum(x, y) < 0, 0, np.where(np.minimum(x, y) > t - 1, t - 1, s))
    keep = np.abs(x - s) + np.abs(y - s) <= R
    return Shape(SQ, zip((x[keep] + ai).tolist(), (y[keep] + aj).tolist()))


def extended_leedd_array(R: int, a, D, n: int | None = None) -> PeriodicArray:
    """Doubly periodic LeeDD array whose ``(R, floor(aR))``-diagonally
    extended Lee spheres all carry DDCs.

    ``a`` may be any positive real; it is converted to an exact fraction so
    the bound ``n >= (2+2a)R^2 + aR`` is checked without rounding.
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    D = _modular(D, n)
    n = D.modulus
    bound = (2 + 2 * a) * R * R + a * R
    if n < bound:
        raise ValueError(f"n = {n} is below (2+2a)R^2 + aR = {float(bound):.6g}")
    t = max(1, floor(a * R))
    return doubly_periodic_leedd(R, D, min_n=2 * R * R + t * (2 * R + 1),
                                 meta={"construction": "extended_leedd", "t": t, "a": str(a)})


def extended_t(R: int, a) -> int:
    return max(1, floor(Fraction(a) * R))
