"""Primes, finite fields GF(p^k), Sidon sets and Golomb rulers."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, product
from math import comb


# ---------------------------------------------------------------------------
# primes

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int):
    """``(p, k)`` with ``q = p**k``, or ``None``."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def next_prime(x) -> int:
    n = int(x) + 1 if x >= 0 else 2
    while not is_prime(n):
        n += 1
    return n


def next_prime_power(x) -> int:
    """Smallest prime power strictly greater than ``x`` (``x`` may be real)."""
    n = int(x) + 1 if x >= 0 else 2
    while not is_prime_power(n):
        n += 1
    return n


def _factor(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    fs = _factor(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    raise AssertionError("unreachable")


def is_primitive_root(g: int, p: int) -> bool:
    if not is_prime(p) or g % p == 0:
        return False
    return all(pow(g, (p - 1) // f, p) != 1 for f in _factor(p - 1)) if p > 2 else g % 2 == 1


# ---------------------------------------------------------------------------
# GF(p^k)
#
# Elements are ints 0..q-1 read as base-p digit vectors, least significant
# digit = constant coefficient.  Multiplication goes through exp/log tables
# built from a primitive element at construction time.

def _poly_mulmod(a, b, mod, p):
    """Product of coefficient lists (low degree first) modulo the monic ``mod``."""
    k = len(mod) - 1
    res = [0] * (2 * k)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for t in range(k + 1):
                res[d - k + t] = (res[d - k + t] - c * mod[t]) % p
    return res[:k]


def _digits(x, p, k):
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(v, p):
    x = 0
    for c in reversed(v):
        x = x * p + c
    return x


def _has_root_free_factorisation(mod, p):
    """Irreducibility by brute force: no monic factor of degree 1..k/2."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            if _poly_divides(f, mod, p):
                return False
    return True


def _poly_divides(f, g, p):
    g = list(g)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    for d in range(len(g) - 1, df - 1, -1):
        c = g[d] * inv % p
        if c:
            for t in range(df + 1):
                g[d - df + t] = (g[d - df + t] - c * f[t]) % p
    return not any(g[:df])


def is_irreducible(mod, p: int) -> bool:
    mod = [c % p for c in mod]
    if len(mod) < 2 or mod[-1] == 0:
        return False
    if len(mod) == 2:
        return True
    return _has_root_free_factorisation(mod, p)


def smallest_irreducible(p: int, k: int):
    """Lexicographically smallest monic irreducible of degree ``k`` over GF(p),
    comparing coefficient vectors from the constant term up."""
    if k == 1:
        return [0, 1]
    for x in range(p ** k):
        mod = _digits(x, p, k) + [1]
        if is_irreducible(mod, p):
            return mod
    raise AssertionError("unreachable")


class FiniteField:
    """GF(p^k) with elements encoded as ints in ``range(q)``."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p) or k < 1:
            raise ValueError(f"GF({p}^{k}) is not a field")
        self.p, self.k, self.q = p, k, p ** k
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = tuple(modulus)
        self._build_tables()

    def _build_tables(self):
        q = self.q
        self.alpha = self._find_primitive()
        self.exp = [0] * (2 * (q - 1))
        self.log = [None] * q
        x = 1
        for e in range(q - 1):
            self.exp[e] = x
            self.log[x] = e
            x = self._slow_mul(x, self.alpha)
        for e in range(q - 1, 2 * (q - 1)):
            self.exp[e] = self.exp[e - (q - 1)]

    def _slow_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        return _undigits(_poly_mulmod(_digits(a, self.p, self.k), _digits(b, self.p, self.k),
                                      self.modulus, self.p), self.p)

    def _slow_pow(self, a, e):
        out = 1
        while e:
            if e & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return out

    def _find_primitive(self):
        if self.q == 2:
            return 1
        n = self.q - 1
        fs = _factor(n)
        for a in range(1, self.q):
            if all(self._slow_pow(a, n // f) != 1 for f in fs):
                return a
        raise AssertionError("unreachable")

    def __repr__(self):
        return f"FiniteField(q={self.q}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == \
            (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def elements(self):
        return range(self.q)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        p, out, m = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return out

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        p, out, m = self.p, 0, 1
        while a:
            out += (-(a % p) % p) * m
            a //= p
            m *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a, e):
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def order(self, a) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        e = self.log[a]
        from math import gcd
        return n // gcd(n, e) if e else 1

    def is_primitive(self, a) -> bool:
        return a != 0 and self.order(a) == self.q - 1

    def dlog(self, a, base) -> int:
        """``e`` with ``base**e == a``; ``base`` must be primitive."""
        if not self.is_primitive(base):
            raise ValueError(f"{base} is not primitive")
        if a == 0:
            raise ValueError("log of 0")
        n = self.q - 1
        # log_base(a) = log_alpha(a) / log_alpha(base) mod n
        return self.log[a] * pow(self.log[base], -1, n) % n if n > 1 else 0

    def element(self, coeffs) -> int:
        """Element from its coefficient list, constant term first."""
        return _undigits([int(c) % self.p for c in coeffs] + [0] * (self.k - len(coeffs)), self.p)

    def coeffs(self, a):
        return _digits(a, self.p, self.k)

    def subfield(self, q0: int) -> list[int]:
        """Elements of the subfield of order ``q0`` (``q0**e == q``)."""
        if (self.q - 1) % (q0 - 1):
            raise ValueError(f"GF({q0}) is not a subfield of GF({self.q})")
        step = (self.q - 1) // (q0 - 1)
        return [0] + sorted(self.exp[step * t] for t in range(q0 - 1))


@lru_cache(maxsize=None)
def gf(q: int, modulus=None) -> FiniteField:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return FiniteField(pk[0], pk[1], None if modulus is None else tuple(modulus))


def gf_primitive(F: FiniteField) -> int:
    """Least element (in integer encoding) of multiplicative order ``q - 1``."""
    if F.q == 2:
        return 1
    n = F.q - 1
    fs = _factor(n)
    for a in range(1, F.q):
        if all(F.pow(a, n // f) != 1 for f in fs):
            return a
    raise AssertionError("unreachable")


def gf_primitives(F: FiniteField) -> list[int]:
    return [a for a in range(1, F.q) if F.is_primitive(a)]


# ---------------------------------------------------------------------------
# Sidon sets

@dataclass(frozen=True)
class SidonSet:
    """Elements with distinct pairwise differences in Z_n (``modulus=n``) or
    in Z (``modulus=None``: a Golomb ruler)."""

    elements: tuple
    modulus: int | None = None

    def __post_init__(self):
        n = self.modulus
        if n is not None:
            n = int(n)
            if n < 1:
                raise ValueError("modulus must be positive")
            els = sorted({int(a) % n for a in self.elements})
        else:
            els = sorted({int(a) for a in self.elements})
            if els and els[0] < 0:
                raise ValueError("ruler marks must be non-negative")
        object.__setattr__(self, "modulus", n)
        object.__setattr__(self, "elements", tuple(els))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        if self.modulus is not None:
            x %= self.modulus
        return x in self._set

    @property
    def _set(self):
        return frozenset(self.elements)

    @property
    def length(self) -> int:
        """Span of a ruler (``max - min``)."""
        return self.elements[-1] - self.elements[0] if self.elements else 0

    def is_sidon(self) -> bool:
        return is_sidon(self)


def is_sidon(D: SidonSet) -> bool:
    n = D.modulus
    seen = set()
    for a, b in combinations(D.elements, 2):
        for d in (b - a, a - b):
            if n is not None:
                d %= n
            if d in seen:
                return False
            seen.add(d)
    return True


def sums_distinct(D: SidonSet) -> bool:
    """The B_2 form: every sum ``a + b`` with ``a <= b`` is distinct."""
    n = D.modulus
    seen = set()
    els = D.elements
    for x in range(len(els)):
        for y in range(x, len(els)):
            s = els[x] + els[y]
            if n is not None:
                s %= n
            if s in seen:
                return False
            seen.add(s)
    return True


def shift_sidon(D: SidonSet, a: int) -> SidonSet:
    if D.modulus is None:
        raise ValueError("shift is defined only for Sidon sets mod n")
    return SidonSet([x + a for x in D.elements], D.modulus)


def lift_to_ruler(D: SidonSet) -> SidonSet:
    if D.modulus is None:
        raise ValueError("already a ruler")
    return SidonSet(D.elements, None)


def bose_b2(q: int, field: FiniteField | None = None, alpha: int | None = None) -> SidonSet:
    """Bose's ``q``-element Sidon set modulo ``q^2 - 1``.

    ``field`` overrides the default GF(q^2); ``alpha`` the primitive element.
    """
    if not is_prime_power(q):
        raise ValueError(f"{q} is not a prime power")
    F = field if field is not None else gf(q * q)
    if F.q != q * q:
        raise ValueError(f"field must have {q * q} elements")
    a = gf_primitive(F) if alpha is None else alpha
    if not F.is_primitive(a):
        raise ValueError(f"{a} is not primitive in GF({F.q})")
    n = q * q - 1
    return SidonSet([F.dlog(F.add(a, c), a) for c in F.subfield(q)], n)


# ---------------------------------------------------------------------------
# optimal Golomb rulers (embedded table)

@lru_cache(maxsize=1)
def _ruler_table():
    raw = json.loads(resources.files("ddc").joinpath("data/rulers.json").read_text())
    table = {}
    for entry in raw["rulers"]:
        D = SidonSet(entry["marks"])
        order, length = int(entry["order"]), int(entry["length"])
        if len(D) != order or D.length != length or not is_sidon(D):
            raise ValueError(f"corrupt ruler table entry for order {order}")
        table[order] = D
    return table


def optimal_ruler(order: int) -> SidonSet:
    table = _ruler_table()
    if order not in table:
        raise ValueError(f"no optimal ruler of order {order} in the table "
                         f"(have {min(table)}..{max(table)})")
    return table[order]


def ruler_table_orders() -> list[int]:
    return sorted(_ruler_table())


def is_perfect_ruler(D: SidonSet) -> bool:
    return D.modulus is None and D.length == comb(len(D), 2)
