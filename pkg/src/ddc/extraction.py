"""Lower-bound engine: best shifts of doubly periodic arrays over shapes, the
one-dimensional optimisations behind the asymptotic constants, and the four
end-to-end pipelines."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .algebra import bose_b2, next_prime_power, optimal_ruler, ruler_table_orders
from .anticodes import AnticodeSpec, Family, build_anticode
from .configuration import (Configuration, DDCClass, PeriodicArray, Shape, density,
                            is_ddc_class, residue_shift, to_record)
from .constructions import (ExtendedLeeSphereSpec, doubly_periodic_leedd, extended_lee_shape,
                            extended_leedd_array, lee_sphere_cells, leedd, periodic_golomb)
from .grid import GridKind

SQRT3 = math.sqrt(3.0)
INV_PHI = (math.sqrt(5.0) - 1) / 2


# ---------------------------------------------------------------------------
# best shift

def shift_counts(a: PeriodicArray, s: Shape) -> np.ndarray:
    """Dots in every shift of ``s``: indexed by shift for mask arrays, by
    residue for arrays given by a linear rule."""
    cells = s.as_array()
    if a.rule is not None:
        ra, rb, n, res = a.rule
        dots = np.array([(d, 0) for d in sorted(res)], dtype=np.int64).reshape(-1, 2)
        vals = (ra * cells[:, 0] + rb * cells[:, 1]) % n
        look = np.stack([vals, np.zeros_like(vals)], 1)
        return kernels.shift_counts(dots, (n, 1), look)[:, 0]
    return kernels.shift_counts(np.array(a.fundamental, dtype=np.int64).reshape(-1, 2),
                                a.period, cells)


def best_shift(a: PeriodicArray, s: Shape):
    """Shift ``v`` maximising the dots of ``a`` in ``v + s``.

    Returns ``(v, m, c)`` with ``c`` the dots moved back into ``s``.  Ties go
    to the lexicographically least ``v`` in the fundamental domain.
    """
    if a.kind is not s.kind:
        raise ValueError("array and shape live on different grids")
    counts = shift_counts(a, s)
    m = int(counts.max()) if counts.size else 0
    if a.rule is not None:
        v = residue_shift(a, 0, among=set(np.flatnonzero(counts == m).tolist()))
    else:
        flat = int(np.argmax(counts))          # C order: first hit is lex-least
        v = divmod(flat, a.period[1])
    c = Configuration(a.kind, [(i, j) for i, j in s.cells if (i + v[0], j + v[1]) in a])
    if c.m != m:
        raise AssertionError("shift count disagrees with restriction")
    return (int(v[0]), int(v[1])), m, c


def guarantee(delta: Fraction, size: int) -> int:
    x = delta * size
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# one-dimensional optimisation

def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10):
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    if tol <= 0:
        raise ValueError("need tol > 0")
    steps = max(1, math.ceil(math.log(tol / (hi - lo)) / math.log(INV_PHI)))
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def bisect_root(g, lo: float, hi: float, steps: int = 200) -> float:
    """Sign change of ``g`` on ``[lo, hi]``, to full float precision."""
    glo = g(lo)
    if glo * g(hi) > 0:
        raise ValueError("no sign change on the interval")
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return (lo + hi) / 2


def square_objective(theta: float) -> float:
    return (math.pi / 2 - 2 * theta + math.sin(2 * theta)) / math.cos(theta)


def square_slope(theta: float) -> float:
    """Numerator of the derivative of :func:`square_objective`."""
    return ((2 * math.cos(2 * theta) - 2) * math.cos(theta)
            + (math.pi / 2 - 2 * theta + math.sin(2 * theta)) * math.sin(theta))


def hex_objective(a: float) -> float:
    return (2 + 2 * a - a * a) / (math.sqrt(2) * math.sqrt(1 + a))


def hex_slope(a: float) -> float:
    """Numerator of the derivative of :func:`hex_objective`."""
    return (2 - 2 * a) * (1 + a) - (2 + 2 * a - a * a) / 2


@dataclass(frozen=True)
class OptimalConstants:
    theta: float
    mu: float
    c: float
    a: float
    mu_hex: float

    @property
    def dd(self) -> float:
        return self.mu / 2

    @property
    def ddbarstar(self) -> float:
        return self.mu_hex / 2

    @property
    def ddstar(self) -> float:
        return math.sqrt(2 / SQRT3) * self.mu / 2


_CONSTANTS = None


def optimal_constants() -> OptimalConstants:
    global _CONSTANTS
    if _CONSTANTS is None:
        # golden section brackets the maximum; the flat top limits it to about
        # sqrt(eps) in x, so the argmax is polished on the derivative's sign
        th, _ = golden_section_max(square_objective, 0.0, math.pi / 4, 1e-7)
        th = bisect_root(square_slope, th - 1e-5, th + 1e-5)
        a, _ = golden_section_max(hex_objective, 0.0, 1.5, 1e-7)
        a = bisect_root(hex_slope, a - 1e-5, a + 1e-5)
        _CONSTANTS = OptimalConstants(th, square_objective(th), math.cos(th), a, hex_objective(a))
    return _CONSTANTS


# ---------------------------------------------------------------------------
# shapes

def square_circle_intersection(R: int, theta: float) -> Shape:
    """Lattice points within distance ``R`` of the origin and inside the
    centred axis-parallel square of ``n = floor(2R cos theta)`` columns and rows."""
    if not 0 <= theta <= math.pi / 4 + 1e-12:
        raise ValueError("theta must lie in [0, pi/4]")
    n = max(1, math.floor(2 * R * math.cos(theta) + 1e-9))
    lo = -(n // 2)
    hi = lo + n - 1
    r2 = R * R
    return Shape(GridKind.SQUARE, [(i, j) for i in range(lo, hi + 1) for j in range(lo, hi + 1)
                                   if i * i + j * j <= r2])


def hex_circle(R: int, centre=(0, 0)) -> set:
    """Hexagonal-model points within Euclidean distance ``R`` of ``centre``."""
    i, j = np.meshgrid(np.arange(-2 * R, 2 * R + 1), np.arange(-2 * R, 2 * R + 1), indexing="ij")
    keep = i * i - i * j + j * j <= R * R
    return set(zip((i[keep] + centre[0]).tolist(), (j[keep] + centre[1]).tolist()))


# ---------------------------------------------------------------------------
# pipeline reports

@dataclass
class PipelineReport:
    pipeline: str
    cls: DDCClass
    r: int
    shape_size: int
    sub_shape_size: int
    density: Fraction | None
    guarantee: int
    m: int
    params: dict
    configuration: Configuration
    shift: tuple = (0, 0)
    extra: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        return self.m / self.r

    def check(self) -> bool:
        return self.m >= self.guarantee and self.m == self.configuration.m and \
            is_ddc_class(self.configuration, self.cls, self.r)

    def to_json(self) -> dict:
        return {
            "pipeline": self.pipeline,
            "class": self.cls.value,
            "r": self.r,
            "S": self.shape_size,
            "S_prime": self.sub_shape_size,
            "density": None if self.density is None else str(self.density),
            "guarantee": self.guarantee,
            "m": self.m,
            "ratio": self.ratio,
            "params": self.params,
            "shift": list(self.shift),
            "configuration": to_record(self.configuration, self.cls.metric, self.r),
            **self.extra,
        }


def _report(name, cls, r, S, Sp, arr, params):
    v, m, c = best_shift(arr, Sp)
    delta = density(arr)
    rep = PipelineReport(name, cls, r, len(S), len(Sp), delta, guarantee(delta, len(Sp)),
                         m, params, c, v)
    return rep


def build_dd_euclid_square(r: int, theta: float | None = None) -> PipelineReport:
    """Golomb array inside the circle of radius ``floor(r/2)`` cut by a square."""
    if r < 2:
        raise ValueError("r must be at least 2")
    k = optimal_constants()
    theta = k.theta if theta is None else theta
    c = math.cos(theta)
    q = next_prime_power(c * r)
    R = r // 2
    arr = periodic_golomb(q)
    Sp = square_circle_intersection(R, theta)
    n = math.floor(2 * R * c + 1e-9)
    if n > q - 1:
        raise AssertionError("square does not fit the Costas window")
    S = Shape(GridKind.SQUARE, [(i, j) for i in range(-R, R + 1) for j in range(-R, R + 1)
                                if i * i + j * j <= R * R])
    return _report("dd_euclid_square", DDCClass.DD, r, S, Sp, arr,
                   {"theta": theta, "c": c, "q": q, "R": R, "square_side": n,
                    "alpha": arr.meta["alpha"], "beta": arr.meta["beta"]})


def build_ddbar_lee(r: int, ruler=None) -> PipelineReport:
    """Best of a folded optimal ruler and a Bose doubly periodic LeeDD array."""
    if r < 2:
        raise ValueError("r must be at least 2")
    R = r // 2
    span = 2 * R * R + 2 * R
    S = Shape(GridKind.SQUARE, lee_sphere_cells(R))
    if ruler is not None:
        c = leedd(r, ruler)
        return PipelineReport("ddbar_lee", DDCClass.DDBAR, r, len(S), len(S), None, c.m, c.m,
                              {"R": R, "method": "ruler", "ruler": list(ruler)}, c)
    best = None
    fitting = [o for o in ruler_table_orders() if optimal_ruler(o).length <= span]
    if fitting:
        D = optimal_ruler(max(fitting))
        c = leedd(r, D)
        best = PipelineReport("ddbar_lee", DDCClass.DDBAR, r, len(S), len(S), None, c.m, c.m,
                              {"R": R, "method": "optimal_ruler", "order": len(D),
                               "ruler": list(D.elements)}, c)
    q = 2
    while q * q - 1 < span + 1:
        q = next_prime_power(q)
    D = bose_b2(q)
    arr = doubly_periodic_leedd(R, D)
    rep = _report("ddbar_lee", DDCClass.DDBAR, r, S, S, arr,
                  {"R": R, "method": "bose", "q": q, "n": D.modulus})
    if best is None or rep.m > best.m:
        best = rep
    return best


def _hex_sphere_cells(r: int):
    """Hexagonal sphere of diameter ``r`` centred (as nearly as possible) at the origin."""
    R = r // 2
    shape = build_anticode(AnticodeSpec(Family.HEX_SPHERE, r, anchor=(-R, -R)))
    return shape


def build_ddbarstar_hex(r: int, a=None) -> PipelineReport:
    """Extended LeeDD array inside the hexagonal sphere of diameter ``r``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    k = optimal_constants()
    a = (math.sqrt(7) - 1) / 3 if a is None else a
    R = r // 2
    t = max(1, math.floor(a * R))
    need = 2 * R * R + t * (2 * R + 1)
    q = 2
    while q * q - 1 < need:
        q = next_prime_power(q)
    D = bose_b2(q)
    arr = extended_leedd_array(R, Fraction(t, R), D)
    H = _hex_sphere_cells(r)
    best = None
    # slide the extended sphere along the diagonal to centre it in H
    mid = -((t - 1) // 2)
    for s0 in range(mid - 2, mid + 3):
        S = extended_lee_shape(ExtendedLeeSphereSpec(R, t, (s0, s0)))
        Sp = [c for c in S.cells if c in H]
        if best is None or len(Sp) > len(best[1]):
            best = (S, Sp, s0)
    S, Sp, s0 = best
    Sp = Shape(GridKind.SQUARE, Sp)
    rep = _report("ddbarstar_hex", DDCClass.DDBARSTAR, r, S, Sp, arr,
                  {"R": R, "a": a, "t": t, "q": q, "n": D.modulus, "anchor": [s0, s0],
                   "mu_hex": k.mu_hex})
    rep.configuration = Configuration(GridKind.HEXAGONAL, rep.configuration.dots)
    return rep


def build_dd_euclid_hex(r: int, theta: float | None = None) -> PipelineReport:
    """Extended LeeDD array whose shape maps to a rotated square, cut by the
    Euclidean circle of radius ``floor(r/2)`` in the hexagonal model."""
    if r < 2:
        raise ValueError("r must be at least 2")
    k = optimal_constants()
    theta = k.theta if theta is None else theta
    R = r // 2
    t = max(1, math.floor(2 * R * math.cos(theta) / SQRT3))
    t2 = max(1, math.floor((SQRT3 - 1) * t + 1))
    need = 2 * t * t + t2 * (2 * t + 1)
    q = 2
    while q * q - 1 < need:
        q = next_prime_power(q)
    D = bose_b2(q)
    arr = doubly_periodic_leedd(t, D, min_n=need,
                                meta={"construction": "extended_leedd", "t": t2})
    circle = hex_circle(R)
    best = None
    mid = -((t2 - 1) // 2)
    for s0 in range(mid - 2, mid + 3):
        S = extended_lee_shape(ExtendedLeeSphereSpec(t, t2, (s0, s0)))
        Sp = [c for c in S.cells if c in circle]
        if best is None or len(Sp) > len(best[1]):
            best = (S, Sp, s0)
    S, Sp, s0 = best
    Sp = Shape(GridKind.SQUARE, Sp)
    rep = _report("dd_euclid_hex", DDCClass.DDSTAR, r, S, Sp, arr,
                  {"R": R, "theta": theta, "t": t, "t2": t2, "q": q, "n": D.modulus,
                   "anchor": [s0, s0]})
    rep.configuration = Configuration(GridKind.HEXAGONAL, rep.configuration.dots)
    return rep


PIPELINES = {
    "dd_euclid_square": build_dd_euclid_square,
    "ddbar_lee": build_ddbar_lee,
    "ddbarstar_hex": build_ddbarstar_hex,
    "dd_euclid_hex": build_dd_euclid_hex,
}
