"""Upper bounds: the difference-vector count, the Erdős–Turán covering
inequality, honeycomb arrays and the table of asymptotic constants."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .anticodes import hex_sphere_size
from .configuration import Configuration, DDCClass, Shape, verify_ddc
from .extraction import optimal_constants
from .grid import GridKind, Metric


def _largest_m(V: int) -> int:
    """Largest ``m`` with ``m(m-1) <= V``."""
    m = (1 + math.isqrt(1 + 4 * V)) // 2
    while m * (m - 1) > V:
        m -= 1
    while (m + 1) * m <= V:
        m += 1
    return m


def vector_count(r: int, cls: DDCClass) -> int:
    """Non-zero grid vectors of length at most ``r`` under the class metric."""
    cls = DDCClass(cls)
    if cls.metric is Metric.MANHATTAN:
        return 2 * r * r + 2 * r
    if cls.metric is Metric.HEX:
        return 3 * r * r + 3 * r
    return int(kernels.circle_counts(r, cls.kind is GridKind.HEXAGONAL)[r]) - 1


def trivial_upper(r: int, cls: DDCClass) -> int:
    return _largest_m(vector_count(r, cls))


_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)


def max_anticode_size(d: int, cls: DDCClass) -> int:
    """Largest anticode of diameter ``d``; for the Euclidean classes an upper
    bound from the isodiametric inequality applied to the union of cells."""
    cls = DDCClass(cls)
    if d < 0:
        raise ValueError("diameter must be non-negative")
    if cls.metric is Metric.MANHATTAN:
        return ((d + 1) ** 2 + 1) // 2
    if cls.metric is Metric.HEX:
        return hex_sphere_size(d)
    if cls.kind is GridKind.SQUARE:
        # unit squares around the points fit in a set of diameter d + sqrt(2)
        return math.ceil(math.pi / 4 * (d + _SQRT2) ** 2)
    # hexagons of area sqrt(3)/2 and circumradius 1/sqrt(3)
    return math.ceil(math.pi / (2 * _SQRT3) * (d + 2 / _SQRT3) ** 2)


def covering_largest_m(w: int, a: int) -> int:
    """Largest integer ``m`` with ``m^2 <= w (1 + m/a)``, i.e.
    ``a m^2 - w m - w a <= 0``."""
    m = (w + math.isqrt(w * w + 4 * a * a * w)) // (2 * a)
    while a * m * m - w * m - w * a > 0:
        m -= 1
    while a * (m + 1) ** 2 - w * (m + 1) - w * a <= 0:
        m += 1
    return m


def sphere_size(ell: int, cls: DDCClass, _cache={}) -> int:
    cls = DDCClass(cls)
    if cls.metric is Metric.MANHATTAN:
        return 2 * ell * ell + 2 * ell + 1
    if cls.metric is Metric.HEX:
        return 3 * ell * ell + 3 * ell + 1
    hexagonal = cls.kind is GridKind.HEXAGONAL
    table = _cache.get(hexagonal)
    if table is None or len(table) <= ell:
        table = kernels.circle_counts(max(ell, 2 * (len(table) if table is not None else 0), 64),
                                      hexagonal)
        _cache[hexagonal] = table
    return int(table[ell])


@dataclass
class BoundReport:
    r: int
    cls: DDCClass
    ell: int
    a: int
    w: int
    m_max: int
    et_m_max: int
    trivial_m_max: int

    @property
    def ratio(self) -> float:
        return self.m_max / self.r

    def to_json(self) -> dict:
        return {"r": self.r, "class": self.cls.value, "ell": self.ell, "a": self.a,
                "w": self.w, "m_max": self.m_max, "erdos_turan_m_max": self.et_m_max,
                "trivial_m_max": self.trivial_m_max, "ratio": self.ratio}


def erdos_turan_upper(r: int, cls: DDCClass) -> BoundReport:
    """Sweep ``ell`` over ``[1, r]`` and keep the smallest covering bound."""
    cls = DDCClass(cls)
    if r < 1:
        raise ValueError("r must be positive")
    if cls.metric is Metric.EUCLIDEAN:
        sphere_size(r, cls)              # fill the lattice-count table once
    best = None
    for ell in range(1, r + 1):
        a = sphere_size(ell, cls)
        w = max_anticode_size(r + 2 * ell, cls)
        m = covering_largest_m(w, a)
        if best is None or m < best[0]:
            best = (m, ell, a, w)
    triv = trivial_upper(r, cls)
    m, ell, a, w = best
    return BoundReport(r, cls, ell, a, w, min(m, triv), m, triv)


def _ball_offsets(ell, kind, metric):
    kind, metric = GridKind(kind), Metric(metric)
    i, j = np.meshgrid(np.arange(-ell, ell + 1), np.arange(-ell, ell + 1), indexing="ij")
    if metric is Metric.MANHATTAN:
        keep = np.abs(i) + np.abs(j) <= ell
    elif metric is Metric.HEX:
        keep = np.maximum(np.maximum(np.abs(i), np.abs(j)), np.abs(i - j)) <= ell
    elif kind is GridKind.HEXAGONAL:
        keep = i * i - i * j + j * j <= ell * ell
    else:
        keep = i * i + j * j <= ell * ell
    return np.stack([i[keep], j[keep]], 1)


def dilation_size(s: Shape, ell: int, metric: Metric) -> int:
    """Cells within distance ``ell`` of the shape (its Minkowski dilation)."""
    cells = s.as_array()
    lo = cells.min(axis=0) - ell
    hi = cells.max(axis=0) + ell
    grid = np.zeros(tuple(hi - lo + 1), dtype=np.bool_)
    base = cells - lo
    for di, dj in _ball_offsets(ell, s.kind, metric):
        grid[base[:, 0] + di, base[:, 1] + dj] = True
    return int(grid.sum())


def difference_count(s: Shape) -> int:
    cells = s.as_array()
    d = cells[:, None, :] - cells[None, :, :]
    return len(np.unique(d.reshape(-1, 2), axis=0)) - 1


def generic_shape_upper(s: Shape, metric: Metric, max_ell: int | None = None) -> int:
    """Covering bound for DDCs inside an arbitrary finite shape, with the
    number of covering spheres counted exactly."""
    metric = Metric(metric)
    if not metric.valid_for(s.kind):
        raise ValueError(f"metric {metric.value!r} is not defined on the {s.kind.value} grid")
    cap = min(len(s), _largest_m(difference_count(s)))
    ci, cj = s.as_array().T
    span = int(max(ci.max() - ci.min(), cj.max() - cj.min()))
    top = max(1, span if max_ell is None else min(span, max_ell))
    best = cap
    for ell in range(1, top + 1):
        a = len(_ball_offsets(ell, s.kind, metric))
        w = dilation_size(s, ell, metric)
        best = min(best, covering_largest_m(w, a))
    return best


# ---------------------------------------------------------------------------
# honeycomb arrays

def is_honeycomb_array(c: Configuration) -> bool:
    """One dot on each of ``m`` consecutive lines in all three hexagonal
    directions, with distinct differences."""
    if c.kind is not GridKind.HEXAGONAL:
        return False
    m = c.m
    if m == 0 or not verify_ddc(c):
        return False
    for key in (lambda p: p[0], lambda p: p[1], lambda p: p[1] - p[0]):
        vals = sorted(key(p) for p in c.dots)
        if vals != list(range(vals[0], vals[0] + m)):
            return False
    return True


def honeycomb_ruled_out(m: int):
    """``(True, ell)`` when the covering inequality excludes a honeycomb array
    of order ``m`` (hexagonal diameter ``m - 1``), with the least witness ``ell``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    r = m - 1
    for ell in range(1, r + 1):
        a = 3 * ell * ell + 3 * ell + 1
        W = hex_sphere_size(r + 2 * ell)
        # m^2 > W (1 + m/a)  <=>  m^2 a > W (a + m)
        if m * m * a > W * (a + m):
            return True, ell
    return False, None


def honeycomb_witness(m: int, ell: int) -> dict:
    a = 3 * ell * ell + 3 * ell + 1
    d = m - 1 + 2 * ell
    W = hex_sphere_size(d)
    return {"m": m, "ell": ell, "a": a, "d": d, "W": W, "lhs_num": W * (a + m), "lhs_den": a,
            "bound": W * (a + m) / a, "m_squared": m * m, "ruled_out": m * m * a > W * (a + m)}


def honeycomb_threshold(hi: int = 20000, lo: int = 2):
    """Smallest ``m0`` such that every ``m`` in ``[m0, hi]`` is ruled out."""
    m0 = hi + 1
    for m in range(hi, lo - 1, -1):
        if not honeycomb_ruled_out(m)[0]:
            break
        m0 = m
    return m0


# ---------------------------------------------------------------------------
# asymptotic coefficients (lower, upper) per class

def table1_constants() -> dict:
    k = optimal_constants()
    root_pi = math.sqrt(math.pi)
    return {
        DDCClass.DDBAR: (1 / _SQRT2, 1 / _SQRT2),
        DDCClass.DD: (k.dd, root_pi / 2),
        DDCClass.DDBARSTAR: (k.ddbarstar, _SQRT3 / 2),
        DDCClass.DDSTAR: (k.ddstar, root_pi / (_SQRT2 * 3 ** 0.25)),
    }
