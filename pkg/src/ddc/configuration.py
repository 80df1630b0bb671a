"""Dot configurations, doubly periodic arrays and finite shapes."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

import numpy as np

from . import kernels
from .grid import GridKind, Metric, euclid_sq


class DDCClass(str, enum.Enum):
    """The four configuration classes: grid plus the metric bounding the spread."""

    DD = "dd"                   # square grid, Euclidean
    DDBAR = "ddbar"             # square grid, Manhattan
    DDSTAR = "ddstar"           # hexagonal grid, Euclidean
    DDBARSTAR = "ddbarstar"     # hexagonal grid, hexagonal distance

    @property
    def kind(self) -> GridKind:
        if self in (DDCClass.DD, DDCClass.DDBAR):
            return GridKind.SQUARE
        return GridKind.HEXAGONAL

    @property
    def metric(self) -> Metric:
        return {
            DDCClass.DD: Metric.EUCLIDEAN,
            DDCClass.DDBAR: Metric.MANHATTAN,
            DDCClass.DDSTAR: Metric.EUCLIDEAN,
            DDCClass.DDBARSTAR: Metric.HEX,
        }[self]

    def limit(self, r: int) -> int:
        """Largest admissible diameter value (squared for Euclidean classes)."""
        return r * r if self.metric is Metric.EUCLIDEAN else r

    @classmethod
    def for_grid(cls, kind: GridKind, metric: Metric) -> "DDCClass":
        for c in cls:
            if c.kind is GridKind(kind) and c.metric is Metric(metric):
                return c
        raise ValueError(f"metric {Metric(metric).value!r} is not defined on the "
                         f"{GridKind(kind).value} grid")


def _normalise(points):
    return tuple(sorted({(int(p[0]), int(p[1])) for p in points}))


@dataclass(frozen=True)
class Configuration:
    kind: GridKind
    dots: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", GridKind(self.kind))
        object.__setattr__(self, "dots", _normalise(self.dots))

    def __len__(self):
        return len(self.dots)

    def __iter__(self):
        return iter(self.dots)

    @property
    def m(self) -> int:
        return len(self.dots)

    def translate(self, di: int, dj: int) -> "Configuration":
        return Configuration(self.kind, [(i + di, j + dj) for i, j in self.dots])

    def as_array(self) -> np.ndarray:
        return np.array(self.dots, dtype=np.int64).reshape(-1, 2)


@dataclass(frozen=True)
class Shape:
    kind: GridKind
    cells: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", GridKind(self.kind))
        cells = _normalise(self.cells)
        if not cells:
            raise ValueError("a shape needs at least one cell")
        object.__setattr__(self, "cells", cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, p):
        return (p[0], p[1]) in self._set

    @cached_property
    def _set(self):
        return frozenset(self.cells)

    @property
    def size(self) -> int:
        return len(self.cells)

    def translate(self, di: int, dj: int) -> "Shape":
        return Shape(self.kind, [(i + di, j + dj) for i, j in self.cells])

    def as_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.int64).reshape(-1, 2)

    def bbox(self):
        a = self.as_array()
        return (int(a[:, 0].min()), int(a[:, 1].min()),
                int(a[:, 0].max()), int(a[:, 1].max()))

    def intersect(self, other: "Shape") -> "Shape":
        return Shape(self.kind, [c for c in self.cells if c in other])


class LinearRule(NamedTuple):
    """Dot at ``(i, j)`` iff ``(a*i + b*j) mod n`` lies in ``residues``."""

    a: int
    b: int
    n: int
    residues: frozenset

    def value(self, i, j):
        return (self.a * i + self.b * j) % self.n


class PeriodicArray:
    """Doubly periodic dot pattern given by its fundamental domain
    ``[0, eta) x [0, kappa)`` (``eta`` columns, ``kappa`` rows).

    Arrays built from a :class:`LinearRule` may omit the fundamental domain;
    it is then derived on first use, and shift scans work on the ``n``
    residues of the rule instead of the ``eta * kappa`` shifts.
    """

    def __init__(self, kind, period, fundamental=None, meta=None, rule=None):
        self.kind = GridKind(kind)
        eta, kappa = (int(v) for v in period)
        if eta < 1 or kappa < 1:
            raise ValueError(f"period must be positive, got {period}")
        self.period = (eta, kappa)
        self.meta = dict(meta or {})
        self.rule = rule
        if fundamental is None and rule is None:
            fundamental = ()
        if fundamental is not None:
            fund = _normalise(fundamental)
            for i, j in fund:
                if not (0 <= i < eta and 0 <= j < kappa):
                    raise ValueError(f"dot {(i, j)} outside the fundamental domain {eta}x{kappa}")
            self.__dict__["fundamental"] = fund

    @cached_property
    def fundamental(self) -> tuple:
        eta, kappa = self.period
        a, b, n, res = self.rule
        ii, jj = np.meshgrid(np.arange(eta, dtype=np.int64), np.arange(kappa, dtype=np.int64),
                             indexing="ij")
        keep = np.isin((a * ii + b * jj) % n, np.fromiter(res, np.int64, len(res)))
        return tuple(zip(ii[keep].tolist(), jj[keep].tolist()))

    @cached_property
    def mask(self) -> np.ndarray:
        eta, kappa = self.period
        out = np.zeros((eta, kappa), dtype=np.bool_)
        if self.fundamental:
            a = np.array(self.fundamental, dtype=np.int64)
            out[a[:, 0], a[:, 1]] = True
        return out

    @property
    def count(self) -> int:
        """Dots per fundamental domain."""
        if "fundamental" not in self.__dict__ and self.rule is not None:
            eta, kappa = self.period
            return len(self.rule.residues) * eta * kappa // self.rule.n
        return len(self.fundamental)

    def __contains__(self, p):
        if self.rule is not None:
            return self.rule.value(p[0], p[1]) in self.rule.residues
        eta, kappa = self.period
        return bool(self.mask[p[0] % eta, p[1] % kappa])

    def _key(self):
        return (self.kind, self.period, self.fundamental)

    def __eq__(self, other):
        return isinstance(other, PeriodicArray) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PeriodicArray(kind={self.kind.value}, period={self.period}, dots={self.count})"

    def tiled(self, fi: int, fj: int) -> "PeriodicArray":
        """Same array described with period ``(fi*eta, fj*kappa)``."""
        eta, kappa = self.period
        dots = [(i + a * eta, j + b * kappa)
                for i, j in self.fundamental for a in range(fi) for b in range(fj)]
        return PeriodicArray(self.kind, (fi * eta, fj * kappa), dots, dict(self.meta))


# ---------------------------------------------------------------------------
# verification

def difference_collision(c):
    """Two distinct ordered pairs of dots sharing a difference vector, or
    ``None`` when every difference is distinct."""
    seen = {}
    for a, b in combinations(c.dots if isinstance(c, Configuration) else c, 2):
        for p, q in ((a, b), (b, a)):
            d = (q[0] - p[0], q[1] - p[1])
            if d in seen:
                return seen[d], (p, q)
            seen[d] = (p, q)
    return None


def verify_ddc(c) -> bool:
    return difference_collision(c) is None


def _hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def point_set_diameter(points, metric: Metric, kind: GridKind = GridKind.SQUARE) -> int:
    """Largest pairwise distance (squared for Euclidean) of a finite point set."""
    metric = Metric(metric)
    kind = GridKind(kind)
    if not metric.valid_for(kind):
        raise ValueError(f"metric {metric.value!r} is not defined on the {kind.value} grid")
    pts = np.asarray(list(points), dtype=np.int64).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError("diameter of an empty configuration is undefined")
    i, j = pts[:, 0], pts[:, 1]

    def spread(v):
        return int(v.max() - v.min())

    if metric is Metric.MANHATTAN:
        return max(spread(i + j), spread(i - j))
    if metric is Metric.HEX:
        return max(spread(i), spread(j), spread(i - j))
    # the extreme pair of a lattice set lies on its convex hull; the hull is
    # affine-invariant, so the sheared representation works for both grids
    hull = _hull(map(tuple, pts.tolist()))
    return max((euclid_sq(p, q, kind) for p, q in combinations(hull, 2)), default=0)


def diameter(c: Configuration, metric: Metric) -> int:
    return point_set_diameter(c.dots, metric, c.kind)


def is_ddc_class(c: Configuration, cls: DDCClass, r: int) -> bool:
    cls = DDCClass(cls)
    if cls.kind is not c.kind:
        raise ValueError(f"class {cls.value} lives on the {cls.kind.value} grid, "
                         f"configuration is {c.kind.value}")
    if not verify_ddc(c):
        return False
    if c.m == 0:
        return True
    return diameter(c, cls.metric) <= cls.limit(r)


# ---------------------------------------------------------------------------
# periodic arrays

def window(a: PeriodicArray, origin, width: int, height: int) -> Configuration:
    """Dots of ``a`` in columns ``[oi, oi+width)`` and rows ``[oj, oj+height)``."""
    oi, oj = origin
    dots = [(i, j) for i in range(oi, oi + width) for j in range(oj, oj + height)
            if (i, j) in a]
    return Configuration(a.kind, dots)


def restrict(a: PeriodicArray, s: Shape, shift=(0, 0)) -> Configuration:
    if a.kind is not s.kind:
        raise ValueError("array and shape live on different grids")
    ti, tj = shift
    dots = [(ti + i, tj + j) for i, j in s.cells if (ti + i, tj + j) in a]
    return Configuration(a.kind, dots)


def periodic_shape_violation(a: PeriodicArray, s: Shape):
    """A shift whose restriction is not a DDC, or ``None``."""
    if a.kind is not s.kind:
        raise ValueError("array and shape live on different grids")
    cells = s.as_array()
    lo = cells.min(axis=0)
    rel = cells - lo
    if a.rule is not None:
        # the restriction at shift v depends only on the residue of v
        ra, rb, n, res = a.rule
        table = np.zeros((n, 1), dtype=np.bool_)
        table[list(res), 0] = True
        idx = np.stack([(ra * cells[:, 0] + rb * cells[:, 1]) % n, np.zeros(len(cells), np.int64)], 1)
        hit = kernels.scan_shape_ddc(table, rel, idx)
        return None if hit is None else residue_shift(a, hit[0])
    hit = kernels.scan_shape_ddc(a.mask, rel)
    if hit is None:
        return None
    eta, kappa = a.period
    return (hit[0] - int(lo[0])) % eta, (hit[1] - int(lo[1])) % kappa


def residue_shift(a: PeriodicArray, c: int, among=None):
    """Lexicographically least shift ``v`` in the fundamental domain whose
    rule value is ``c`` (or any value in the set ``among``)."""
    ra, rb, n, _ = a.rule
    targets = np.array(sorted({c} if among is None else among), dtype=np.int64)
    eta, kappa = a.period
    jj = np.arange(kappa, dtype=np.int64)
    for i in range(eta):
        ok = np.isin((ra * i + rb * jj) % n, targets)
        if ok.any():
            return i, int(jj[ok.argmax()])
    raise ValueError(f"no shift realises residue {c}")


def is_periodic_shape_ddc(a: PeriodicArray, s: Shape) -> bool:
    return periodic_shape_violation(a, s) is None


def density(a: PeriodicArray) -> Fraction:
    eta, kappa = a.period
    return Fraction(a.count, eta * kappa)


# ---------------------------------------------------------------------------
# canonical JSON record

def to_record(c: Configuration, metric: Metric | None = None, r: int | None = None,
              **extra) -> dict:
    if metric is None:
        metric = Metric.MANHATTAN if c.kind is GridKind.SQUARE else Metric.HEX
    metric = Metric(metric)
    if r is None:
        r = diameter(c, metric) if c.m else 0
        if metric is Metric.EUCLIDEAN:
            # smallest integer radius covering the squared diameter
            from math import isqrt
            r = isqrt(r - 1) + 1 if r else 0
    rec = {"grid": c.kind.value, "metric": metric.value, "r": int(r),
           "dots": [[i, j] for i, j in c.dots]}
    rec.update(extra)
    return rec


def from_record(rec: dict) -> tuple[Configuration, Metric, int]:
    try:
        kind = GridKind(rec["grid"])
        metric = Metric(rec["metric"])
        r = int(rec["r"])
        dots = [(int(p[0]), int(p[1])) for p in rec["dots"]]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"malformed configuration record: {exc}") from exc
    if not metric.valid_for(kind):
        raise ValueError(f"metric {metric.value!r} is not defined on the {kind.value} grid")
    if len(set(dots)) != len(dots):
        raise ValueError("configuration record repeats a dot")
    return Configuration(kind, dots), metric, r


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))
