"""Square and hexagonal grid models and their distance functions.

Points are integer pairs ``(i, j)``: column ``i`` grows to the right, row
``j`` grows upward.  Hexagonal points use the sheared Z^2 representation in
which the six neighbours of ``(i, j)`` are the offsets ``(±1, 0)``,
``(0, ±1)``, ``(1, 1)`` and ``(-1, -1)``.
"""
from __future__ import annotations

import enum
import math
from typing import NamedTuple

SQRT3 = math.sqrt(3.0)


class GridPoint(NamedTuple):
    i: int
    j: int


class GridKind(str, enum.Enum):
    SQUARE = "square"
    HEXAGONAL = "hexagonal"


class Metric(str, enum.Enum):
    MANHATTAN = "manhattan"
    HEX = "hex"
    EUCLIDEAN = "euclidean"   # compared as exact integer squares

    def valid_for(self, kind: GridKind) -> bool:
        if self is Metric.MANHATTAN:
            return kind is GridKind.SQUARE
        if self is Metric.HEX:
            return kind is GridKind.HEXAGONAL
        return True


SQUARE_OFFSETS = ((-1, 0), (0, -1), (0, 1), (1, 0))
HEX_OFFSETS = ((-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1))


def manhattan(p, q) -> int:
    return abs(q[0] - p[0]) + abs(q[1] - p[1])


def hex_distance(p, q) -> int:
    """Graph distance in the hexagonal model (closed form; BFS is the test oracle)."""
    di = q[0] - p[0]
    dj = q[1] - p[1]
    if di * dj >= 0:
        return max(abs(di), abs(dj))
    return abs(di) + abs(dj)


def euclid_sq(p, q, kind: GridKind = GridKind.SQUARE) -> int:
    """Squared Euclidean distance between cell centres, exact.

    Hexagonal centres sit at unit spacing, which turns the squared distance
    into the quadratic form ``di^2 - di*dj + dj^2``.
    """
    di = q[0] - p[0]
    dj = q[1] - p[1]
    if GridKind(kind) is GridKind.HEXAGONAL:
        return di * di - di * dj + dj * dj
    return di * di + dj * dj


def distance(p, q, metric: Metric, kind: GridKind = GridKind.SQUARE) -> int:
    metric = Metric(metric)
    kind = GridKind(kind)
    if not metric.valid_for(kind):
        raise ValueError(f"metric {metric.value!r} is not defined on the {kind.value} grid")
    if metric is Metric.MANHATTAN:
        return manhattan(p, q)
    if metric is Metric.HEX:
        return hex_distance(p, q)
    return euclid_sq(p, q, kind)


def xi(x: float, y: float) -> tuple[float, float]:
    """Map a real hexagon centre to its Z^2 representation."""
    return x + y / SQRT3, 2.0 * y / SQRT3


def xi_inverse(i, j) -> tuple[float, float]:
    """Real centre of the hexagon represented by ``(i, j)``."""
    return i - j / 2.0, j * SQRT3 / 2.0


def neighbors(p, kind: GridKind = GridKind.SQUARE) -> set[GridPoint]:
    offsets = HEX_OFFSETS if GridKind(kind) is GridKind.HEXAGONAL else SQUARE_OFFSETS
    return {GridPoint(p[0] + a, p[1] + b) for a, b in offsets}


def symmetries(kind: GridKind):
    """Linear lattice automorphisms fixing the origin: 8 for the square grid,
    12 for the hexagonal one.  Each is returned as a 2x2 integer tuple
    ``((a, b), (c, d))`` acting by ``(i, j) -> (a i + b j, c i + d j)``."""
    if GridKind(kind) is GridKind.SQUARE:
        rot = ((0, -1), (1, 0))
    else:
        rot = ((1, -1), (1, 0))      # 60 degrees in the sheared basis
    swap = ((0, 1), (1, 0))
    order = 4 if GridKind(kind) is GridKind.SQUARE else 6
    out = []
    g = ((1, 0), (0, 1))
    for _ in range(order):
        out.append(g)
        out.append(_matmul(swap, g))
        g = _matmul(rot, g)
    return out


def _matmul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def apply(g, p) -> tuple[int, int]:
    return g[0][0] * p[0] + g[0][1] * p[1], g[1][0] * p[0] + g[1][1] * p[1]
