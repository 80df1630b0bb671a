"""Maximal anticodes of both grids, their enumeration oracle and witness
configurations."""
from __future__ import annotations

import enum
import math
from itertools import combinations
from dataclasses import dataclass

from .configuration import Configuration, Shape, point_set_diameter, verify_ddc
from .grid import GridKind, Metric, apply, distance, symmetries


class Family(str, enum.Enum):
    LEE = "lee"
    BICENTRED = "bicentred"
    QUADRICENTRED = "quadricentred"
    HEX_ANTICODE = "hex_anticode"
    HEX_SPHERE = "hex_sphere"


@dataclass(frozen=True)
class AnticodeSpec:
    """``size`` is the radius ``R`` for the Lee families and the diameter for
    the hexagonal ones.  ``index`` is ``i`` of ``A_i``; ``orientation`` is
    ``"horizontal"`` or ``"vertical"`` for bicentred spheres."""

    family: Family
    size: int
    anchor: tuple = (0, 0)
    index: int = 0
    orientation: str = "horizontal"

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "anchor", (int(self.anchor[0]), int(self.anchor[1])))

    @property
    def kind(self) -> GridKind:
        if self.family in (Family.HEX_ANTICODE, Family.HEX_SPHERE):
            return GridKind.HEXAGONAL
        return GridKind.SQUARE

    @property
    def diameter(self) -> int:
        f = self.family
        if f is Family.LEE:
            return 2 * self.size
        if f is Family.BICENTRED:
            return 2 * self.size + 1
        if f is Family.QUADRICENTRED:
            return 2 * self.size
        return self.size

    @property
    def type_index(self) -> int:
        """Equivalence class of a hexagonal ``A_i`` (``A_i`` ~ ``A_{r-i}``)."""
        if self.family is Family.HEX_SPHERE:
            return (self.size + 1) // 2
        return min(self.index, self.size - self.index)

    def at(self, anchor) -> "AnticodeSpec":
        return AnticodeSpec(self.family, self.size, anchor, self.index, self.orientation)

    def label(self) -> str:
        f = self.family
        if f is Family.BICENTRED:
            return f"bicentred(R={self.size},{self.orientation})"
        if f in (Family.LEE, Family.QUADRICENTRED):
            return f"{f.value}(R={self.size})"
        if f is Family.HEX_SPHERE:
            return f"hex_sphere(d={self.size})"
        return f"A_{self.index}(r={self.size})"


def _lee_cells(R, centres):
    out = set()
    for ci, cj in centres:
        for di in range(-R, R + 1):
            rest = R - abs(di)
            for dj in range(-rest, rest + 1):
                out.add((ci + di, cj + dj))
    return out


def _hex_cells(r, i, anchor):
    ai, aj = anchor
    return {(ai + x, aj + y) for x in range(r + 1) for y in range(r + 1)
            if x - i <= y <= x - i + r}


def build_anticode(spec: AnticodeSpec) -> Shape:
    f, n, (ai, aj) = spec.family, spec.size, spec.anchor
    if n < 0:
        raise ValueError(f"negative size {n}")
    if f is Family.LEE:
        cells = _lee_cells(n, [(ai, aj)])
    elif f is Family.BICENTRED:
        if spec.orientation == "horizontal":
            other = (ai + 1, aj)
        elif spec.orientation == "vertical":
            other = (ai, aj + 1)
        else:
            raise ValueError(f"unknown orientation {spec.orientation!r}")
        cells = _lee_cells(n, [(ai, aj), other])
    elif f is Family.QUADRICENTRED:
        if n < 1:
            raise ValueError("quadricentred Lee sphere needs R >= 1")
        cells = _lee_cells(n - 1, [(ai, aj), (ai + 1, aj), (ai, aj + 1), (ai + 1, aj + 1)])
    elif f is Family.HEX_ANTICODE:
        if not 0 <= spec.index <= n:
            raise ValueError(f"A_i needs 0 <= i <= r, got i={spec.index}, r={n}")
        cells = _hex_cells(n, spec.index, (ai, aj))
    else:
        cells = _hex_cells(n, (n + 1) // 2, (ai, aj))
    return Shape(spec.kind, cells)


def anticode_size(spec: AnticodeSpec) -> int:
    """Closed-form cardinality."""
    n = spec.size
    f = spec.family
    if f is Family.LEE:
        return 2 * n * n + 2 * n + 1
    if f is Family.BICENTRED:
        return 2 * n * n + 4 * n + 2
    if f is Family.QUADRICENTRED:
        return 2 * n * n + 2 * n
    if f is Family.HEX_SPHERE:
        return hex_sphere_size(n)
    i = spec.index
    return (n + 1) * (n + 2) // 2 + i * (n - i)


def hex_sphere_size(d: int) -> int:
    if d % 2:
        return 3 * (d + 1) ** 2 // 4
    return (3 * d * d + 6 * d + 4) // 4


def default_metric(kind: GridKind) -> Metric:
    return Metric.MANHATTAN if GridKind(kind) is GridKind.SQUARE else Metric.HEX


def is_anticode(s, metric: Metric, r: int) -> bool:
    cells = s.cells if isinstance(s, Shape) else tuple(s)
    if not cells:
        return True
    kind = s.kind if isinstance(s, Shape) else GridKind.SQUARE
    limit = r * r if Metric(metric) is Metric.EUCLIDEAN else r
    if r < 0:
        return False
    return point_set_diameter(cells, metric, kind) <= limit


def maximal_anticode_types(r: int, kind: GridKind) -> list[AnticodeSpec]:
    if r < 1:
        raise ValueError("diameter must be at least 1")
    if GridKind(kind) is GridKind.SQUARE:
        if r % 2 == 0:
            return [AnticodeSpec(Family.LEE, r // 2), AnticodeSpec(Family.QUADRICENTRED, r // 2)]
        return [AnticodeSpec(Family.BICENTRED, (r - 1) // 2)]
    # A_0 .. A_{ceil((r-1)/2)}, and ceil((r-1)/2) == r // 2
    return [AnticodeSpec(Family.HEX_ANTICODE, r, index=i) for i in range(r // 2 + 1)]


def _placement_families(r: int, kind: GridKind) -> list[AnticodeSpec]:
    """Every maximal anticode of diameter ``r`` up to translation only."""
    if GridKind(kind) is GridKind.SQUARE:
        if r % 2 == 0:
            return [AnticodeSpec(Family.LEE, r // 2), AnticodeSpec(Family.QUADRICENTRED, r // 2)]
        R = (r - 1) // 2
        return [AnticodeSpec(Family.BICENTRED, R, orientation="horizontal"),
                AnticodeSpec(Family.BICENTRED, R, orientation="vertical")]
    return [AnticodeSpec(Family.HEX_ANTICODE, r, index=i) for i in range(r + 1)]


# ---------------------------------------------------------------------------
# exhaustive oracle

MAX_ENUM_R = 12


def ball(r: int, kind: GridKind, metric: Metric) -> list[tuple[int, int]]:
    kind, metric = GridKind(kind), Metric(metric)
    limit = r * r if metric is Metric.EUCLIDEAN else r
    return [(i, j) for i in range(-r, r + 1) for j in range(-r, r + 1)
            if distance((0, 0), (i, j), metric, kind) <= limit]


def _cliques_with_lexmin_origin(r, kind, metric):
    """Maximal anticodes (as point lists) whose lexicographically least point
    is the origin.  Bron-Kerbosch with pivoting over int bitsets; points
    lexicographically below the origin seed the exclusion set so that only
    globally maximal sets are reported."""
    kind, metric = GridKind(kind), Metric(metric)
    limit = r * r if metric is Metric.EUCLIDEAN else r
    pts = ball(r, kind, metric)
    pts.remove((0, 0))
    n = len(pts)
    adj = [0] * n
    for a in range(n):
        pa = pts[a]
        m = 0
        for b in range(n):
            if b != a and distance(pa, pts[b], metric, kind) <= limit:
                m |= 1 << b
        adj[a] = m
    P = X = 0
    for a, p in enumerate(pts):
        if p > (0, 0):
            P |= 1 << a
        else:
            X |= 1 << a
    found = []

    def bits(v):
        while v:
            low = v & -v
            yield low.bit_length() - 1
            v ^= low

    def expand(R, P, X):
        if not P and not X:
            found.append([(0, 0)] + [pts[b] for b in R])
            return
        if not P:
            return
        pivot = max(bits(P | X), key=lambda u: (adj[u] & P).bit_count())
        for v in list(bits(P & ~adj[pivot])):
            expand(R + [v], P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    expand([], P, X)
    return found


def canonical_form(cells, kind: GridKind) -> tuple:
    """Representative of a point set up to translation and lattice symmetry."""
    best = None
    for g in symmetries(kind):
        img = sorted(apply(g, p) for p in cells)
        oi, oj = img[0]
        key = tuple((i - oi, j - oj) for i, j in img)
        if best is None or key < best:
            best = key
    return best


def enumerate_maximal_anticodes(r: int, kind: GridKind, metric: Metric | None = None,
                                up_to_symmetry: bool = True) -> list[Shape]:
    """Brute-force list of maximal anticodes of diameter ``r``, one per class.

    Classes are taken up to translation and, by default, lattice symmetry;
    with ``up_to_symmetry=False`` only translation is factored out.
    """
    if r > MAX_ENUM_R:
        raise ValueError(f"enumeration limited to r <= {MAX_ENUM_R}")
    if r < 0:
        raise ValueError("diameter must be non-negative")
    kind = GridKind(kind)
    metric = default_metric(kind) if metric is None else Metric(metric)
    if not metric.valid_for(kind):
        raise ValueError(f"metric {metric.value!r} is not defined on the {kind.value} grid")
    raw = _cliques_with_lexmin_origin(r, kind, metric)
    seen = {}
    for cells in raw:
        key = canonical_form(cells, kind) if up_to_symmetry else tuple(sorted(cells))
        seen.setdefault(key, cells)
    return [Shape(kind, seen[k]) for k in sorted(seen, key=lambda k: (-len(k), k))]


# ---------------------------------------------------------------------------
# containment

def containing_maximal_anticodes(c: Configuration, r: int) -> list[AnticodeSpec]:
    """All placements of maximal anticodes of diameter ``r`` (Manhattan on the
    square grid, hexagonal distance on the hexagonal grid) containing ``c``."""
    if not c.dots:
        raise ValueError("configuration is empty")
    metric = default_metric(c.kind)
    if point_set_diameter(c.dots, metric, c.kind) > r:
        raise ValueError(f"configuration diameter exceeds {r}")
    out = []
    p0 = c.dots[0]
    for fam in _placement_families(r, c.kind):
        shape = build_anticode(fam)
        for cell in shape.cells:
            anchor = (p0[0] - cell[0], p0[1] - cell[1])
            if all((i - anchor[0], j - anchor[1]) in shape for i, j in c.dots):
                out.append(fam.at(anchor))
    out.sort(key=lambda s: (s.family.value, s.index, s.orientation, s.anchor))
    return out


def _family_key(spec: AnticodeSpec):
    if spec.kind is GridKind.HEXAGONAL:
        return ("hex", spec.type_index)
    return (spec.family.value,)


# ---------------------------------------------------------------------------
# witnesses

def _hex_corners(r, i):
    return [(0, 0), (i, 0), (r, r - i), (r, r), (i, r), (0, r - i)]


def _hex_boundary(r, i):
    """Boundary cells of ``A_i`` in cyclic order, starting at the origin."""
    cells = []
    corners = _hex_corners(r, i)
    for k in range(6):
        a, b = corners[k], corners[(k + 1) % 6]
        steps = max(abs(b[0] - a[0]), abs(b[1] - a[1]))
        for s in range(steps):
            cells.append((a[0] + (b[0] - a[0]) * s // steps, a[1] + (b[1] - a[1]) * s // steps))
    return cells


def _unique_type(c, r, key):
    return {_family_key(s) for s in containing_maximal_anticodes(c, r)} == {key}


def _seven_dot_sphere(R):
    r = 2 * R
    corners = _hex_corners(r, R)
    ring = _hex_boundary(r, R)
    where = {p: n for n, p in enumerate(ring)}
    L = len(ring)
    for start in range(6):
        for step in (1, -1):
            cs = [corners[(start + step * k) % 6] for k in range(6)]
            dots = set(cs[:4])
            fifth = where[cs[4]]
            dots.add(ring[(fifth - 1) % L])
            dots.add(ring[(fifth + 1) % L])
            dots.add(ring[(where[cs[5]] + step) % L])
            if len(dots) != 7:
                continue
            cand = Configuration(GridKind.HEXAGONAL, dots)
            if verify_ddc(cand) and _unique_type(cand, r, ("hex", R)):
                return cand
    # R = 1: the ring has only six cells and the recipe collapses; fall back
    # to the first boundary subset that works
    for k in (3, 4):
        for sub in combinations(ring, k):
            cand = Configuration(GridKind.HEXAGONAL, sub)
            if verify_ddc(cand) and _unique_type(cand, r, ("hex", R)):
                return cand
    return None


def witness_configuration(r: int, kind: GridKind, family) -> Configuration:
    """A DDC of diameter ``r`` whose only containing maximal anticodes belong
    to ``family``.

    ``family`` is a :class:`Family` (square grid) or the index ``i`` of
    ``A_i`` (hexagonal grid, ``0 <= i <= ceil((r-1)/2)``).
    """
    kind = GridKind(kind)
    if kind is GridKind.SQUARE:
        family = Family(family)
        if family is Family.BICENTRED and r % 2 == 1:
            return Configuration(kind, [(0, 0), (r, 0)])
        if family is Family.LEE and r % 2 == 0 and r >= 2:
            return Configuration(kind, [(0, 0), (r, 0)])
        if family is Family.QUADRICENTRED and r % 2 == 0 and r >= 4:
            R = r // 2
            # the x-coordinate of the middle pair is R; 2R - 2 only agrees at R = 2
            return Configuration(kind, [(0, R - 1), (0, R), (R, 0),
                                        (R, 2 * R - 1), (2 * R - 1, R)])
        raise ValueError(f"no witness for {family.value} at diameter {r}")
    if isinstance(family, AnticodeSpec):
        i = family.type_index
    elif isinstance(family, Family):
        if family is not Family.HEX_SPHERE:
            raise ValueError(f"{family.value} is not a hexagonal family")
        i = (r + 1) // 2
    else:
        i = int(family)
    if r < 1 or not 0 <= i <= r // 2:
        raise ValueError(f"A_{i} is not a type of diameter {r}")
    if r % 2 == 0 and i == r // 2:
        c = _seven_dot_sphere(i)
        if c is None:
            raise ValueError(f"no seven-dot witness for the hexagonal sphere of diameter {r}")
        return c
    return Configuration(kind, _hex_corners(r, i))


# ---------------------------------------------------------------------------
# Euclidean helpers

def lattice_points_in_circle(ell: int, kind: GridKind = GridKind.SQUARE) -> int:
    """Grid points within Euclidean distance ``ell`` of a grid point, exactly."""
    ell = int(ell)
    if ell < 0:
        return 0
    r2 = ell * ell
    if GridKind(kind) is GridKind.SQUARE:
        return sum(2 * math.isqrt(r2 - i * i) + 1 for i in range(-ell, ell + 1))
    total = 0
    # i^2 - i j + j^2 <= r2  <=>  (2i - j)^2 <= 4 r2 - 3 j^2
    jmax = math.isqrt(4 * r2 // 3)
    for j in range(-jmax, jmax + 1):
        disc = 4 * r2 - 3 * j * j
        if disc < 0:
            continue
        s = math.isqrt(disc)
        lo, hi = j - s, j + s
        lo += lo % 2
        hi -= hi % 2
        if hi >= lo:
            total += (hi - lo) // 2 + 1
    return total


def plane_anticode_area_bound(r: float) -> float:
    if r < 0:
        raise ValueError("r must be non-negative")
    return math.pi / 4 * r * r
