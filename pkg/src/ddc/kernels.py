"""Hot loops.

Every public kernel has a numba path and a pure numpy path; which one runs
is decided once at import from :mod:`ddc._accel`.  Both paths return
identical results (``tests/test_kernels.py`` checks them against each
other) so callers never need to know which is active.
"""
import numpy as np

from ._accel import USE_NUMBA, njit


# ---------------------------------------------------------------------------
# integer square root usable inside jitted code

@njit
def _isqrt(x):
    if x <= 0:
        return 0
    s = int(np.sqrt(float(x)))
    while s * s > x:
        s -= 1
    while (s + 1) * (s + 1) <= x:
        s += 1
    return s


# ---------------------------------------------------------------------------
# doubly periodic S-DDC scan

@njit
def _scan_shape_ddc_jit(mask, ci, cj, li, lj, span_i, span_j):
    eta, kappa = mask.shape
    n = ci.shape[0]
    width = 2 * span_j + 1
    stamp = np.zeros((2 * span_i + 1) * width, np.int64)
    bi = np.empty(n, np.int64)
    bj = np.empty(n, np.int64)
    cur = 0
    for si in range(eta):
        for sj in range(kappa):
            cur += 1
            m = 0
            for t in range(n):
                if mask[(si + li[t]) % eta, (sj + lj[t]) % kappa]:
                    bi[m] = ci[t]
                    bj[m] = cj[t]
                    m += 1
            for a in range(m):
                for b in range(a + 1, m):
                    di = bi[b] - bi[a]
                    dj = bj[b] - bj[a]
                    idx = (di + span_i) * width + (dj + span_j)
                    if stamp[idx] == cur:
                        return si, sj
                    stamp[idx] = cur
                    stamp[(span_i - di) * width + (span_j - dj)] = cur
    return -1, -1


def _scan_shape_ddc_np(mask, ci, cj, li, lj, span_i, span_j):
    eta, kappa = mask.shape
    width = 2 * span_j + 1
    for si in range(eta):
        rows = (si + li) % eta
        for sj in range(kappa):
            hit = mask[rows, (sj + lj) % kappa]
            m = int(hit.sum())
            if m < 3:
                continue
            pi, pj = ci[hit], cj[hit]
            di = pi[:, None] - pi[None, :]
            dj = pj[:, None] - pj[None, :]
            off = ~np.eye(m, dtype=bool)
            code = (di[off] + span_i) * width + (dj[off] + span_j)
            if np.unique(code).size != code.size:
                return si, sj
    return -1, -1


def scan_shape_ddc(mask, cells, lookup=None):
    """First shift ``t`` (in the fundamental domain) such that the dots of
    ``mask`` inside ``t + cells`` repeat a difference vector, else ``None``.

    ``cells`` must be non-negative (callers normalise the shape first).
    ``lookup`` gives the mask index of each cell when it differs from the
    cell itself (used for arrays described by a linear rule).
    """
    mask = np.ascontiguousarray(mask, dtype=np.bool_)
    cells = np.asarray(cells, dtype=np.int64)
    lookup = cells if lookup is None else np.asarray(lookup, dtype=np.int64)
    ci = np.ascontiguousarray(cells[:, 0])
    cj = np.ascontiguousarray(cells[:, 1])
    li = np.ascontiguousarray(lookup[:, 0])
    lj = np.ascontiguousarray(lookup[:, 1])
    span_i = int(ci.max()) if ci.size else 0
    span_j = int(cj.max()) if cj.size else 0
    fn = _scan_shape_ddc_jit if USE_NUMBA else _scan_shape_ddc_np
    si, sj = fn(mask, ci, cj, li, lj, span_i, span_j)
    if si < 0:
        return None
    return int(si), int(sj)


# ---------------------------------------------------------------------------
# number of dots in every shift of a shape

@njit
def _shift_counts_jit(dots_i, dots_j, ci, cj, eta, kappa):
    counts = np.zeros((eta, kappa), np.int64)
    for a in range(dots_i.shape[0]):
        x = dots_i[a]
        y = dots_j[a]
        for t in range(ci.shape[0]):
            counts[(x - ci[t]) % eta, (y - cj[t]) % kappa] += 1
    return counts


def _shift_counts_np(dots_i, dots_j, ci, cj, eta, kappa):
    total = np.zeros(eta * kappa, np.int64)
    ri = ci % eta
    rj = cj % kappa
    chunk = max(1, 4_000_000 // max(1, ci.size))
    for start in range(0, dots_i.size, chunk):
        xi = dots_i[start:start + chunk, None]
        yj = dots_j[start:start + chunk, None]
        flat = ((xi - ri) % eta) * kappa + (yj - rj) % kappa
        total += np.bincount(flat.ravel(), minlength=eta * kappa)
    return total.reshape(eta, kappa)


def shift_counts(fundamental, period, cells):
    """``counts[s] = |A ∩ (s + cells)|`` for every shift ``s`` of the
    fundamental domain of a doubly periodic array ``A``."""
    eta, kappa = period
    dots = np.asarray(fundamental, dtype=np.int64).reshape(-1, 2)
    cells = np.asarray(cells, dtype=np.int64).reshape(-1, 2)
    args = (np.ascontiguousarray(dots[:, 0]), np.ascontiguousarray(dots[:, 1]),
            np.ascontiguousarray(cells[:, 0]), np.ascontiguousarray(cells[:, 1]),
            int(eta), int(kappa))
    if USE_NUMBA:
        return _shift_counts_jit(*args)
    return _shift_counts_np(*args)


# ---------------------------------------------------------------------------
# lattice points in circles, for every radius 0..L at once

@njit
def _circle_counts_jit(L, hexagonal):
    out = np.zeros(L + 1, np.int64)
    for ell in range(L + 1):
        r2 = ell * ell
        total = 0
        if not hexagonal:
            for i in range(-ell, ell + 1):
                total += 2 * _isqrt(r2 - i * i) + 1
        else:
            # i^2 - i j + j^2 <= r2  <=>  (2i - j)^2 <= 4 r2 - 3 j^2
            jmax = _isqrt((4 * r2) // 3)
            for j in range(-jmax, jmax + 1):
                disc = 4 * r2 - 3 * j * j
                if disc < 0:
                    continue
                s = _isqrt(disc)
                # 2i - j in [-s, s]
                lo = -s + j
                hi = s + j
                # count even-offset integers u=2i in [lo, hi]
                if lo % 2 != 0:
                    lo += 1
                if hi % 2 != 0:
                    hi -= 1
                if hi >= lo:
                    total += (hi - lo) // 2 + 1
        out[ell] = total
    return out


def _circle_counts_np(L, hexagonal):
    out = np.zeros(L + 1, np.int64)
    for ell in range(L + 1):
        r2 = ell * ell
        if not hexagonal:
            i = np.arange(-ell, ell + 1, dtype=np.int64)
            s = np.floor(np.sqrt((r2 - i * i).astype(np.float64))).astype(np.int64)
            s -= (s * s > r2 - i * i)
            s += ((s + 1) * (s + 1) <= r2 - i * i)
            out[ell] = int((2 * s + 1).sum())
        else:
            jmax = int(np.floor(np.sqrt(4 * r2 / 3))) + 1
            j = np.arange(-jmax, jmax + 1, dtype=np.int64)
            disc = 4 * r2 - 3 * j * j
            j = j[disc >= 0]
            disc = disc[disc >= 0]
            s = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
            s -= (s * s > disc)
            s += ((s + 1) * (s + 1) <= disc)
            lo = j - s
            hi = j + s
            lo += lo % 2
            hi -= hi % 2
            cnt = np.where(hi >= lo, (hi - lo) // 2 + 1, 0)
            out[ell] = int(cnt.sum())
    return out


def circle_counts(L, hexagonal=False):
    """Exact number of lattice points within Euclidean distance ``ell`` of a
    lattice point, for ``ell = 0..L``."""
    L = int(L)
    if USE_NUMBA:
        return _circle_counts_jit(L, bool(hexagonal))
    return _circle_counts_np(L, bool(hexagonal))


# ---------------------------------------------------------------------------
# exhaustive branch and bound for the largest DDC inside a fixed cell set

@njit
def _max_ddc_dfs(D, ndiff, best, best_dots, first_lo, first_hi, budget):
    n = D.shape[0]
    used = np.zeros(ndiff, np.bool_)
    cand = np.empty((n + 1, n), np.int64)
    ncand = np.zeros(n + 1, np.int64)
    pos = np.zeros(n + 1, np.int64)
    dots = np.empty(n + 1, np.int64)
    for i in range(n):
        cand[0, i] = i
    ncand[0] = n
    pos[0] = first_lo
    nodes = 0
    exhausted = False
    depth = 0
    while True:
        stop = first_hi if depth == 0 else ncand[depth]
        if pos[depth] >= stop or depth + ncand[depth] - pos[depth] <= best:
            if depth == 0:
                break
            depth -= 1
            p = dots[depth]
            for x in range(depth):
                used[D[dots[x], p]] = False
                used[D[p, dots[x]]] = False
            continue
        if nodes >= budget:
            exhausted = True
            break
        nodes += 1
        c = cand[depth, pos[depth]]
        pos[depth] += 1
        for x in range(depth):
            used[D[dots[x], c]] = True
            used[D[c, dots[x]]] = True
        dots[depth] = c
        k = depth + 1
        if k > best:
            best = k
            for x in range(k):
                best_dots[x] = dots[x]
        # candidates for the next dot: later cells still compatible
        nn = 0
        for t in range(pos[depth], ncand[depth]):
            e = cand[depth, t]
            ok = True
            for x in range(k):
                if used[D[dots[x], e]]:
                    ok = False
                    break
            if ok:
                dce = D[e, c]
                for x in range(k - 1):
                    if D[dots[x], e] == dce:
                        ok = False
                        break
            if ok:
                cand[k, nn] = e
                nn += 1
        ncand[k] = nn
        pos[k] = 0
        depth = k
    # unwind is implicit: ``used`` is local
    return best, nodes, exhausted


def max_ddc_dfs(cells, best=0, first=None, budget=10**9):
    """Largest subset of ``cells`` whose difference vectors are distinct.

    Dots are added in the order of ``cells``; only subsets beating ``best``
    are reported.  ``first=(lo, hi)`` restricts the index of the first dot,
    which is how callers split and checkpoint the tree.

    Returns ``(best, dots_or_None, nodes, exhausted)`` where ``dots`` is an
    index array of a configuration of size ``best`` when one was found in
    this call.
    """
    cells = np.asarray(cells, dtype=np.int64).reshape(-1, 2)
    n = cells.shape[0]
    if first is None:
        first = (0, n)
    lo, hi = int(first[0]), int(first[1])
    span_i = int(cells[:, 0].max() - cells[:, 0].min()) if n else 0
    span_j = int(cells[:, 1].max() - cells[:, 1].min()) if n else 0
    width = 2 * span_j + 1
    di = cells[None, :, 0] - cells[:, None, 0]
    dj = cells[None, :, 1] - cells[:, None, 1]
    D = np.ascontiguousarray((di + span_i) * width + (dj + span_j), dtype=np.int64)
    ndiff = (2 * span_i + 1) * width
    out = np.full(n + 1, -1, np.int64)
    b, nodes, exhausted = _max_ddc_dfs(D, ndiff, int(best), out, lo, hi, int(budget))
    found = None
    if b > best:
        found = out[:b].copy()
    return int(b), found, int(nodes), bool(exhausted)
