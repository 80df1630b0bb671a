"""Exhaustive search for the largest DDC of a class and diameter.

Every DDC of diameter at most ``r`` sits inside a maximal anticode of
diameter ``r``, so the search runs a branch and bound over the cells of
one representative of each maximal anticode class.  The tree is split by
the index of the first dot; each finished split can be written to a
checkpoint file and skipped on resume.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .anticodes import (_placement_families, build_anticode, enumerate_maximal_anticodes,
                        maximal_anticode_types)
from .bounds import erdos_turan_upper, trivial_upper
from .configuration import Configuration, DDCClass, is_ddc_class, to_record
from .grid import Metric

CHECKPOINT_FORMAT = "ddc-search-checkpoint"

# optimum table for the square grid under Manhattan distance
SQUARE_TABLE = {2: 3, 3: 4, **{r: r + 2 for r in range(4, 12)}}


@dataclass
class SearchResult:
    cls: DDCClass
    r: int
    m_opt: int
    configuration: Configuration
    nodes: int
    elapsed: float
    exact: bool
    shapes: list = field(default_factory=list)
    upper: int = 0

    def to_json(self) -> dict:
        return {"class": self.cls.value, "r": self.r, "m_opt": self.m_opt,
                "exact": self.exact, "nodes": self.nodes, "elapsed": round(self.elapsed, 3),
                "upper_bound": self.upper, "shapes": self.shapes,
                "configuration": to_record(self.configuration, self.cls.metric, self.r)}


def search_shapes(cls: DDCClass, r: int, symmetry: bool = True):
    """``(label, sorted cells)`` for every maximal anticode class searched."""
    cls = DDCClass(cls)
    if cls.metric is Metric.EUCLIDEAN:
        shapes = enumerate_maximal_anticodes(r, cls.kind, Metric.EUCLIDEAN,
                                             up_to_symmetry=symmetry)
        return [(f"euclidean-{k}", sorted(s.cells)) for k, s in enumerate(shapes)]
    specs = maximal_anticode_types(r, cls.kind) if symmetry else _placement_families(r, cls.kind)
    return [(s.label(), sorted(build_anticode(s).cells)) for s in specs]


def _load_checkpoint(path, cls, r, symmetry):
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        state = json.load(fh)
    key = (state.get("format"), state.get("class"), state.get("r"), state.get("symmetry"))
    if key != (CHECKPOINT_FORMAT, cls.value, r, symmetry):
        raise ValueError(f"checkpoint {path} belongs to a different search")
    return state


def _save_checkpoint(path, state):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh, sort_keys=True)
    os.replace(tmp, path)


def max_ddc(cls: DDCClass, r: int, budget: int = 10**9, symmetry: bool = True,
            threads: int = 1, checkpoint: str | None = None) -> SearchResult:
    """Largest DDC of class ``cls`` with all distances at most ``r``.

    ``exact`` is false when the node budget ran out before the tree was
    closed; the configuration is then the best one seen.  Ties are broken
    by taking the first optimum in the search order: anticode classes in
    their listed order, then the lexicographically least dot set inside it.
    """
    cls = DDCClass(cls)
    if r < 1:
        raise ValueError("r must be positive")
    t0 = time.perf_counter()
    cap = trivial_upper(r, cls)
    if r >= 2:
        cap = min(cap, erdos_turan_upper(r, cls).m_max)
    shapes = search_shapes(cls, r, symmetry)

    state = _load_checkpoint(checkpoint, cls, r, symmetry) or {
        "format": CHECKPOINT_FORMAT, "class": cls.value, "r": r, "symmetry": symmetry,
        "best": 0, "dots": [], "nodes": 0, "next": {}}
    best = state["best"]
    best_dots = [tuple(p) for p in state["dots"]]
    nodes = state["nodes"]
    remaining = budget
    exact = True

    def record(label, cells, found, b):
        nonlocal best, best_dots
        if found is not None and b > best:
            best = b
            best_dots = [tuple(int(v) for v in cells[k]) for k in found]

    for label, cells in shapes:
        arr = np.asarray(cells, dtype=np.int64)
        n = len(cells)
        start = state["next"].get(label, 0)
        if threads > 1 and start < n and best < cap:
            splits = list(range(start, n))
            with ThreadPoolExecutor(threads) as pool:
                futs = [pool.submit(kernels.max_ddc_dfs, arr, best, (k, k + 1),
                                    max(1, remaining // len(splits))) for k in splits]
                results = [f.result() for f in futs]
            for k, (b, found, nn, ex) in zip(splits, results):
                nodes += nn
                remaining -= nn
                exact &= not ex
            if exact:
                # the workers pruned against stale bounds, so recover the
                # first optimum in search order with a deterministic pass
                top = max([b for b, *_ in results] + [best])
                if top > best:
                    for k in splits:
                        b, found, nn, _ = kernels.max_ddc_dfs(arr, top - 1, (k, k + 1))
                        nodes += nn
                        if found is not None:
                            record(label, cells, found, b)
                            break
            else:
                for b, found, _, _ in results:
                    record(label, cells, found, b)
            state["next"][label] = n
        else:
            for k in range(start, n):
                if best >= cap:
                    break
                if remaining <= 0:
                    exact = False
                    break
                b, found, nn, ex = kernels.max_ddc_dfs(arr, best, (k, k + 1), remaining)
                nodes += nn
                remaining -= nn
                record(label, cells, found, b)
                if ex:
                    exact = False
                    break
                state["next"][label] = k + 1
                if checkpoint:
                    state.update(best=best, dots=[list(p) for p in best_dots], nodes=nodes)
                    _save_checkpoint(checkpoint, state)
        if not exact or best >= cap:
            break

    if checkpoint:
        state.update(best=best, dots=[list(p) for p in best_dots], nodes=nodes)
        _save_checkpoint(checkpoint, state)
    conf = Configuration(cls.kind, best_dots)
    if best_dots and not is_ddc_class(conf, cls, r):
        raise AssertionError("search produced an invalid configuration")
    return SearchResult(cls, r, best, conf, nodes, time.perf_counter() - t0, exact,
                        [label for label, _ in shapes], cap)


def verify_optimal_table(rs=range(2, 9), cls: DDCClass = DDCClass.DDBAR, **kw) -> dict:
    """``r -> (m_opt, expected, exact)``; ``expected`` is known for the
    square Manhattan table and ``None`` elsewhere."""
    cls = DDCClass(cls)
    out = {}
    for r in rs:
        res = max_ddc(cls, r, **kw)
        expected = SQUARE_TABLE.get(r) if cls is DDCClass.DDBAR else None
        out[r] = (res.m_opt, expected, res.exact)
    return out
