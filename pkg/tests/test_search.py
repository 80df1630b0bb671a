import json
import random

import pytest

from ddc import kernels
from ddc.bounds import erdos_turan_upper, trivial_upper
from ddc.configuration import DDCClass, is_ddc_class
from ddc.search import SQUARE_TABLE, max_ddc, search_shapes, verify_optimal_table
from oracles import brute_max_ddc

HEX_TABLE = {1: 3, 2: 4, 3: 6, 4: 7, 5: 9, 6: 9, 7: 11}


def test_square_table_small():
    for r in range(2, 9):
        res = max_ddc(DDCClass.DDBAR, r)
        assert res.exact and res.m_opt == SQUARE_TABLE[r]
        assert is_ddc_class(res.configuration, DDCClass.DDBAR, r)


def test_verify_optimal_table():
    out = verify_optimal_table(range(2, 7))
    assert all(m == want and exact for m, want, exact in out.values())
    assert verify_optimal_table([3], DDCClass.DDBARSTAR)[3] == (6, None, True)


@pytest.mark.slow
@pytest.mark.parametrize("r", [9, 10, 11])
def test_square_table_long(r):
    res = max_ddc(DDCClass.DDBAR, r)
    assert res.exact and res.m_opt == r + 2


def test_hex_search():
    for r, want in HEX_TABLE.items():
        res = max_ddc(DDCClass.DDBARSTAR, r)
        assert res.exact and res.m_opt == want
        assert is_ddc_class(res.configuration, DDCClass.DDBARSTAR, r)


def test_euclidean_search_small():
    for cls, want in ((DDCClass.DD, [2, 3, 5, 6, 8]), (DDCClass.DDSTAR, [3, 4, 6, 7, 9])):
        got = [max_ddc(cls, r).m_opt for r in range(1, 6)]
        assert got == want


@pytest.mark.parametrize("cls", [DDCClass.DDBAR, DDCClass.DDBARSTAR])
def test_symmetry_reduction_does_not_change_optimum(cls):
    for r in range(1, 6):
        a = max_ddc(cls, r)
        b = max_ddc(cls, r, symmetry=False)
        assert a.m_opt == b.m_opt and b.exact


def test_deterministic():
    a = max_ddc(DDCClass.DDBAR, 6)
    b = max_ddc(DDCClass.DDBAR, 6)
    assert a.configuration == b.configuration and a.nodes == b.nodes


@pytest.mark.parametrize("cls", list(DDCClass))
def test_soundness_against_bounds(cls):
    for r in range(2, 6):
        res = max_ddc(cls, r)
        assert res.m_opt <= min(trivial_upper(r, cls), erdos_turan_upper(r, cls).m_max)


def test_threads_agree_with_sequential():
    for cls, r in ((DDCClass.DDBAR, 7), (DDCClass.DDBARSTAR, 5)):
        a = max_ddc(cls, r)
        b = max_ddc(cls, r, threads=4)
        assert a.m_opt == b.m_opt and b.exact
        assert a.configuration == b.configuration


def test_budget_exhaustion_is_reported():
    res = max_ddc(DDCClass.DDBAR, 8, budget=50)
    assert not res.exact and res.m_opt <= SQUARE_TABLE[8]
    assert is_ddc_class(res.configuration, DDCClass.DDBAR, 8)


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "ck.json")
    # progress is saved per first-dot split, so the budget must cover the
    # largest split (about 29k nodes at r=7) for resumes to advance
    part = max_ddc(DDCClass.DDBAR, 7, budget=40000, checkpoint=path)
    assert not part.exact
    state = json.load(open(path))
    assert state["format"] == "ddc-search-checkpoint" and state["r"] == 7
    done = sum(state["next"].values())
    assert done > 0
    for _ in range(20):
        res = max_ddc(DDCClass.DDBAR, 7, budget=40000, checkpoint=path)
        if res.exact:
            break
    assert res.exact and res.m_opt == SQUARE_TABLE[7]
    assert res.configuration == max_ddc(DDCClass.DDBAR, 7).configuration
    with pytest.raises(ValueError):
        max_ddc(DDCClass.DDBAR, 6, checkpoint=path)


def test_rejects_bad_radius():
    with pytest.raises(ValueError):
        max_ddc(DDCClass.DDBAR, 0)


def test_dfs_matches_brute_force():
    rng = random.Random(7)
    for _ in range(25):
        cells = rng.sample([(i, j) for i in range(5) for j in range(5)], rng.randint(1, 11))
        b, found, _, ex = kernels.max_ddc_dfs(cells)
        assert not ex and b == brute_max_ddc(cells)
        dots = [cells[k] for k in found]
        diffs = [(p[0] - q[0], p[1] - q[1]) for p in dots for q in dots if p != q]
        assert len(diffs) == len(set(diffs))


def test_search_shapes_labels():
    assert len(search_shapes(DDCClass.DDBAR, 4)) == 2
    assert len(search_shapes(DDCClass.DDBAR, 5, symmetry=False)) == 2
    assert len(search_shapes(DDCClass.DDBARSTAR, 5)) == 3
