import random
from fractions import Fraction

import pytest

from cczfountain import greedy_pack, throughput_bound, verify_packing
from cczfountain.packing import PackingResult


def random_collection(rng, n, count, lo, hi):
    return [frozenset(rng.sample(range(1, n + 1), rng.randint(lo, hi))) for _ in range(count)]


def test_mutually_intersecting():
    sets = [set(range(1, 6)), set(range(3, 8)), set(range(2, 7)), set(range(4, 10))]
    res = greedy_pack(sets, 9)
    assert res.selected == [0]
    assert verify_packing(sets, res.selected, 9).ok


def test_disjoint_all_selected():
    sets = [{1, 2}, {3, 4}, {5}, {6, 7, 8}]
    res = greedy_pack(sets, 8)
    assert res.selected == [0, 1, 2, 3]


def test_bound_arithmetic():
    assert throughput_bound(8, 2, Fraction(1, 2), 8) == 1


def test_two_block_both_selected(two_block):
    _, triples = two_block
    res = greedy_pack(triples, 8)
    assert res.selected == [0, 1]
    assert res.guaranteed_lower_bound == Fraction(2, 4)


def test_trace_records_removals():
    sets = [{1, 2}, {2, 3}, {4}]
    res = greedy_pack(sets, 4)
    assert res.removal_trace == [(0, [0, 1]), (2, [2])]
    assert greedy_pack(sets, 4, keep_trace=False).removal_trace is None


def test_empty_collection_rejected():
    with pytest.raises(ValueError):
        greedy_pack([], 4)
    with pytest.raises(ValueError):
        greedy_pack([set()], 4)


def test_coordinate_out_of_range():
    with pytest.raises(ValueError):
        greedy_pack([{5}], 4)


def test_verify_detects_conflict():
    sets = [{1, 2}, {2, 3}]
    v = verify_packing(sets, [0, 1], 3)
    assert not v.ok
    assert not v.disjoint
    assert v.conflict == (0, 1, 2)


def test_verify_empty_selection_fails_bound():
    v = verify_packing([{1, 2}], [], 2)
    assert v.disjoint
    assert not v.meets_bound
    assert not v.ok


def test_verify_bad_index():
    with pytest.raises(IndexError):
        verify_packing([{1}], [3], 1)


def test_result_roundtrip():
    res = greedy_pack([{1, 2}, {2, 3}, {4}], 4)
    assert PackingResult.from_dict(res.to_dict()) == res


def test_random_collections_property():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(3, 30)
        sets = random_collection(rng, n, rng.randint(1, 40), 1, min(n, 6))
        res = greedy_pack(sets, n)
        assert verify_packing(sets, res.selected, n).ok
        s = res.stats_used
        mbn = s.M * s.b * n
        for _, removed in res.removal_trace:
            assert len(removed) <= mbn
        # maximality: every item meets some selected item
        chosen = set().union(*(sets[i] for i in res.selected))
        assert all(sets[i] & chosen for i in range(len(sets)))
