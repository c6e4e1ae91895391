import random
from fractions import Fraction

import pytest

from cczfountain import (
    BitMatrix,
    BitVector,
    MagicFriendlyTriple,
    SearchBudget,
    collection_stats,
    enumerate_triples,
    new_css,
    sample_triples,
    verify_magic_friendly,
)
from cczfountain.triples import CollectionStats, canonical_order
from tests.conftest import BASE_TRIPLE, random_css, trivial_code
from tests.oracles import naive_magic_friendly_set


def test_base_triple_verifies(trivial4):
    x, y, z = (BitVector(s) for s in BASE_TRIPLE)
    res = verify_magic_friendly(trivial4, x, y, z)
    assert res.overall
    assert res.inner_products == (0, 0, 0)
    assert res.overlap == 1
    assert res.first_failure is None


def test_dependent_triple_fails_independence(trivial4):
    x, y = BitVector("1100"), BitVector("0110")
    res = verify_magic_friendly(trivial4, x, y, x + y)
    assert not res.independent
    assert not res.overall


def test_orthogonality_failure(trivial4):
    res = verify_magic_friendly(trivial4, BitVector("1100"), BitVector("0011"), BitVector("1010"))
    assert not res.orthogonal
    assert res.inner_products[1] == 1  # <x,z>


def test_not_in_code_space(code422):
    res = verify_magic_friendly(code422, BitVector("1000"), BitVector("0110"), BitVector("0011"))
    assert not res.in_code_space
    assert res.first_failure == "in_code_space"


def test_verification_dict(trivial4, base_triple):
    d = verify_magic_friendly(trivial4, *base_triple).to_dict()
    assert d["overall"] is True
    assert d["triple_overlap"] == 1


def test_enumerate_contains_base_triple(trivial4, base_triple):
    res = enumerate_triples(trivial4)
    assert not res.truncated
    assert base_triple.key() in {t.key() for t in res}


def test_enumerate_k_below_three(steane, code422):
    assert list(enumerate_triples(steane)) == []
    assert list(enumerate_triples(code422)) == []


@pytest.mark.parametrize("n", [3, 4])
def test_enumerate_trivial_matches_oracle(n):
    res = enumerate_triples(trivial_code(n))
    assert {t.key() for t in res} == naive_magic_friendly_set(n)


def test_enumerate_output_canonical(trivial4):
    for t in enumerate_triples(trivial4):
        assert str(t.x) < str(t.y) < str(t.z)
        assert verify_magic_friendly(trivial4, *t).overall


def test_enumerate_budget_truncates(trivial4):
    res = enumerate_triples(trivial4, SearchBudget(max_checks=10))
    assert res.truncated
    assert res.checked <= 10
    full = {t.key() for t in enumerate_triples(trivial4)}
    assert {t.key() for t in res} <= full


def test_enumerate_random_codes_sound():
    rng = random.Random(3)
    for _ in range(10):
        code = random_css(rng, 6, 1, 1)
        if code.k < 3:
            continue
        res = enumerate_triples(code, SearchBudget(stabilizer_shift=1))
        for t in res:
            assert verify_magic_friendly(code, *t).overall


def test_sample_triples(trivial4):
    out = sample_triples(trivial4, seed=1, attempts=10_000)
    assert out
    assert all(verify_magic_friendly(trivial4, *t).overall for t in out)
    assert out == sample_triples(trivial4, seed=1, attempts=10_000)
    assert sample_triples(new_css(BitMatrix([], cols=3), BitMatrix(["111"])), 1, 100) == []


def test_sample_randomized_representatives():
    code = new_css(BitMatrix(["110000"]), BitMatrix(["110000"]))
    out = sample_triples(code, seed=5, attempts=3000, randomize_representatives=True)
    assert all(verify_magic_friendly(code, *t).overall for t in out)


def test_canonical_order():
    a, b, c = BitVector("100"), BitVector("010"), BitVector("001")
    assert canonical_order(a, b, c) == (c, b, a)


def test_triple_json_roundtrip(base_triple):
    assert MagicFriendlyTriple.from_strings(*base_triple.to_json()) == base_triple
    assert base_triple.support_union == frozenset({1, 2, 3, 4})


def test_stats_base_triple(base_triple):
    s = collection_stats([base_triple], 4)
    assert (s.a, s.b, s.M) == (1, 1, 1)


def test_stats_two_block(two_block):
    _, triples = two_block
    s = collection_stats(triples, 8)
    assert (s.a, s.b, s.M) == (Fraction(1, 2), Fraction(1, 2), 1)


def test_stats_duplicates(base_triple):
    s = collection_stats([base_triple, base_triple], 4)
    assert s.M == 2


def test_stats_empty():
    s = collection_stats([], 5)
    assert s.empty
    assert s.a is None and s.b is None
    assert CollectionStats.from_dict(s.to_dict()) == s


def test_stats_roundtrip(two_block):
    s = collection_stats(two_block[1], 8)
    assert CollectionStats.from_dict(s.to_dict()) == s
