import random

import pytest

from cczfountain import BitMatrix, BitVector, CommutationError, distance_exact, new_css, num_logicals
from cczfountain.f2la import in_span
from tests.conftest import random_css, trivial_code
from tests.oracles import naive_distance


def test_steane_valid(steane):
    assert steane.n == 7
    assert num_logicals(steane) == 1


def test_trivial_code(trivial4):
    assert trivial4.k == 4
    assert trivial4.rank_x == trivial4.rank_z == 0


def test_anticommuting_rejected():
    with pytest.raises(CommutationError) as exc:
        new_css(BitMatrix(["1000"]), BitMatrix(["1000"]))
    assert "X1/Z1" in str(exc.value)


def test_column_mismatch_rejected():
    with pytest.raises(ValueError):
        new_css(BitMatrix(["1111"]), BitMatrix(["11111"]))


def test_no_logicals():
    # C_X = span{1100}, C_Z = span{1100, 0011}: ranks 1 + 2 + ... need sum = n
    code = new_css(BitMatrix(["1100", "0011"]), BitMatrix(["1100", "0011"]))
    assert code.k == 0
    rep = distance_exact(code)
    assert rep.d is None
    assert "k=0" in rep.method


def test_logical_basis_properties(steane, code422):
    for code in (steane, code422):
        assert len(code.logical_x_basis) == code.k
        assert len(code.logical_z_basis) == code.k
        for v in code.logical_x_basis:
            assert code.in_logical_space(v)
            assert not in_span(v, code.stabilizer_x_basis)


def test_logical_label_roundtrip(code422):
    for label in range(1 << code422.k):
        v = code422.logical_representative(label)
        assert code422.logical_label(v) == label
        # shifting by a stabilizer keeps the label
        assert code422.logical_label(v + BitVector("1111")) == label


def test_logical_label_rejects_non_codeword(code422):
    with pytest.raises(ValueError):
        code422.logical_label(BitVector("1000"))


@pytest.mark.parametrize("fixture,d", [("steane", 3), ("trivial4", 1), ("code422", 2)])
def test_distance_examples(request, fixture, d):
    code = request.getfixturevalue(fixture)
    rep = distance_exact(code)
    assert rep.known
    assert rep.d == d


def test_distance_cutoff_reports_unknown(steane):
    rep = distance_exact(steane, cutoff=2)
    assert not rep.known
    assert rep.d is None


def test_distance_matches_naive_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 8)
        code = random_css(rng, n, rng.randint(0, 2), rng.randint(0, 2))
        if code.k == 0:
            continue
        sx = [v.to_array().tolist() for v in code.stabilizer_x_basis]
        sz = [v.to_array().tolist() for v in code.stabilizer_z_basis]
        dx, dz = naive_distance(sx, sz, n)
        rep = distance_exact(code)
        assert (rep.d_x, rep.d_z) == (dx, dz)
        assert rep.d == min(dx, dz)


def test_trivial_codes_have_distance_one():
    for n in range(1, 6):
        assert distance_exact(trivial_code(n)).d == 1
