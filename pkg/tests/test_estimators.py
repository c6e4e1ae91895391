import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cczfountain.estimators import CCZScheduler, FountainBuilder, TriplePacker, TripleFinder
from cczfountain.validation import check_binary_matrix, check_css_code, check_triples
from tests.conftest import BASE_TRIPLE


def test_check_css_code_forms(steane):
    h = steane.s_x.to_array()
    assert check_css_code(h, h).k == 1
    assert check_css_code((h, h)).k == 1
    assert check_css_code({"n": 4, "s_x": [], "s_z": []}).k == 4
    assert check_css_code(steane) is steane
    with pytest.raises(ValueError):
        check_css_code(h)


def test_check_binary_matrix_errors():
    with pytest.raises(ValueError):
        check_binary_matrix([[0, 2]])
    with pytest.raises(ValueError):
        check_binary_matrix([1, 0])
    with pytest.raises(ValueError):
        check_binary_matrix([])
    assert check_binary_matrix([], n_cols=3).shape == (0, 3)


def test_check_triples_array_roundtrip(base_triple):
    arr = np.array([[[int(c) for c in s] for s in BASE_TRIPLE]])
    assert check_triples(arr) == [base_triple]
    with pytest.raises(ValueError):
        check_triples(arr, n=5)


def test_triple_finder(trivial4, base_triple):
    f = TripleFinder().fit(trivial4)
    out = f.transform(trivial4)
    assert out.ndim == 3 and out.shape[1:] == (3, 4)
    assert base_triple in f.triples_
    assert f.get_params()["search"] == "enumerate"
    assert clone(f).get_params() == f.get_params()


def test_triple_finder_not_fitted():
    with pytest.raises(NotFittedError):
        TripleFinder().transform(None)


def test_triple_packer(two_block):
    _, triples = two_block
    p = TriplePacker().fit(triples)
    assert p.selected_ == [0, 1]
    assert p.transform(triples).shape == (2, 3, 8)


def test_scheduler_chain():
    edges = np.array([[1, 2, 3], [2, 3, 4], [4, 5, 6]])
    s = CCZScheduler().fit(edges)
    assert s.delta_ == 2
    assert s.depth_ == 2
    assert s.predict(edges).tolist() == [1, 2, 1]
    with pytest.raises(ValueError):
        s.predict([[1, 5, 6]])


def test_fountain_builder(two_block, trivial4):
    code, triples = two_block
    fb = FountainBuilder(strategy="abstract-edge").fit(code, triples=triples)
    assert fb.report_.selected_count == 2
    assert fb.schedule_.depth == 1
    fb2 = FountainBuilder().fit(trivial4)
    assert fb2.report_.selected_count == 1


def test_fountain_builder_no_triples(steane):
    with pytest.raises(ValueError):
        FountainBuilder().fit(steane)
