import random
from pathlib import Path

import pytest

from cczfountain import BitMatrix, BitVector, MagicFriendlyTriple, new_css
from cczfountain.f2la import nullspace_basis

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

HAMMING = ["0001111", "0110011", "1010101"]
BASE_TRIPLE = ("0111", "1011", "1101")


def trivial_code(n):
    return new_css(BitMatrix([], cols=n), BitMatrix([], cols=n))


def random_css(rng, n, rx, rz):
    """Random commuting pair: s_z rows are drawn from the nullspace of s_x."""
    s_x = [[rng.randint(0, 1) for _ in range(n)] for _ in range(rx)]
    sx = BitMatrix(s_x, cols=n)
    null = nullspace_basis(sx)
    rows = []
    for _ in range(rz):
        v = BitVector.zeros(n)
        for b in null:
            if rng.random() < 0.5:
                v = v + b
        rows.append(v)
    return new_css(sx, BitMatrix(rows, cols=n))


@pytest.fixture
def steane():
    return new_css(BitMatrix(HAMMING), BitMatrix(HAMMING))


@pytest.fixture
def trivial4():
    return trivial_code(4)


@pytest.fixture
def code422():
    return new_css(BitMatrix(["1111"]), BitMatrix(["1111"]))


@pytest.fixture
def base_triple():
    return MagicFriendlyTriple.from_strings(*BASE_TRIPLE)


@pytest.fixture
def two_block():
    code = trivial_code(8)
    triples = [
        MagicFriendlyTriple.from_strings("01110000", "10110000", "11010000"),
        MagicFriendlyTriple.from_strings("00000111", "00001011", "00001101"),
    ]
    return code, triples


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.RESULTS:
            terminalreporter.write_line(line)
