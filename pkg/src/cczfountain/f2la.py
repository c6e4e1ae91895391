"""Dense GF(2) linear algebra on bit-packed vectors.

Vectors are stored as Python integers with coordinate ``i`` (1-based) held in
bit ``i - 1``.  Every public function takes and returns 1-based coordinates.
Row reduction always picks the lowest-index pivot column and, within it, the
lowest-index row, so derived bases are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitVector",
    "BitMatrix",
    "rank",
    "row_reduce",
    "rowspace_basis",
    "nullspace_basis",
    "inner",
    "triple_overlap",
    "quotient_independent",
    "in_span",
    "support",
]


class BitVector:
    """Immutable binary vector of fixed length.

    Accepts a 0/1 string (``"0111"``), any iterable of 0/1 values, or a numpy
    array.  Addition (``+`` or ``^``) is coordinatewise XOR.
    """

    __slots__ = ("_n", "_value")

    def __init__(self, bits: str | Iterable[int] | np.ndarray):
        if isinstance(bits, str):
            bits = bits.strip()
            if not bits or set(bits) - {"0", "1"}:
                raise ValueError(f"not a 0/1 string: {bits!r}")
            values = [int(c) for c in bits]
        else:
            values = [int(b) for b in np.asarray(bits).ravel()]
            if any(b not in (0, 1) for b in values):
                raise ValueError("bit values must be 0 or 1")
        if not values:
            raise ValueError("a BitVector needs at least one coordinate")
        value = 0
        for i, b in enumerate(values):
            if b:
                value |= 1 << i
        self._n = len(values)
        self._value = value

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitVector":
        """Build from the packed integer form (bit ``i-1`` is coordinate ``i``)."""
        if n < 1:
            raise ValueError("length must be positive")
        if value < 0 or value >> n:
            raise ValueError(f"value {value} does not fit in {n} bits")
        obj = cls.__new__(cls)
        obj._n = n
        obj._value = value
        return obj

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls.from_int(0, n)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls.from_int((1 << n) - 1, n)

    @classmethod
    def from_support(cls, n: int, coords: Iterable[int]) -> "BitVector":
        value = 0
        for i in coords:
            if not 1 <= i <= n:
                raise ValueError(f"coordinate {i} outside 1..{n}")
            value |= 1 << (i - 1)
        return cls.from_int(value, n)

    @property
    def n(self) -> int:
        return self._n

    @property
    def value(self) -> int:
        return self._value

    @property
    def weight(self) -> int:
        return self._value.bit_count()

    def bit(self, i: int) -> int:
        """Value at 1-based coordinate ``i``."""
        if not 1 <= i <= self._n:
            raise IndexError(f"coordinate {i} outside 1..{self._n}")
        return (self._value >> (i - 1)) & 1

    def support(self) -> frozenset[int]:
        return support(self)

    def is_zero(self) -> bool:
        return self._value == 0

    def to_array(self) -> np.ndarray:
        return np.array([(self._value >> i) & 1 for i in range(self._n)], dtype=np.uint8)

    def __len__(self) -> int:
        return self._n

    def __iter__(self):
        return ((self._value >> i) & 1 for i in range(self._n))

    def __add__(self, other: "BitVector") -> "BitVector":
        _check_lengths(self, other)
        return BitVector.from_int(self._value ^ other._value, self._n)

    __xor__ = __add__

    def __and__(self, other: "BitVector") -> "BitVector":
        _check_lengths(self, other)
        return BitVector.from_int(self._value & other._value, self._n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._n == other._n and self._value == other._value

    def __lt__(self, other: "BitVector") -> bool:
        # lexicographic on the bit string, coordinate 1 first
        return str(self) < str(other)

    def __hash__(self) -> int:
        return hash((self._n, self._value))

    def __str__(self) -> str:
        return "".join("1" if (self._value >> i) & 1 else "0" for i in range(self._n))

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


class BitMatrix:
    """Binary matrix stored as a tuple of row vectors.

    ``cols`` must be given when there are no rows, since an empty matrix still
    has an ambient length (the trivial CSS code relies on this).
    """

    __slots__ = ("_rows", "_cols")

    def __init__(self, rows: Iterable | np.ndarray = (), cols: int | None = None):
        if isinstance(rows, np.ndarray) and rows.ndim == 2:
            if cols is None:
                cols = rows.shape[1]
            rows = list(rows)
        vecs = [r if isinstance(r, BitVector) else BitVector(r) for r in rows]
        if cols is None:
            if not vecs:
                raise ValueError("cols is required for a matrix with no rows")
            cols = vecs[0].n
        if cols < 1:
            raise ValueError("a BitMatrix needs at least one column")
        for idx, v in enumerate(vecs, start=1):
            if v.n != cols:
                raise ValueError(f"row {idx} has length {v.n}, expected {cols}")
        self._rows = tuple(vecs)
        self._cols = cols

    @classmethod
    def from_ints(cls, values: Iterable[int], cols: int) -> "BitMatrix":
        return cls([BitVector.from_int(v, cols) for v in values], cols=cols)

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._cols)

    @property
    def row_vectors(self) -> tuple[BitVector, ...]:
        return self._rows

    def row_ints(self) -> list[int]:
        return [r.value for r in self._rows]

    def syndrome(self, v: BitVector) -> BitVector | None:
        """``m @ v`` over GF(2); ``None`` for a matrix with no rows."""
        if v.n != self._cols:
            raise ValueError(f"vector length {v.n} != matrix cols {self._cols}")
        if not self._rows:
            return None
        return BitVector([inner(r, v) for r in self._rows])

    def annihilates(self, v: BitVector) -> bool:
        if v.n != self._cols:
            raise ValueError(f"vector length {v.n} != matrix cols {self._cols}")
        return all((r.value & v.value).bit_count() % 2 == 0 for r in self._rows)

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self._rows):
            out[i] = r.to_array()
        return out

    def max_row_weight(self) -> int:
        return max((r.weight for r in self._rows), default=0)

    def max_col_weight(self) -> int:
        if not self._rows:
            return 0
        return int(self.to_array().sum(axis=0).max())

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._cols == other._cols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._cols, self._rows))

    def __repr__(self) -> str:
        body = ", ".join(f"'{r}'" for r in self._rows)
        return f"BitMatrix([{body}], cols={self._cols})"


def _check_lengths(*vs: BitVector) -> int:
    n = vs[0].n
    for v in vs[1:]:
        if v.n != n:
            raise ValueError(f"length mismatch: {n} vs {v.n}")
    return n


def _rref(rows: Sequence[int], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed rows; returns (nonzero rows, pivots).

    Pivots are 0-based bit positions in increasing order.
    """
    work = [r for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        mask = 1 << col
        found = -1
        for i in range(r, len(work)):
            if work[i] & mask:
                found = i
                break
        if found < 0:
            continue
        work[r], work[found] = work[found], work[r]
        piv = work[r]
        for i in range(len(work)):
            if i != r and work[i] & mask:
                work[i] ^= piv
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


class _Echelon:
    """Incremental echelon basis keyed by lowest set bit.

    Each stored row has its pivot as its lowest set bit, so reducing in
    increasing pivot order is exact.
    """

    def __init__(self) -> None:
        self.rows: dict[int, int] = {}
        self.tags: dict[int, int] = {}

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        for p in sorted(self.rows):
            if v >> p & 1:
                v ^= self.rows[p]
                tag ^= self.tags[p]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        v, tag = self.reduce(v, tag)
        if v == 0:
            return False
        p = (v & -v).bit_length() - 1
        self.rows[p] = v
        self.tags[p] = tag
        return True

    def __len__(self) -> int:
        return len(self.rows)


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form with 1-based pivot columns."""
    rows, pivots = _rref(m.row_ints(), m.cols)
    return BitMatrix.from_ints(rows, m.cols), [p + 1 for p in pivots]


def rank(m: BitMatrix) -> int:
    """GF(2) rank of ``m``."""
    return len(_rref(m.row_ints(), m.cols)[1])


def rowspace_basis(m: BitMatrix) -> list[BitVector]:
    rows, _ = _rref(m.row_ints(), m.cols)
    return [BitVector.from_int(r, m.cols) for r in rows]


def nullspace_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : m v = 0}``, one vector per free column in increasing order."""
    n = m.cols
    rows, pivots = _rref(m.row_ints(), n)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, row in zip(pivots, rows):
            if row >> f & 1:
                v |= 1 << p
        basis.append(BitVector.from_int(v, n))
    return basis


def inner(x: BitVector, y: BitVector) -> int:
    """Standard inner product over GF(2)."""
    _check_lengths(x, y)
    return (x.value & y.value).bit_count() & 1


def triple_overlap(x: BitVector, y: BitVector, z: BitVector) -> int:
    """Parity of the number of coordinates where x, y and z are all 1."""
    _check_lengths(x, y, z)
    return (x.value & y.value & z.value).bit_count() & 1


def in_span(v: BitVector, basis: Sequence[BitVector]) -> bool:
    if basis:
        _check_lengths(v, *basis)
    ech = _Echelon()
    for b in basis:
        ech.add(b.value)
    return ech.reduce(v.value)[0] == 0


def quotient_independent(vs: Sequence[BitVector], subspace_basis: Sequence[BitVector]) -> bool:
    """True iff no nonzero combination of ``vs`` lies in span(subspace_basis)."""
    vs = list(vs)
    subspace_basis = list(subspace_basis)
    if vs or subspace_basis:
        _check_lengths(*vs, *subspace_basis)
    ech = _Echelon()
    for s in subspace_basis:
        ech.add(s.value)
    return all(ech.add(v.value) for v in vs)


def support(v: BitVector) -> frozenset[int]:
    """1-based coordinates where ``v`` is 1."""
    value = v.value
    out = []
    while value:
        low = value & -value
        out.append(low.bit_length())
        value ^= low
    return frozenset(out)
