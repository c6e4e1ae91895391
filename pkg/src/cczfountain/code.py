"""CSS code model.

Naming: ``s_x`` rows generate C_X (X-stabilizer supports) and ``s_z`` rows
generate C_Z.  Then ``k = n - rank(s_x) - rank(s_z)`` and the X-type logical
operators are the cosets of C_Z^perp / C_X.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .f2la import BitMatrix, BitVector, _Echelon, _rref, inner, nullspace_basis, rank

__all__ = [
    "CommutationError",
    "CssCode",
    "DistanceReport",
    "DEFAULT_DISTANCE_CUTOFF",
    "new_css",
    "num_logicals",
    "distance_exact",
]

DEFAULT_DISTANCE_CUTOFF = int(os.environ.get("CCZFOUNTAIN_DISTANCE_CUTOFF", 2**24))


class CommutationError(ValueError):
    """An X-stabilizer row and a Z-stabilizer row anticommute."""

    def __init__(self, x_row: int, z_row: int):
        self.x_row = x_row
        self.z_row = z_row
        super().__init__(f"rows X{x_row}/Z{z_row} anticommute")


def _extend_basis(base: Sequence[int], ambient: Sequence[int], n: int) -> list[int]:
    """Extend span(base) to span(ambient); return the added vectors reduced mod span(base)."""
    base_rows, base_pivots = _rref(base, n)
    ech = _Echelon()
    for r in base_rows:
        ech.add(r)
    out = []
    for v in ambient:
        if ech.add(v):
            w = v
            for p, row in zip(base_pivots, base_rows):
                if w >> p & 1:
                    w ^= row
            out.append(w)
    return out


class CssCode:
    """Validated CSS code with cached logical bases.

    Use :func:`new_css` or construct directly; both validate commutation.
    """

    def __init__(self, s_x: BitMatrix, s_z: BitMatrix, name: str | None = None):
        if not isinstance(s_x, BitMatrix):
            s_x = BitMatrix(s_x)
        if not isinstance(s_z, BitMatrix):
            s_z = BitMatrix(s_z)
        if s_x.cols != s_z.cols:
            raise ValueError(f"column mismatch: s_x has {s_x.cols}, s_z has {s_z.cols}")
        for i, xr in enumerate(s_x, start=1):
            for j, zr in enumerate(s_z, start=1):
                if inner(xr, zr):
                    raise CommutationError(i, j)
        self.s_x = s_x
        self.s_z = s_z
        self.n = s_x.cols
        self.name = name
        self.rank_x = rank(s_x)
        self.rank_z = rank(s_z)
        self.k = self.n - self.rank_x - self.rank_z

    @cached_property
    def stabilizer_x_basis(self) -> tuple[BitVector, ...]:
        """Independent generators of C_X (reduced row echelon form of ``s_x``)."""
        rows, _ = _rref(self.s_x.row_ints(), self.n)
        return tuple(BitVector.from_int(r, self.n) for r in rows)

    @cached_property
    def stabilizer_z_basis(self) -> tuple[BitVector, ...]:
        rows, _ = _rref(self.s_z.row_ints(), self.n)
        return tuple(BitVector.from_int(r, self.n) for r in rows)

    @cached_property
    def logical_x_basis(self) -> tuple[BitVector, ...]:
        """Coset representatives spanning C_Z^perp / C_X."""
        ambient = [v.value for v in nullspace_basis(self.s_z)]
        ext = _extend_basis(self.s_x.row_ints(), ambient, self.n)
        assert len(ext) == self.k
        return tuple(BitVector.from_int(v, self.n) for v in ext)

    @cached_property
    def logical_z_basis(self) -> tuple[BitVector, ...]:
        """Coset representatives spanning C_X^perp / C_Z."""
        ambient = [v.value for v in nullspace_basis(self.s_x)]
        ext = _extend_basis(self.s_z.row_ints(), ambient, self.n)
        assert len(ext) == self.k
        return tuple(BitVector.from_int(v, self.n) for v in ext)

    @cached_property
    def _label_echelon(self) -> _Echelon:
        # C_X generators carry tag 0; logical j carries tag bit j, so reducing
        # a vector of C_Z^perp leaves its coset label in the tag.
        ech = _Echelon()
        for s in self.stabilizer_x_basis:
            ech.add(s.value, 0)
        for j, lx in enumerate(self.logical_x_basis):
            ech.add(lx.value, 1 << j)
        return ech

    def in_logical_space(self, v: BitVector) -> bool:
        """Membership in C_Z^perp."""
        return self.s_z.annihilates(v)

    def logical_label(self, v: BitVector) -> int:
        """Coordinates of ``v``'s coset in the logical X basis, packed (bit j = logical j+1).

        Raises ValueError when ``v`` is not in C_Z^perp.
        """
        if v.n != self.n:
            raise ValueError(f"vector length {v.n} != n={self.n}")
        residue, tag = self._label_echelon.reduce(v.value, 0)
        if residue:
            raise ValueError(f"{v} is not in C_Z^perp")
        return tag

    def logical_representative(self, label: int) -> BitVector:
        """The fixed representative sum of logical basis vectors selected by ``label``."""
        value = 0
        for j, lx in enumerate(self.logical_x_basis):
            if label >> j & 1:
                value ^= lx.value
        return BitVector.from_int(value, self.n)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<CssCode{tag} n={self.n} k={self.k}>"


def new_css(s_x, s_z, name: str | None = None) -> CssCode:
    """Validate a stabilizer pair and return the code.

    Raises:
        CommutationError: some X row is not orthogonal to some Z row.
        ValueError: the matrices disagree on the number of columns.
    """
    return CssCode(s_x, s_z, name=name)


def num_logicals(code: CssCode) -> int:
    return code.k


@dataclass(frozen=True)
class DistanceReport:
    """Exact X/Z distances, or ``None`` where enumeration was skipped."""

    d_x: int | None
    d_z: int | None
    d: int | None
    method: str

    @property
    def known(self) -> bool:
        return self.d is not None


def _min_weight_outside(sub: Sequence[BitVector], logicals: Sequence[BitVector]) -> int:
    """Minimum weight over span(sub + logicals) minus span(sub), by Gray code."""
    gens = [s.value for s in sub] + [l.value for l in logicals]
    r = len(sub)
    m = len(gens)
    best = None
    v = 0
    label = 0
    logical_mask = ((1 << m) - 1) ^ ((1 << r) - 1)
    for i in range(1, 1 << m):
        j = (i & -i).bit_length() - 1
        v ^= gens[j]
        label ^= 1 << j
        if label & logical_mask:
            w = v.bit_count()
            if best is None or w < best:
                best = w
                if best == 1:
                    break
    assert best is not None
    return best


def distance_exact(code: CssCode, cutoff: int = DEFAULT_DISTANCE_CUTOFF) -> DistanceReport:
    """Brute-force X and Z distances.

    C_Z^perp has ``2**(n - rank s_z)`` elements and C_X^perp has
    ``2**(n - rank s_x)``; if either exceeds ``cutoff`` the corresponding
    distance is reported as ``None``.
    """
    if code.k == 0:
        return DistanceReport(None, None, None, "no logical qubits (k=0)")
    size_x = 1 << (code.n - code.rank_z)
    size_z = 1 << (code.n - code.rank_x)
    d_x = d_z = None
    if size_x <= cutoff:
        d_x = _min_weight_outside(code.stabilizer_x_basis, code.logical_x_basis)
    if size_z <= cutoff:
        d_z = _min_weight_outside(code.stabilizer_z_basis, code.logical_z_basis)
    d = min(d_x, d_z) if d_x is not None and d_z is not None else None
    if d is None:
        method = f"cutoff exceeded (2^{code.n - code.rank_z} / 2^{code.n - code.rank_x} words, cutoff {cutoff})"
    else:
        method = f"exhaustive (2^{code.n - code.rank_z} + 2^{code.n - code.rank_x} words)"
    return DistanceReport(d_x, d_z, d, method)
