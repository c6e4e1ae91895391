"""Magic-friendly triples of logical X representatives.

A triple (x, y, z) of vectors in C_Z^perp is magic-friendly when the three
cosets are independent in C_Z^perp / C_X, the vectors are pairwise
orthogonal, and their triple overlap is odd.  Conditions 2 and 3 depend on
the representatives chosen, so every check here runs on the literal vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .code import CssCode
from .f2la import BitVector, _Echelon, inner, support, triple_overlap

__all__ = [
    "MagicFriendlyTriple",
    "TripleVerification",
    "SearchBudget",
    "TripleSearchResult",
    "CollectionStats",
    "verify_magic_friendly",
    "enumerate_triples",
    "sample_triples",
    "collection_stats",
    "canonical_order",
]

CONDITIONS = ("in_code_space", "independent", "orthogonal", "odd_overlap")


@dataclass(frozen=True)
class MagicFriendlyTriple:
    """Three representatives plus the union of their supports."""

    x: BitVector
    y: BitVector
    z: BitVector
    support_union: frozenset[int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not (self.x.n == self.y.n == self.z.n):
            raise ValueError("triple vectors must have equal lengths")
        object.__setattr__(self, "support_union", support(self.x) | support(self.y) | support(self.z))

    @classmethod
    def from_strings(cls, x: str, y: str, z: str) -> "MagicFriendlyTriple":
        return cls(BitVector(x), BitVector(y), BitVector(z))

    @property
    def n(self) -> int:
        return self.x.n

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def key(self) -> tuple[str, str, str]:
        return (str(self.x), str(self.y), str(self.z))

    def to_json(self) -> list[str]:
        return list(self.key())


@dataclass(frozen=True)
class TripleVerification:
    in_code_space: bool
    independent: bool
    orthogonal: bool
    odd_overlap: bool
    inner_products: tuple[int, int, int]
    overlap: int
    representatives: tuple[str, str, str]

    @property
    def overall(self) -> bool:
        return self.in_code_space and self.independent and self.orthogonal and self.odd_overlap

    @property
    def first_failure(self) -> str | None:
        for name in CONDITIONS:
            if not getattr(self, name):
                return name
        return None

    def __bool__(self) -> bool:
        return self.overall

    def to_dict(self) -> dict:
        return {
            "representatives": list(self.representatives),
            "in_code_space": self.in_code_space,
            "independent": self.independent,
            "orthogonal": self.orthogonal,
            "odd_overlap": self.odd_overlap,
            "inner_products": list(self.inner_products),
            "triple_overlap": self.overlap,
            "overall": self.overall,
            "first_failure": self.first_failure,
        }


def _independent_mod_cx(code: CssCode, vs: Sequence[BitVector]) -> bool:
    ech = _Echelon()
    for s in code.stabilizer_x_basis:
        ech.add(s.value)
    return all(ech.add(v.value) for v in vs)


def verify_magic_friendly(code: CssCode, x: BitVector, y: BitVector, z: BitVector) -> TripleVerification:
    """Check every magic-friendly condition on the given representatives.

    Raises:
        ValueError: a vector's length differs from ``code.n``.
    """
    for v in (x, y, z):
        if v.n != code.n:
            raise ValueError(f"vector length {v.n} != n={code.n}")
    in_space = all(code.in_logical_space(v) for v in (x, y, z))
    independent = _independent_mod_cx(code, (x, y, z))
    ips = (inner(x, y), inner(x, z), inner(y, z))
    tau = triple_overlap(x, y, z)
    return TripleVerification(
        in_code_space=in_space,
        independent=independent,
        orthogonal=ips == (0, 0, 0),
        odd_overlap=tau == 1,
        inner_products=ips,
        overlap=tau,
        representatives=(str(x), str(y), str(z)),
    )


def canonical_order(x: BitVector, y: BitVector, z: BitVector) -> tuple[BitVector, BitVector, BitVector]:
    a, b, c = sorted((x, y, z), key=str)
    return a, b, c


@dataclass(frozen=True)
class SearchBudget:
    """Limits for exhaustive search.

    ``stabilizer_shift`` adds every sum of at most that many C_X generators
    to each pure coset representative (0 means no shifting).
    """

    max_checks: int = 2_000_000
    max_results: int | None = None
    stabilizer_shift: int = 0


@dataclass(frozen=True)
class TripleSearchResult:
    triples: list[MagicFriendlyTriple]
    truncated: bool
    candidates: int
    checked: int

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)


def _candidates(code: CssCode, shift: int) -> list[tuple[BitVector, int]]:
    """(representative, coset label) pairs in lexicographic order of representative."""
    n = code.n
    shifts = [0]
    gens = [s.value for s in code.stabilizer_x_basis]
    for w in range(1, min(shift, len(gens)) + 1):
        for combo in itertools.combinations(gens, w):
            acc = 0
            for g in combo:
                acc ^= g
            shifts.append(acc)
    seen = set()
    out = []
    for label in range(1, 1 << code.k):
        base = code.logical_representative(label).value
        for s in shifts:
            v = base ^ s
            if v not in seen:
                seen.add(v)
                out.append((BitVector.from_int(v, n), label))
    out.sort(key=lambda item: str(item[0]))
    return out


def enumerate_triples(code: CssCode, budget: SearchBudget | None = None) -> TripleSearchResult:
    """Exhaustively list magic-friendly triples among coset representatives.

    Each unordered triple appears once with its representatives in strictly
    increasing lexicographic order.  When stabilizer shifting produces several
    triples over the same three cosets, only the first in canonical order is
    kept.
    """
    budget = budget or SearchBudget()
    if code.k < 3:
        return TripleSearchResult([], False, 0, 0)
    cands = _candidates(code, budget.stabilizer_shift)
    vals = [v.value for v, _ in cands]
    labels = [lab for _, lab in cands]
    m = len(cands)
    found: list[MagicFriendlyTriple] = []
    seen_cosets: set[frozenset[int]] = set()
    checked = 0
    truncated = False
    for i in range(m):
        if truncated:
            break
        vi, li = vals[i], labels[i]
        for j in range(i + 1, m):
            vj, lj = vals[j], labels[j]
            if (vi & vj).bit_count() & 1 or lj == li:
                continue
            for l in range(j + 1, m):
                if checked >= budget.max_checks:
                    truncated = True
                    break
                checked += 1
                vl, ll = vals[l], labels[l]
                if (vi & vl).bit_count() & 1 or (vj & vl).bit_count() & 1:
                    continue
                if not (vi & vj & vl).bit_count() & 1:
                    continue
                # labels are coordinates in the quotient, so independence is
                # linear independence of three nonzero labels
                if ll in (li, lj, li ^ lj):
                    continue
                cosets = frozenset((li, lj, ll))
                if cosets in seen_cosets:
                    continue
                seen_cosets.add(cosets)
                found.append(MagicFriendlyTriple(cands[i][0], cands[j][0], cands[l][0]))
                if budget.max_results is not None and len(found) >= budget.max_results:
                    truncated = True
                    break
            if truncated:
                break
    found.sort(key=MagicFriendlyTriple.key)
    return TripleSearchResult(found, truncated, m, checked)


def sample_triples(
    code: CssCode,
    seed: int,
    attempts: int,
    randomize_representatives: bool = False,
) -> list[MagicFriendlyTriple]:
    """Draw random coset triples and keep the verified ones.

    With ``randomize_representatives`` each slot also gets a uniformly random
    element of C_X added.  Output is deduplicated and canonically sorted, and
    is identical for identical arguments.
    """
    if code.k < 3:
        return []
    rng = random.Random(seed)
    gens = [s.value for s in code.stabilizer_x_basis]
    found: dict[tuple[str, str, str], MagicFriendlyTriple] = {}
    top = (1 << code.k) - 1
    for _ in range(attempts):
        vs = []
        for _slot in range(3):
            label = rng.randint(1, top)
            v = code.logical_representative(label).value
            if randomize_representatives and gens:
                mask = rng.getrandbits(len(gens))
                for g_idx, g in enumerate(gens):
                    if mask >> g_idx & 1:
                        v ^= g
            vs.append(BitVector.from_int(v, code.n))
        x, y, z = canonical_order(*vs)
        if x == y or y == z:
            continue
        if verify_magic_friendly(code, x, y, z).overall:
            t = MagicFriendlyTriple(x, y, z)
            found.setdefault(t.key(), t)
    return [found[k] for k in sorted(found)]


@dataclass(frozen=True)
class CollectionStats:
    """Support-size ratios and maximum per-coordinate participation.

    ``a`` and ``b`` are ``None`` for an empty collection.
    """

    count: int
    a: Fraction | None
    b: Fraction | None
    M: int
    n: int

    @property
    def empty(self) -> bool:
        return self.count == 0

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "a": None if self.a is None else str(self.a),
            "b": None if self.b is None else str(self.b),
            "M": self.M,
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CollectionStats":
        return cls(
            count=d["count"],
            a=None if d["a"] is None else Fraction(d["a"]),
            b=None if d["b"] is None else Fraction(d["b"]),
            M=d["M"],
            n=d["n"],
        )


def _support_of(item) -> frozenset[int]:
    if isinstance(item, MagicFriendlyTriple):
        return item.support_union
    return frozenset(item)


def collection_stats(triples: Iterable, n: int) -> CollectionStats:
    """Exact a = min|S_t|/n, b = max|S_t|/n and M over the collection.

    Items may be triples or plain coordinate sets.
    """
    sups = [_support_of(t) for t in triples]
    if not sups:
        return CollectionStats(0, None, None, 0, n)
    participation: dict[int, int] = {}
    for s in sups:
        for i in s:
            if not 1 <= i <= n:
                raise ValueError(f"coordinate {i} outside 1..{n}")
            participation[i] = participation.get(i, 0) + 1
    sizes = [len(s) for s in sups]
    return CollectionStats(
        count=len(sups),
        a=Fraction(min(sizes), n),
        b=Fraction(max(sizes), n),
        M=max(participation.values(), default=0),
        n=n,
    )
