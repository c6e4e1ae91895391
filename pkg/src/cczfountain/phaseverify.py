"""Brute-force oracles for diagonal {Z, CZ, CCZ} circuits.

Phases are GF(2) exponents: a basis state picks up ``(-1)**e``.  Basis labels
are 0/1 strings whose character ``q - 1`` is qubit ``q``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .code import CssCode
from .f2la import BitVector, _Echelon, triple_overlap

__all__ = [
    "Gate",
    "DiagonalCircuit",
    "PhaseTable",
    "ConstancyReport",
    "LogicalAction",
    "LightconeCheck",
    "EnumerationCutoffError",
    "DEFAULT_LABEL_CUTOFF",
    "diagonal_phase",
    "phase_table",
    "wirewise_circuit",
    "circuit_from_schedule",
    "check_wirewise_phase",
    "check_coset_constancy",
    "extract_logical_action",
    "lightcone_support_check",
    "combinatorial_lightcone",
]

DEFAULT_LABEL_CUTOFF = int(os.environ.get("CCZFOUNTAIN_LABEL_CUTOFF", 2**20))
ARITY = {"Z": 1, "CZ": 2, "CCZ": 3}


class EnumerationCutoffError(RuntimeError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    layer: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "targets": list(self.targets)}
        if self.layer is not None:
            d["layer"] = self.layer
        return d


class DiagonalCircuit:
    """Ordered list of Z / CZ / CCZ gates on ``qubit_count`` qubits.

    Gates may be given as :class:`Gate`, ``(kind, targets)`` or
    ``(kind, targets, layer)``.  Layers are optional but must be all-or-none.
    """

    def __init__(self, qubit_count: int, gates: Iterable = ()):
        if qubit_count < 1:
            raise ValueError("qubit_count must be positive")
        parsed = []
        for pos, g in enumerate(gates, start=1):
            if not isinstance(g, Gate):
                g = Gate(g[0], tuple(int(t) for t in g[1]), g[2] if len(g) > 2 else None)
            if g.kind not in ARITY:
                raise ValueError(f"gate {pos}: unsupported kind {g.kind!r}")
            if len(g.targets) != ARITY[g.kind]:
                raise ValueError(f"gate {pos}: {g.kind} needs {ARITY[g.kind]} targets, got {len(g.targets)}")
            if len(set(g.targets)) != len(g.targets):
                raise ValueError(f"gate {pos}: repeated target in {g.targets}")
            for t in g.targets:
                if not 1 <= t <= qubit_count:
                    raise ValueError(f"gate {pos}: target {t} outside 1..{qubit_count}")
            if g.layer is not None and g.layer < 1:
                raise ValueError(f"gate {pos}: layer must be >= 1")
            parsed.append(g)
        layered = {g.layer is not None for g in parsed}
        if len(layered) > 1:
            raise ValueError("either every gate has a layer or none does")
        self.qubit_count = qubit_count
        self.gates: tuple[Gate, ...] = tuple(parsed)

    @property
    def has_layers(self) -> bool:
        return bool(self.gates) and self.gates[0].layer is not None

    def layers(self) -> list[list[Gate]]:
        """Gates grouped by layer in increasing layer order."""
        if not self.gates:
            return []
        if not self.has_layers:
            raise ValueError("circuit has no layer assignment")
        groups: dict[int, list[Gate]] = {}
        for g in self.gates:
            groups.setdefault(g.layer, []).append(g)
        return [groups[k] for k in sorted(groups)]

    def monomials(self) -> frozenset[tuple[int, ...]]:
        """Phase polynomial: the set of qubit-tuples whose product appears mod 2."""
        acc: set[tuple[int, ...]] = set()
        for g in self.gates:
            acc ^= {tuple(sorted(g.targets))}
        return frozenset(acc)

    def to_dict(self) -> dict:
        return {"qubit_count": self.qubit_count, "gates": [g.to_dict() for g in self.gates]}

    @classmethod
    def from_dict(cls, d: dict) -> "DiagonalCircuit":
        gates = [Gate(g["kind"], tuple(g["targets"]), g.get("layer")) for g in d["gates"]]
        return cls(d["qubit_count"], gates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagonalCircuit):
            return NotImplemented
        return self.qubit_count == other.qubit_count and self.gates == other.gates

    def __repr__(self) -> str:
        return f"DiagonalCircuit(qubit_count={self.qubit_count}, gates={len(self.gates)})"


def _label_bits(label: str | Sequence[int]) -> list[int]:
    if isinstance(label, str):
        return [int(c) for c in label]
    return [int(b) for b in label]


def diagonal_phase(circuit: DiagonalCircuit, basis_label: str | Sequence[int]) -> int:
    """Phase exponent of a basis state, evaluated gate by gate."""
    bits = _label_bits(basis_label)
    if len(bits) != circuit.qubit_count:
        raise ValueError(f"label length {len(bits)} != qubit_count {circuit.qubit_count}")
    e = 0
    for g in circuit.gates:
        prod = 1
        for t in g.targets:
            prod &= bits[t - 1]
        e ^= prod
    return e


@dataclass(frozen=True)
class PhaseTable:
    """Symbolic phase polynomial with optional materialized truth table."""

    qubit_count: int
    monomials: frozenset[tuple[int, ...]]
    table: dict[str, int] | None = None

    def exponent(self, label: str | Sequence[int]) -> int:
        bits = _label_bits(label)
        if len(bits) != self.qubit_count:
            raise ValueError(f"label length {len(bits)} != qubit_count {self.qubit_count}")
        return sum(all(bits[q - 1] for q in m) for m in self.monomials) & 1

    def materialize(self) -> dict[str, int]:
        n = self.qubit_count
        out = {}
        for idx in range(1 << n):
            label = "".join("1" if idx >> q & 1 else "0" for q in range(n))
            out[label] = self.exponent(label)
        return out


def phase_table(circuit: DiagonalCircuit, materialize: bool = False) -> PhaseTable:
    pt = PhaseTable(circuit.qubit_count, circuit.monomials())
    if materialize:
        pt = PhaseTable(pt.qubit_count, pt.monomials, pt.materialize())
    return pt


def wirewise_circuit(n: int, coords: Iterable[int] | None = None, layer: int | None = 1) -> DiagonalCircuit:
    """CCZ on ``(i, n+i, 2n+i)`` for each coordinate (all of ``1..n`` by default)."""
    coords = range(1, n + 1) if coords is None else sorted(coords)
    return DiagonalCircuit(3 * n, [("CCZ", (i, n + i, 2 * n + i), layer) for i in coords])


def circuit_from_schedule(schedule) -> DiagonalCircuit:
    """One CCZ per scheduled edge, layer index preserved."""
    gates = [
        ("CCZ", tuple(e), li) for li, layer in enumerate(schedule.layers, start=1) for e in layer
    ]
    return DiagonalCircuit(max(schedule.vertex_count, 1), gates)


@dataclass(frozen=True)
class WirewisePhaseCheck:
    ok: bool
    exponent: int
    overlap: int

    def __bool__(self) -> bool:
        return self.ok


def check_wirewise_phase(x: BitVector, y: BitVector, z: BitVector) -> WirewisePhaseCheck:
    """Compare the wirewise CCZ layer's phase on ``x||y||z`` with the triple overlap."""
    if not (x.n == y.n == z.n):
        raise ValueError(f"length mismatch: {x.n}, {y.n}, {z.n}")
    circuit = wirewise_circuit(x.n)
    e = diagonal_phase(circuit, str(x) + str(y) + str(z))
    tau = triple_overlap(x, y, z)
    return WirewisePhaseCheck(e == tau, e, tau)


def _monomial_masks(circuit: DiagonalCircuit) -> list[int]:
    out = []
    for m in circuit.monomials():
        mask = 0
        for q in m:
            mask |= 1 << (q - 1)
        out.append(mask)
    return out


def _packed_phase(masks: Sequence[int], label: int) -> int:
    e = 0
    for m in masks:
        if label & m == m:
            e ^= 1
    return e


def _span_elements(basis: Sequence[BitVector]) -> list[int]:
    elems = [0]
    for b in basis:
        elems += [e ^ b.value for e in elems]
    return elems


@dataclass(frozen=True)
class ConstancyReport:
    """``status`` is "constant", "counterexample" or "unknown"."""

    status: str
    exponent: int | None
    counterexample: tuple[tuple[str, str, str], tuple[str, str, str]] | None
    evaluations: int

    @property
    def constant(self) -> bool:
        return self.status == "constant"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "exponent": self.exponent,
            "counterexample": None if self.counterexample is None else [list(r) for r in self.counterexample],
            "evaluations": self.evaluations,
        }


def _check_three_register(code: CssCode, circuit: DiagonalCircuit) -> None:
    if circuit.qubit_count != 3 * code.n:
        raise ValueError(f"circuit has {circuit.qubit_count} qubits, expected 3n = {3 * code.n}")


def check_coset_constancy(
    code: CssCode,
    triple,
    circuit: DiagonalCircuit,
    cutoff: int = DEFAULT_LABEL_CUTOFF,
) -> ConstancyReport:
    """Evaluate the phase on every (x+s1, y+s2, z+s3) with s1, s2, s3 in C_X.

    Shifts are visited in lexicographic order of their bit strings, so the
    reported counterexample is the smallest one.
    """
    _check_three_register(code, circuit)
    x, y, z = triple
    n = code.n
    r = len(code.stabilizer_x_basis)
    total = 1 << (3 * r)
    if total > cutoff:
        return ConstancyReport("unknown", None, None, 0)
    elems = sorted(_span_elements(code.stabilizer_x_basis), key=lambda v: str(BitVector.from_int(v, n)))
    masks = _monomial_masks(circuit)
    base = (x.value, y.value, z.value)

    def rep(s1, s2, s3):
        return (base[0] ^ s1, base[1] ^ s2, base[2] ^ s3)

    def evaluate(vals):
        return _packed_phase(masks, vals[0] | vals[1] << n | vals[2] << (2 * n))

    e0 = evaluate(base)
    count = 0
    for s1 in elems:
        for s2 in elems:
            for s3 in elems:
                vals = rep(s1, s2, s3)
                count += 1
                if evaluate(vals) != e0:
                    as_str = lambda t: tuple(str(BitVector.from_int(v, n)) for v in t)  # noqa: E731
                    return ConstancyReport("counterexample", None, (as_str(base), as_str(vals)), count)
    return ConstancyReport("constant", e0, None, count)


@dataclass(frozen=True)
class LogicalAction:
    """Logical phase polynomial in an adapted basis.

    Variables ``a1..ak``, ``b1..bk``, ``c1..ck`` are the logical label bits of
    registers 1, 2, 3.  Direction 1, 2, 3 of the adapted basis are the cosets
    of x, y, z, so the target CCZ monomial is ``a1*b2*c3``.
    """

    k: int
    basis_labels: tuple[int, ...]
    representatives: tuple[str, ...]
    monomials: tuple[tuple[str, ...], ...]
    target_monomial: tuple[str, str, str]
    restricted_monomials: tuple[tuple[str, ...], ...]
    spectator_terms: tuple[tuple[str, ...], ...]
    truth_table: np.ndarray = field(repr=False, compare=False)

    @property
    def matches_ccz(self) -> bool:
        return self.restricted_monomials == (self.target_monomial,)

    @property
    def max_degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def index(self, alpha: int, beta: int, gamma: int) -> int:
        return alpha | beta << self.k | gamma << (2 * self.k)

    def evaluate(self, alpha: int, beta: int, gamma: int) -> int:
        """Evaluate the polynomial (not the stored table) at adapted labels."""
        bits = {}
        for j in range(self.k):
            bits[f"a{j + 1}"] = alpha >> j & 1
            bits[f"b{j + 1}"] = beta >> j & 1
            bits[f"c{j + 1}"] = gamma >> j & 1
        return sum(all(bits[v] for v in m) for m in self.monomials) & 1

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "representatives": list(self.representatives),
            "monomials": ["*".join(m) if m else "1" for m in self.monomials],
            "target_monomial": "*".join(self.target_monomial),
            "restricted_monomials": ["*".join(m) if m else "1" for m in self.restricted_monomials],
            "matches_ccz": self.matches_ccz,
            "spectator_terms": ["*".join(m) if m else "1" for m in self.spectator_terms],
        }


def _adapted_basis(k: int, first: Sequence[int]) -> list[int]:
    """Extend the given independent labels to a basis of F_2^k with unit vectors."""
    ech = _Echelon()
    out = []
    for v in list(first) + [1 << j for j in range(k)]:
        if ech.add(v):
            out.append(v)
    return out


def _moebius(f: np.ndarray, nvars: int) -> np.ndarray:
    """Algebraic normal form coefficients of a Boolean truth table."""
    a = f.copy()
    for i in range(nvars):
        a = a.reshape(-1, 2, 1 << i)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(-1)
    return a


def _var_name(bit: int, k: int) -> str:
    return "abc"[bit // k] + str(bit % k + 1)


def extract_logical_action(
    code: CssCode,
    triple,
    circuit: DiagonalCircuit,
    cutoff: int = DEFAULT_LABEL_CUTOFF,
) -> LogicalAction:
    """Logical phase polynomial of a three-register diagonal circuit.

    The adapted logical basis starts with the cosets of x, y, z (using x, y, z
    themselves as representatives) and is completed with unit logical labels
    represented by the code's fixed logical basis.

    Raises:
        EnumerationCutoffError: ``2**(3k)`` or the constancy check exceeds ``cutoff``.
        ValueError: x, y, z are not independent logicals, or the phase is not
            constant on their cosets.
    """
    _check_three_register(code, circuit)
    x, y, z = triple
    k = code.k
    if (1 << (3 * k)) > cutoff:
        raise EnumerationCutoffError(f"2^(3k) = 2^{3 * k} labels exceeds cutoff {cutoff}")
    labels = [code.logical_label(v) for v in (x, y, z)]
    basis = _adapted_basis(k, labels)
    if basis[:3] != labels:
        raise ValueError("x, y, z do not represent independent logical operators")
    const = check_coset_constancy(code, (x, y, z), circuit, cutoff)
    if const.status == "unknown":
        raise EnumerationCutoffError("coset constancy check exceeds cutoff")
    if const.status != "constant":
        raise ValueError(f"phase is not constant on the cosets: {const.counterexample}")

    n = code.n
    reps_val = [x.value, y.value, z.value] + [code.logical_representative(b).value for b in basis[3:]]
    size = 1 << k
    rep_of = np.zeros(size, dtype=object)
    for a in range(size):
        v = 0
        for j in range(k):
            if a >> j & 1:
                v ^= reps_val[j]
        rep_of[a] = v
    bits = np.array([[(rep_of[a] >> i) & 1 for i in range(n)] for a in range(size)], dtype=np.uint8)
    bits = bits.reshape(size, n)  # bits[a, i-1] = coordinate i of rep(a)

    # sum over monomials of a product that factorizes per register
    f = np.zeros((size, size, size), dtype=np.uint8)
    ones = np.ones(size, dtype=np.uint8)
    for m in circuit.monomials():
        factors = [ones, ones, ones]
        for q in m:
            reg, i = divmod(q - 1, n)
            factors[reg] = factors[reg] & bits[:, i]
        f ^= np.einsum("i,j,l->lji", factors[0], factors[1], factors[2]).astype(np.uint8) & 1
    f = f.reshape(-1)  # index = alpha | beta << k | gamma << 2k

    anf = _moebius(f, 3 * k)
    monos = []
    for idx in np.flatnonzero(anf):
        vars_ = tuple(_var_name(b, k) for b in range(3 * k) if int(idx) >> b & 1)
        monos.append(vars_)
    monos.sort(key=lambda m: (len(m), [(v[0], int(v[1:])) for v in m]))
    target = ("a1", "b2", "c3")
    target_set = set(target)
    restricted = tuple(m for m in monos if set(m) <= target_set)
    spectators = tuple(m for m in monos if m != target)
    reps_str = tuple(str(BitVector.from_int(v, n)) for v in reps_val)
    return LogicalAction(
        k=k,
        basis_labels=tuple(basis),
        representatives=reps_str,
        monomials=tuple(monos),
        target_monomial=target,
        restricted_monomials=restricted,
        spectator_terms=spectators,
        truth_table=f,
    )


def combinatorial_lightcone(circuit: DiagonalCircuit, start: Iterable[int]) -> frozenset[int]:
    """Grow a qubit set through the layers from last to first."""
    cone = set(start)
    for layer in reversed(circuit.layers()):
        grown = set(cone)
        for g in layer:
            if cone.intersection(g.targets):
                grown.update(g.targets)
        cone = grown
    return frozenset(cone)


@dataclass(frozen=True)
class LightconeCheck:
    ok: bool
    support: frozenset[int]
    cone: frozenset[int]
    depth: int
    size_bound: int

    def __bool__(self) -> bool:
        return self.ok


def _phase_vector(circuit: DiagonalCircuit) -> np.ndarray:
    nq = circuit.qubit_count
    idx = np.arange(1 << nq)
    e = np.zeros(1 << nq, dtype=np.int8)
    for g in circuit.gates:
        term = np.ones(1 << nq, dtype=np.int8)
        for t in g.targets:
            term &= ((idx >> (t - 1)) & 1).astype(np.int8)
        e ^= term
    return (1 - 2 * e).astype(np.int8)


def lightcone_support_check(
    circuit: DiagonalCircuit,
    error_support: Iterable[int],
    error_kind: str,
    max_qubits: int = 10,
) -> LightconeCheck:
    """Exact support of U^dagger E U versus the combinatorial light cone.

    ``E`` is a product of X (``error_kind="X"``) or Z (``"Z"``) on
    ``error_support``.  The conjugated operator is built as a dense matrix.

    Raises:
        ValueError: too many qubits, a missing layer assignment, a layer whose
            gates overlap, or an unknown error kind.
    """
    nq = circuit.qubit_count
    if nq > max_qubits:
        raise ValueError(f"{nq} qubits exceeds dense-matrix limit {max_qubits}")
    kind = error_kind.upper().replace("-TYPE", "")
    if kind not in ("X", "Z"):
        raise ValueError(f"unknown error kind {error_kind!r}")
    layers = circuit.layers()
    for li, layer in enumerate(layers, start=1):
        used: set[int] = set()
        for g in layer:
            if used.intersection(g.targets):
                raise ValueError(f"layer {li} has overlapping gates")
            used.update(g.targets)
    err = frozenset(error_support)
    for q in err:
        if not 1 <= q <= nq:
            raise ValueError(f"error qubit {q} outside 1..{nq}")

    dim = 1 << nq
    idx = np.arange(dim)
    mask = 0
    for q in err:
        mask |= 1 << (q - 1)
    u = _phase_vector(circuit)
    op = np.zeros((dim, dim), dtype=np.int8)
    if kind == "X":
        op[idx ^ mask, idx] = 1
    else:
        signs = 1 - 2 * (np.array([bin(i & mask).count("1") & 1 for i in range(dim)], dtype=np.int8))
        op[idx, idx] = signs
    # U is real diagonal, so U^dagger E U = diag(u) E diag(u)
    conj = (u[:, None] * op * u[None, :]).astype(np.int8)

    support = set()
    for q in range(1, nq + 1):
        b = 1 << (q - 1)
        flip = conj[np.ix_(idx ^ b, idx ^ b)]
        zsign = (1 - 2 * ((idx >> (q - 1)) & 1)).astype(np.int8)
        zconj = zsign[:, None] * conj * zsign[None, :]
        if not np.array_equal(flip, conj) or not np.array_equal(zconj, conj):
            support.add(q)
    cone = combinatorial_lightcone(circuit, err)
    depth = len(layers)
    bound = 3**depth * len(err)
    ok = support <= cone and len(support) <= bound
    return LightconeCheck(ok, frozenset(support), cone, depth, bound)
