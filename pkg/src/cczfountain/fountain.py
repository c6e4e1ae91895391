"""End-to-end fountain construction and the bound formulas it reports.

triples -> greedy packing -> per-triple gate expansion -> hypergraph ->
greedy coloring -> layered schedule -> light-cone distance bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .code import DEFAULT_DISTANCE_CUTOFF, CssCode, distance_exact
from .hypergraph import Schedule, build_hypergraph, greedy_color, max_degree, schedule_from_coloring, verify_coloring
from .packing import greedy_pack
from .triples import CollectionStats, MagicFriendlyTriple, verify_magic_friendly

__all__ = [
    "STRATEGIES",
    "GatePattern",
    "FountainReport",
    "ScalingFit",
    "PipelineError",
    "gates_for_triple",
    "run_pipeline",
    "throughput_bound",
    "lightcone_distance_bound",
    "integer_distance_bound",
    "scaling_fit",
]

STRATEGIES = ("wirewise-full", "wirewise-intersection", "abstract-edge", "explicit")
GATE_ARITY = 3


class PipelineError(RuntimeError):
    """A stage produced output that violates the bound it is supposed to meet."""


@dataclass(frozen=True)
class GatePattern:
    """How one selected triple is expanded into CCZ gates.

    Every selected triple gets its own block of vertices.  For the wirewise
    strategies a block is three registers of ``n`` qubits (x on register 1,
    y on 2, z on 3); abstract-edge uses three vertices, one per logical
    operand; explicit uses ``explicit_vertex_count`` vertices and copies
    ``explicit_edges`` (1-based within the block) into each block.
    """

    strategy: str = "wirewise-full"
    n: int = 1
    explicit_edges: tuple[tuple[int, int, int], ...] | None = None
    explicit_vertex_count: int | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {STRATEGIES}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.strategy == "explicit":
            if self.explicit_edges is None or self.explicit_vertex_count is None:
                raise ValueError("explicit strategy needs explicit_edges and explicit_vertex_count")
            edges = tuple(tuple(int(v) for v in e) for e in self.explicit_edges)
            build_hypergraph(self.explicit_vertex_count, edges)  # validates
            object.__setattr__(self, "explicit_edges", edges)

    @property
    def registers_per_block(self) -> int:
        return 3

    @property
    def block_size(self) -> int:
        if self.strategy in ("wirewise-full", "wirewise-intersection"):
            return 3 * self.n
        if self.strategy == "abstract-edge":
            return 3
        return self.explicit_vertex_count

    @property
    def per_qubit_gate_bound(self) -> int:
        """Maximum number of gates any vertex of one block takes part in."""
        if self.strategy == "explicit":
            return max_degree(build_hypergraph(self.explicit_vertex_count, self.explicit_edges))
        return 1

    def to_dict(self) -> dict:
        d = {"strategy": self.strategy, "n": self.n}
        if self.strategy == "explicit":
            d["explicit_edges"] = [list(e) for e in self.explicit_edges]
            d["explicit_vertex_count"] = self.explicit_vertex_count
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GatePattern":
        edges = d.get("explicit_edges")
        return cls(
            strategy=d["strategy"],
            n=d["n"],
            explicit_edges=None if edges is None else tuple(tuple(e) for e in edges),
            explicit_vertex_count=d.get("explicit_vertex_count"),
        )


def gates_for_triple(
    triple: MagicFriendlyTriple, pattern: GatePattern, block_offset: int = 0
) -> list[tuple[int, int, int]]:
    """CCZ edges realizing one triple, shifted by ``block_offset`` vertices.

    Raises:
        ValueError: the triple length differs from ``pattern.n``.
    """
    n = pattern.n
    if triple.n != n:
        raise ValueError(f"triple has length {triple.n} but pattern expects n={n}")
    o = block_offset
    if pattern.strategy == "wirewise-full":
        coords: Iterable[int] = range(1, n + 1)
    elif pattern.strategy == "wirewise-intersection":
        coords = sorted(triple.x.support() & triple.y.support() & triple.z.support())
    elif pattern.strategy == "abstract-edge":
        return [(o + 1, o + 2, o + 3)]
    else:
        return [tuple(o + v for v in e) for e in pattern.explicit_edges]
    return [(o + i, o + n + i, o + 2 * n + i) for i in coords]


def throughput_bound(count: int, M, b, n: int) -> Fraction:
    """Guaranteed packing size ``count / (M b n)`` as an exact rational."""
    M, b = Fraction(M), Fraction(b)
    if M <= 0 or b <= 0 or n <= 0:
        raise ValueError("M, b and n must be positive")
    return Fraction(count) / (M * b * n)


def lightcone_distance_bound(d: int, q: int = GATE_ARITY, L: int = 0) -> Fraction:
    """Distance after a depth-``L`` circuit of ``q``-qubit gates is at least ``d / q**L``."""
    if d < 1 or q < 1 or L < 0:
        raise ValueError("need d >= 1, q >= 1, L >= 0")
    return Fraction(d, q**L)


def integer_distance_bound(bound: Fraction) -> int:
    """Smallest integer weight compatible with a rational lower bound (at least 1)."""
    return max(1, math.ceil(bound))


@dataclass(frozen=True)
class FountainReport:
    n: int
    k: int
    strategy: str
    input_count: int
    selected: list[int]
    selected_triples: list[list[str]]
    stats: CollectionStats
    throughput_lower_bound: Fraction
    vertex_count: int
    per_qubit_gate_bound: int
    delta: int
    palette_bound: int
    depth: int
    input_distance: int | None
    distance_lower_bound: Fraction | None
    distance_lower_bound_int: int | None
    schedule: Schedule

    @property
    def selected_count(self) -> int:
        return len(self.selected)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "strategy": self.strategy,
            "input_count": self.input_count,
            "selected_count": self.selected_count,
            "selected": list(self.selected),
            "selected_triples": [list(t) for t in self.selected_triples],
            "stats": self.stats.to_dict(),
            "throughput_lower_bound": str(self.throughput_lower_bound),
            "vertex_count": self.vertex_count,
            "per_qubit_gate_bound": self.per_qubit_gate_bound,
            "delta": self.delta,
            "palette_bound": self.palette_bound,
            "depth": self.depth,
            "input_distance": self.input_distance,
            "distance_lower_bound": None if self.distance_lower_bound is None else str(self.distance_lower_bound),
            "distance_lower_bound_int": self.distance_lower_bound_int,
            "schedule": self.schedule.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FountainReport":
        dlb = d["distance_lower_bound"]
        return cls(
            n=d["n"],
            k=d["k"],
            strategy=d["strategy"],
            input_count=d["input_count"],
            selected=list(d["selected"]),
            selected_triples=[list(t) for t in d["selected_triples"]],
            stats=CollectionStats.from_dict(d["stats"]),
            throughput_lower_bound=Fraction(d["throughput_lower_bound"]),
            vertex_count=d["vertex_count"],
            per_qubit_gate_bound=d["per_qubit_gate_bound"],
            delta=d["delta"],
            palette_bound=d["palette_bound"],
            depth=d["depth"],
            input_distance=d["input_distance"],
            distance_lower_bound=None if dlb is None else Fraction(dlb),
            distance_lower_bound_int=d["distance_lower_bound_int"],
            schedule=Schedule.from_dict(d["schedule"]),
        )

    def summary(self) -> str:
        dist = "unknown" if self.input_distance is None else str(self.input_distance)
        dlb = "unknown" if self.distance_lower_bound is None else str(self.distance_lower_bound)
        return "\n".join(
            [
                f"code: n={self.n} k={self.k}",
                f"strategy: {self.strategy}",
                f"triples: {self.input_count} input, {self.selected_count} selected "
                f"(guaranteed >= {self.throughput_lower_bound})",
                f"stats: a={self.stats.a} b={self.stats.b} M={self.stats.M}",
                f"hypergraph: {self.vertex_count} vertices, {len(self.schedule.edges())} gates, "
                f"delta={self.delta} (d0={self.per_qubit_gate_bound})",
                f"schedule: depth={self.depth} (bound 3*delta+1 = {self.palette_bound})",
                f"distance: d={dist}, after circuit >= {dlb}",
            ]
        )


def run_pipeline(
    code: CssCode,
    triples: Sequence[MagicFriendlyTriple],
    pattern: GatePattern | str | None = None,
    distance_cutoff: int = DEFAULT_DISTANCE_CUTOFF,
    input_distance: int | None = None,
) -> FountainReport:
    """Pack, expand, color and schedule a collection of magic-friendly triples.

    ``input_distance`` skips the brute-force distance computation when the
    caller already knows it.

    Raises:
        ValueError: empty input, or a triple that is not magic-friendly for
            ``code``.
        PipelineError: a stage bound (packing size, degree, palette) fails.
    """
    if not triples:
        raise ValueError("no triples to pack")
    if pattern is None:
        pattern = GatePattern("wirewise-full", code.n)
    elif isinstance(pattern, str):
        pattern = GatePattern(pattern, code.n)
    if pattern.n != code.n:
        raise ValueError(f"pattern n={pattern.n} does not match code n={code.n}")
    for idx, t in enumerate(triples):
        check = verify_magic_friendly(code, t.x, t.y, t.z)
        if not check.overall:
            raise ValueError(f"triple {idx} is not magic-friendly ({check.first_failure} fails)")

    # Step 1: disjoint subcollection
    packing = greedy_pack(triples, code.n)
    if len(packing.selected) < math.ceil(packing.guaranteed_lower_bound):
        raise PipelineError("packing is smaller than its guaranteed bound")

    # Step 2: gate expansion, one vertex block per selected triple
    block = pattern.block_size
    edges = []
    for j, idx in enumerate(packing.selected):
        edges.extend(gates_for_triple(triples[idx], pattern, block_offset=j * block))
    vertex_count = block * len(packing.selected)
    h = build_hypergraph(vertex_count, edges)
    delta = max_degree(h)
    per_vertex = max((h.degree(v) for v in range(1, vertex_count + 1)), default=0)
    d0 = pattern.per_qubit_gate_bound
    if delta != per_vertex or delta > d0:
        raise PipelineError(f"hypergraph degree {delta} exceeds per-qubit gate bound {d0}")

    # Step 3: coloring and layering
    coloring = greedy_color(h)
    check = verify_coloring(h, coloring)
    if not check.ok:
        raise PipelineError(f"greedy coloring failed verification: {check.violation}")
    schedule = schedule_from_coloring(h, coloring)
    schedule = Schedule(schedule.layers, schedule.vertex_count, pattern.registers_per_block * len(packing.selected))
    if schedule.depth > 3 * delta + 1:
        raise PipelineError(f"depth {schedule.depth} exceeds 3*delta+1")

    # Step 4: distance after the circuit
    if input_distance is None:
        input_distance = distance_exact(code, distance_cutoff).d
    if input_distance is not None:
        dlb = lightcone_distance_bound(input_distance, GATE_ARITY, schedule.depth)
        dlb_int = integer_distance_bound(dlb)
    else:
        dlb = dlb_int = None

    return FountainReport(
        n=code.n,
        k=code.k,
        strategy=pattern.strategy,
        input_count=len(triples),
        selected=list(packing.selected),
        selected_triples=[triples[i].to_json() for i in packing.selected],
        stats=packing.stats_used,
        throughput_lower_bound=packing.guaranteed_lower_bound,
        vertex_count=vertex_count,
        per_qubit_gate_bound=d0,
        delta=delta,
        palette_bound=3 * delta + 1,
        depth=schedule.depth,
        input_distance=input_distance,
        distance_lower_bound=dlb,
        distance_lower_bound_int=dlb_int,
        schedule=schedule,
    )


@dataclass(frozen=True)
class ScalingFit:
    """Power-law fit ``count = c1 * n**(1 + gamma)`` in log-log space."""

    points: list[tuple[int, float]]
    gamma_estimate: float
    c1_estimate: float
    residuals: list[float]

    @property
    def exponent(self) -> float:
        return 1.0 + self.gamma_estimate

    @property
    def beta(self) -> float:
        # throughput exponent equals gamma
        return self.gamma_estimate

    @property
    def satisfies_hypothesis(self) -> bool:
        return self.gamma_estimate > 0

    def to_dict(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "gamma": self.gamma_estimate,
            "c1": self.c1_estimate,
            "residuals": list(self.residuals),
            "satisfies_gamma_positive": self.satisfies_hypothesis,
        }


def scaling_fit(points: Sequence[tuple[int, float]]) -> ScalingFit:
    """Least-squares fit of log(count) against log(n).

    Raises:
        ValueError: fewer than three distinct ``n`` or a nonpositive value.
    """
    pts = [(int(n), float(c)) for n, c in points]
    if len({n for n, _ in pts}) < 3:
        raise ValueError("need at least three distinct n values")
    if any(n <= 0 or c <= 0 for n, c in pts):
        raise ValueError("n and counts must be positive")
    logn = np.log([n for n, _ in pts])
    logc = np.log([c for _, c in pts])
    A = np.column_stack([np.ones_like(logn), logn])
    (intercept, slope), *_ = np.linalg.lstsq(A, logc, rcond=None)
    resid = logc - (intercept + slope * logn)
    return ScalingFit(
        points=pts,
        gamma_estimate=float(slope - 1.0),
        c1_estimate=float(np.exp(intercept)),
        residuals=[float(r) for r in resid],
    )
