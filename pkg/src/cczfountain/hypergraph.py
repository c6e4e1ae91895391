"""3-uniform hypergraphs of CCZ gates, greedy edge coloring and layering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Hypergraph3",
    "EdgeColoring",
    "Schedule",
    "ColoringVerification",
    "build_hypergraph",
    "max_degree",
    "greedy_color",
    "schedule_from_coloring",
    "verify_coloring",
]

Edge = tuple[int, int, int]


class Hypergraph3:
    """Vertices ``1..vertex_count`` and an ordered list of 3-vertex edges.

    Edges are stored sorted within themselves but in input order overall.
    """

    def __init__(self, vertex_count: int, edges: Iterable[Iterable[int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        stored: list[Edge] = []
        seen: dict[Edge, int] = {}
        for pos, e in enumerate(edges, start=1):
            verts = tuple(int(v) for v in e)
            if len(verts) != 3:
                raise ValueError(f"edge {pos} has {len(verts)} vertices, expected 3")
            if len(set(verts)) != 3:
                raise ValueError(f"edge {pos} repeats a vertex: {verts}")
            for v in verts:
                if not 1 <= v <= vertex_count:
                    raise ValueError(f"edge {pos} vertex {v} outside 1..{vertex_count}")
            key = tuple(sorted(verts))
            if key in seen:
                raise ValueError(f"edge {pos} duplicates edge {seen[key]}: {key}")
            seen[key] = pos
            stored.append(key)
        self.vertex_count = vertex_count
        self.edges: tuple[Edge, ...] = tuple(stored)
        self.incidence: dict[int, list[int]] = {}
        for idx, e in enumerate(self.edges):
            for v in e:
                self.incidence.setdefault(v, []).append(idx)

    def degree(self, v: int) -> int:
        return len(self.incidence.get(v, ()))

    def neighbors(self, edge_index: int) -> set[int]:
        """Indices of the other edges sharing a vertex with ``edge_index``."""
        out = set()
        for v in self.edges[edge_index]:
            out.update(self.incidence[v])
        out.discard(edge_index)
        return out

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Hypergraph3(vertex_count={self.vertex_count}, edges={list(self.edges)})"

    def to_dict(self) -> dict:
        return {"vertex_count": self.vertex_count, "edges": [list(e) for e in self.edges]}


def build_hypergraph(vertex_count: int, edges: Iterable[Iterable[int]]) -> Hypergraph3:
    return Hypergraph3(vertex_count, edges)


def max_degree(h: Hypergraph3) -> int:
    return max((len(ix) for ix in h.incidence.values()), default=0)


@dataclass(frozen=True)
class EdgeColoring:
    """Colors ``1..palette`` per edge index.

    ``slack`` records, for greedy output, how many colors of the
    ``3*delta + 1`` palette were still free when each edge was colored.
    """

    color_of: tuple[int, ...]
    palette: int
    slack: tuple[int, ...] | None = None

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for idx, c in enumerate(self.color_of):
            out.setdefault(c, []).append(idx)
        return out


def greedy_color(h: Hypergraph3) -> EdgeColoring:
    """Smallest-available-color greedy coloring in stored edge order."""
    bound = 3 * max_degree(h) + 1
    colors = [0] * len(h.edges)
    slack = []
    for idx in range(len(h.edges)):
        forbidden = {colors[j] for j in h.neighbors(idx) if colors[j]}
        slack.append(bound - len(forbidden))
        c = 1
        while c in forbidden:
            c += 1
        colors[idx] = c
    return EdgeColoring(tuple(colors), max(colors, default=0), tuple(slack))


@dataclass(frozen=True)
class ColoringVerification:
    ok: bool
    proper: bool
    within_palette: bool
    within_bound: bool
    violation: str | None

    def __bool__(self) -> bool:
        return self.ok


def verify_coloring(h: Hypergraph3, coloring: EdgeColoring) -> ColoringVerification:
    """Recheck properness and ``palette <= 3*delta + 1`` from scratch.

    The first violation found is described in ``violation``; a properness
    failure names the shared vertex.
    """
    if len(coloring.color_of) != len(h.edges):
        return ColoringVerification(False, False, False, False, "coloring length differs from edge count")
    delta = max_degree(h)
    in_palette = all(1 <= c <= coloring.palette for c in coloring.color_of)
    within_bound = coloring.palette <= 3 * delta + 1 or (not h.edges and coloring.palette == 0)
    violation = None
    proper = True
    for v in sorted(h.incidence):
        by_color: dict[int, int] = {}
        for idx in h.incidence[v]:
            c = coloring.color_of[idx]
            if c in by_color:
                proper = False
                violation = f"edges {by_color[c] + 1} and {idx + 1} share vertex {v} and color {c}"
                break
            by_color[c] = idx
        if not proper:
            break
    if violation is None and not in_palette:
        bad = next(i for i, c in enumerate(coloring.color_of) if not 1 <= c <= coloring.palette)
        violation = f"edge {bad + 1} color {coloring.color_of[bad]} outside 1..{coloring.palette}"
    if violation is None and not within_bound:
        violation = f"palette {coloring.palette} exceeds 3*{delta}+1 = {3 * delta + 1}"
    ok = proper and in_palette and within_bound
    return ColoringVerification(ok, proper, in_palette, within_bound, violation)


@dataclass(frozen=True)
class Schedule:
    """Layers of pairwise vertex-disjoint edges; empty color classes dropped."""

    layers: tuple[tuple[Edge, ...], ...]
    vertex_count: int
    register_count: int | None = None

    @property
    def depth(self) -> int:
        return len(self.layers)

    def edges(self) -> list[Edge]:
        return [e for layer in self.layers for e in layer]

    def to_dict(self) -> dict:
        return {
            "register_count": self.register_count,
            "vertex_count": self.vertex_count,
            "num_layers": self.depth,
            "layers": [[list(e) for e in layer] for layer in self.layers],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Schedule":
        layers = tuple(tuple(tuple(int(v) for v in e) for e in layer) for layer in d["layers"])
        if d.get("num_layers") is not None and d["num_layers"] != len(layers):
            raise ValueError(f"num_layers={d['num_layers']} but {len(layers)} layers given")
        vc = d.get("vertex_count")
        if vc is None:
            vc = max((v for layer in layers for e in layer for v in e), default=0)
        return cls(layers, int(vc), d.get("register_count"))


def schedule_from_coloring(h: Hypergraph3, coloring: EdgeColoring) -> Schedule:
    """Turn color classes into layers in increasing color order.

    Raises:
        ValueError: the coloring is not proper.
    """
    check = verify_coloring(h, coloring)
    if not (check.proper and len(coloring.color_of) == len(h.edges)):
        raise ValueError(f"improper coloring: {check.violation}")
    classes = coloring.classes()
    layers = tuple(tuple(h.edges[i] for i in classes[c]) for c in sorted(classes))
    return Schedule(layers, h.vertex_count)


def layer_of_edges(schedule: Schedule) -> dict[Edge, int]:
    """1-based layer index per edge."""
    return {e: li for li, layer in enumerate(schedule.layers, start=1) for e in layer}


def hypergraph_from_schedule(schedule: Schedule) -> Hypergraph3:
    return Hypergraph3(schedule.vertex_count, schedule.edges())
