"""File formats: code bundles, plain-text matrices, triples, schedules, DOT."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .code import CssCode
from .f2la import BitMatrix, BitVector
from .hypergraph import EdgeColoring, Hypergraph3, Schedule
from .triples import MagicFriendlyTriple

__all__ = [
    "InputError",
    "CodeBundle",
    "parse_matrix_text",
    "read_matrix_text",
    "format_matrix_text",
    "parse_bundle",
    "load_bundle",
    "load_code_files",
    "parse_triples",
    "dumps",
    "to_dot",
]

DOT_STYLES = ("solid", "dashed", "dotted", "bold")


class InputError(ValueError):
    """Malformed input file; the message carries the location."""


@dataclass
class CodeBundle:
    n: int
    s_x: list[list[int]]
    s_z: list[list[int]]
    name: str | None = None
    triples: list[MagicFriendlyTriple] | None = None

    def to_code(self) -> CssCode:
        return CssCode(BitMatrix(self.s_x, cols=self.n), BitMatrix(self.s_z, cols=self.n), name=self.name)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"n": self.n, "s_x": self.s_x, "s_z": self.s_z}
        if self.name is not None:
            d["name"] = self.name
        if self.triples is not None:
            d["triples"] = [t.to_json() for t in self.triples]
        return d


def _parse_row(tokens: Sequence[str], where: str) -> list[int]:
    if len(tokens) == 1 and len(tokens[0]) > 1:
        tokens = list(tokens[0])
    try:
        row = [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"{where}: expected 0/1 entries") from None
    if any(b not in (0, 1) for b in row):
        raise InputError(f"{where}: expected 0/1 entries")
    return row


def parse_matrix_text(text: str, source: str = "<text>") -> BitMatrix:
    """Parse ``rows cols`` followed by ``rows`` lines of 0/1 entries.

    Entries may be whitespace-separated or written as one 0/1 word.  Blank
    lines and ``#`` comments are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise InputError(f"{source}: empty matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise InputError(f"{source}:{lineno}: header must be 'rows cols'")
    nrows, ncols = int(parts[0]), int(parts[1])
    if ncols < 1:
        raise InputError(f"{source}:{lineno}: cols must be positive")
    body = lines[1:]
    if len(body) != nrows:
        raise InputError(f"{source}: header declares {nrows} rows, found {len(body)}")
    rows = []
    for lineno, line in body:
        row = _parse_row(line.split(), f"{source}:{lineno}")
        if len(row) != ncols:
            raise InputError(f"{source}:{lineno}: row has {len(row)} entries, expected {ncols}")
        rows.append(row)
    return BitMatrix(rows, cols=ncols)


def read_matrix_text(path: str | Path) -> BitMatrix:
    path = Path(path)
    return parse_matrix_text(path.read_text(), str(path))


def format_matrix_text(m: BitMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += [" ".join(str(b) for b in r) for r in m]
    return "\n".join(lines) + "\n"


def _as_vector(item, n: int, where: str) -> BitVector:
    try:
        v = BitVector(item if isinstance(item, str) else list(item))
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from None
    if v.n != n:
        raise InputError(f"{where}: length {v.n}, expected {n}")
    return v


def parse_triples(data: Any, n: int, source: str = "triples") -> list[MagicFriendlyTriple]:
    """Triples as a list of ``[x, y, z]`` with each entry a 0/1 string or list."""
    if not isinstance(data, list):
        raise InputError(f"{source}: expected a list of triples")
    out = []
    for i, t in enumerate(data, start=1):
        if not isinstance(t, (list, tuple)) or len(t) != 3:
            raise InputError(f"{source}[{i}]: a triple needs exactly three vectors")
        out.append(MagicFriendlyTriple(*(_as_vector(v, n, f"{source}[{i}]") for v in t)))
    return out


def parse_bundle(data: Any, source: str = "<bundle>") -> CodeBundle:
    if not isinstance(data, dict):
        raise InputError(f"{source}: expected a JSON object")
    for key in ("n", "s_x", "s_z"):
        if key not in data:
            raise InputError(f"{source}: missing key {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{source}: n must be a positive integer")
    mats = {}
    for key in ("s_x", "s_z"):
        rows = data[key]
        if not isinstance(rows, list):
            raise InputError(f"{source}: {key} must be a list of rows")
        parsed = []
        for i, r in enumerate(rows, start=1):
            where = f"{source}: {key} row {i}"
            if isinstance(r, str):
                r = list(r)
            if not isinstance(r, list):
                raise InputError(f"{where}: expected a list of 0/1")
            row = _parse_row([str(b) for b in r], where) if r else []
            if len(row) != n:
                raise InputError(f"{where}: length {len(row)}, expected n={n}")
            parsed.append(row)
        mats[key] = parsed
    triples = None
    if data.get("triples") is not None:
        triples = parse_triples(data["triples"], n, f"{source}: triples")
    return CodeBundle(n, mats["s_x"], mats["s_z"], data.get("name"), triples)


def load_bundle(path: str | Path) -> CodeBundle:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    return parse_bundle(data, str(path))


def load_code_files(sx_path: str | Path, sz_path: str | Path) -> CodeBundle:
    sx = read_matrix_text(sx_path)
    sz = read_matrix_text(sz_path)
    if sx.cols != sz.cols:
        raise InputError(f"{sx_path} has {sx.cols} columns but {sz_path} has {sz.cols}")
    return CodeBundle(sx.cols, sx.to_array().tolist(), sz.to_array().tolist())


def dumps(obj: Any) -> str:
    """Stable JSON text (sorted keys) so identical runs are byte-identical."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def to_dot(h: Hypergraph3, layer_of: Sequence[int] | None = None, name: str = "ccz") -> str:
    """Render each hyperedge as a labeled triangle.

    ``layer_of[i]`` is the 1-based layer (or color) of edge ``i``; it sets the
    label and cycles the line style.
    """
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(1, h.vertex_count + 1):
        lines.append(f"  {v};")
    for idx, (a, b, c) in enumerate(h.edges):
        layer = layer_of[idx] if layer_of is not None else None
        attrs = [f'label="e{idx + 1}' + (f' L{layer}"' if layer is not None else '"')]
        if layer is not None:
            attrs.append(f"style={DOT_STYLES[(layer - 1) % len(DOT_STYLES)]}")
        attr = ", ".join(attrs)
        for u, w in ((a, b), (b, c), (a, c)):
            lines.append(f"  {u} -- {w} [{attr}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def schedule_to_dot(schedule: Schedule) -> str:
    h = Hypergraph3(schedule.vertex_count, schedule.edges())
    layer_of = [li for li, layer in enumerate(schedule.layers, start=1) for _ in layer]
    return to_dot(h, layer_of)


def coloring_to_dot(h: Hypergraph3, coloring: EdgeColoring) -> str:
    return to_dot(h, list(coloring.color_of))
