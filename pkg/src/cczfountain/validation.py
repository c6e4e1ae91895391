"""Input coercion shared by the estimator classes."""

from __future__ import annotations

from typing import Any

import numpy as np

from .code import CssCode
from .f2la import BitMatrix, BitVector
from .formats import CodeBundle, parse_bundle
from .triples import MagicFriendlyTriple


def check_binary_matrix(X: Any, n_cols: int | None = None, name: str = "matrix") -> BitMatrix:
    """Coerce an array-like of 0/1 values (or a BitMatrix) to a BitMatrix."""
    if isinstance(X, BitMatrix):
        m = X
    else:
        arr = np.asarray(X)
        if arr.size == 0:
            if n_cols is None:
                raise ValueError(f"{name}: cannot infer column count of an empty matrix")
            return BitMatrix([], cols=n_cols)
        if arr.ndim != 2:
            raise ValueError(f"{name}: expected a 2-D array, got shape {arr.shape}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError(f"{name}: entries must be 0 or 1")
        m = BitMatrix(arr.astype(np.uint8))
    if n_cols is not None and m.cols != n_cols:
        raise ValueError(f"{name}: {m.cols} columns, expected {n_cols}")
    return m


def check_css_code(X: Any, y: Any = None) -> CssCode:
    """Accept a CssCode, a CodeBundle, a bundle dict, an ``(s_x, s_z)`` pair,
    or ``s_x`` with ``s_z`` passed as ``y``."""
    if isinstance(X, CssCode):
        return X
    if isinstance(X, CodeBundle):
        return X.to_code()
    if isinstance(X, dict):
        return parse_bundle(X).to_code()
    if y is None:
        if isinstance(X, (tuple, list)) and len(X) == 2:
            X, y = X
        else:
            raise ValueError("pass a CssCode, a bundle, or both stabilizer matrices")
    if isinstance(X, BitMatrix) or np.asarray(X).size:
        s_x = check_binary_matrix(X, name="s_x")
        s_z = check_binary_matrix(y, n_cols=s_x.cols, name="s_z")
    else:
        s_z = check_binary_matrix(y, name="s_z")
        s_x = BitMatrix([], cols=s_z.cols)
    return CssCode(s_x, s_z)


def check_triples(T: Any, n: int | None = None) -> list[MagicFriendlyTriple]:
    """Coerce triples, ``(m, 3, n)`` arrays, or lists of three 0/1 strings."""
    if isinstance(T, np.ndarray):
        if T.ndim != 3 or T.shape[1] != 3:
            raise ValueError(f"expected an array of shape (m, 3, n), got {T.shape}")
        T = [[row for row in t] for t in T]
    out = []
    for i, t in enumerate(T):
        if isinstance(t, MagicFriendlyTriple):
            trip = t
        else:
            vs = list(t)
            if len(vs) != 3:
                raise ValueError(f"triple {i} has {len(vs)} vectors")
            trip = MagicFriendlyTriple(*(v if isinstance(v, BitVector) else BitVector(v) for v in vs))
        if n is not None and trip.n != n:
            raise ValueError(f"triple {i} has length {trip.n}, expected {n}")
        out.append(trip)
    return out


def triples_to_array(triples: list[MagicFriendlyTriple]) -> np.ndarray:
    if not triples:
        return np.zeros((0, 3, 0), dtype=np.uint8)
    return np.stack([np.stack([v.to_array() for v in t]) for t in triples])
