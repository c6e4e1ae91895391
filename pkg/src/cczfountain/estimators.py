"""Estimator-style wrappers so the pipeline stages compose with sklearn tooling.

Hyperparameters live in ``__init__``; fitted state ends in an underscore.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .code import DEFAULT_DISTANCE_CUTOFF
from .fountain import GatePattern, run_pipeline
from .hypergraph import Hypergraph3, greedy_color, max_degree, schedule_from_coloring
from .packing import greedy_pack
from .triples import SearchBudget, collection_stats, enumerate_triples, sample_triples
from .validation import check_css_code, check_triples, triples_to_array

__all__ = ["TripleFinder", "TriplePacker", "CCZScheduler", "FountainBuilder"]


class TripleFinder(BaseEstimator, TransformerMixin):
    """Find magic-friendly triples of a CSS code.

    ``fit`` runs the search; ``transform`` returns the triples as a
    ``(m, 3, n)`` uint8 array.
    """

    def __init__(self, search="enumerate", max_checks=2_000_000, stabilizer_shift=0, seed=0, attempts=10_000):
        self.search = search
        self.max_checks = max_checks
        self.stabilizer_shift = stabilizer_shift
        self.seed = seed
        self.attempts = attempts

    def fit(self, X, y=None):
        code = check_css_code(X, y)
        if self.search == "enumerate":
            res = enumerate_triples(
                code, SearchBudget(max_checks=self.max_checks, stabilizer_shift=self.stabilizer_shift)
            )
            self.triples_, self.truncated_ = res.triples, res.truncated
        elif self.search == "sample":
            self.triples_ = sample_triples(code, self.seed, self.attempts)
            self.truncated_ = False
        else:
            raise ValueError(f"unknown search mode {self.search!r}")
        self.code_ = code
        self.stats_ = collection_stats(self.triples_, code.n)
        return self

    def transform(self, X, y=None):
        check_is_fitted(self, "triples_")
        return triples_to_array(self.triples_)


class TriplePacker(BaseEstimator, TransformerMixin):
    """Greedy disjoint packing; ``transform`` keeps only the selected items."""

    def __init__(self, n=None):
        self.n = n

    def fit(self, X, y=None):
        triples = check_triples(X)
        if not triples:
            raise ValueError("cannot pack an empty collection")
        n = self.n if self.n is not None else triples[0].n
        self.result_ = greedy_pack(triples, n)
        self.selected_ = list(self.result_.selected)
        self.n_features_in_ = n
        return self

    def transform(self, X, y=None):
        check_is_fitted(self, "selected_")
        triples = check_triples(X, self.n_features_in_)
        return triples_to_array([triples[i] for i in self.selected_ if i < len(triples)])


class CCZScheduler(BaseEstimator):
    """Color a gate hypergraph and assign layers.

    ``X`` is an ``(m, 3)`` array of 1-based vertex triples.  ``predict``
    returns the layer of each given edge in the fitted schedule.
    """

    def __init__(self, vertex_count=None):
        self.vertex_count = vertex_count

    def fit(self, X, y=None):
        edges = np.asarray(X, dtype=int).reshape(-1, 3) if len(X) else np.zeros((0, 3), dtype=int)
        vc = self.vertex_count if self.vertex_count is not None else int(edges.max(initial=0))
        self.hypergraph_ = Hypergraph3(vc, edges.tolist())
        self.delta_ = max_degree(self.hypergraph_)
        self.coloring_ = greedy_color(self.hypergraph_)
        self.schedule_ = schedule_from_coloring(self.hypergraph_, self.coloring_)
        self.depth_ = self.schedule_.depth
        self._layer = {e: li for li, layer in enumerate(self.schedule_.layers, start=1) for e in layer}
        return self

    def predict(self, X):
        check_is_fitted(self, "schedule_")
        out = []
        for e in np.asarray(X, dtype=int).reshape(-1, 3):
            key = tuple(sorted(int(v) for v in e))
            if key not in self._layer:
                raise ValueError(f"edge {key} was not in the fitted hypergraph")
            out.append(self._layer[key])
        return np.array(out, dtype=int)


class FountainBuilder(BaseEstimator):
    """Full search -> pack -> schedule -> report run.

    ``fit(X, y=None, triples=None)`` takes a code in any form accepted by
    :func:`check_css_code`; supplying ``triples`` skips the search.
    """

    def __init__(
        self,
        strategy="wirewise-full",
        search="enumerate",
        max_checks=2_000_000,
        seed=0,
        attempts=10_000,
        distance_cutoff=DEFAULT_DISTANCE_CUTOFF,
    ):
        self.strategy = strategy
        self.search = search
        self.max_checks = max_checks
        self.seed = seed
        self.attempts = attempts
        self.distance_cutoff = distance_cutoff

    def fit(self, X, y=None, triples=None):
        code = check_css_code(X, y)
        if triples is None:
            finder = TripleFinder(self.search, self.max_checks, 0, self.seed, self.attempts).fit(code)
            triples = finder.triples_
        else:
            triples = check_triples(triples, code.n)
        if not triples:
            raise ValueError("no magic-friendly triples available")
        self.triples_ = triples
        self.report_ = run_pipeline(code, triples, GatePattern(self.strategy, code.n), self.distance_cutoff)
        self.schedule_ = self.report_.schedule
        return self
