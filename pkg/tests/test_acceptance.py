"""Acceptance criteria 1-9.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary under "acceptance criteria".
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from cczfountain import (
    BitMatrix,
    BitVector,
    DiagonalCircuit,
    Hypergraph3,
    distance_exact,
    extract_logical_action,
    greedy_color,
    greedy_pack,
    lightcone_distance_bound,
    lightcone_support_check,
    max_degree,
    new_css,
    run_pipeline,
    scaling_fit,
    verify_magic_friendly,
    wirewise_circuit,
)
from tests import acceptance_log
from tests.conftest import BASE_TRIPLE, HAMMING, random_css, trivial_code
from tests.oracles import gate_by_gate_phase, naive_distance


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            raise AssertionError(f"runtime {elapsed:.2f}s exceeds {limit}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        budget = f" (limit {limit}s)" if limit is not None else ""
        acceptance_log.RESULTS.append(f"AC{number} {status}  {title}  [{elapsed:.3f}s{budget}]")


def wirewise_targets(n):
    return [g.targets for g in wirewise_circuit(n).gates]


def test_ac1_base_triple_triple():
    with criterion(1, "(0111, 1011, 1101) is magic-friendly on the trivial n=4 code", 1.0):
        code = trivial_code(4)
        x, y, z = (BitVector(s) for s in BASE_TRIPLE)
        res = verify_magic_friendly(code, x, y, z)
        assert res.in_code_space and res.independent and res.orthogonal and res.odd_overlap
        assert res.inner_products == (0, 0, 0)
        assert res.overlap == 1


def test_ac2_wirewise_phase_exhaustive():
    with criterion(2, "wirewise CCZ phase equals triple overlap on all 4680 cases, n<=4", 5.0):
        cases = 0
        for n in range(1, 5):
            targets = wirewise_targets(n)
            vecs = list(itertools.product((0, 1), repeat=n))
            for x, y, z in itertools.product(vecs, repeat=3):
                tau = sum(a & b & c for a, b, c in zip(x, y, z)) & 1
                assert gate_by_gate_phase(targets, list(x + y + z)) == tau
                cases += 1
        assert cases == 4680


def random_hypergraph(rng, max_vertices=60, max_delta=6):
    nv = rng.randint(3, max_vertices)
    target_delta = rng.randint(1, max_delta)
    deg = [0] * (nv + 1)
    edges = set()
    for _ in range(rng.randint(0, 4 * nv)):
        e = tuple(sorted(rng.sample(range(1, nv + 1), 3)))
        if e in edges or any(deg[v] >= target_delta for v in e):
            continue
        edges.add(e)
        for v in e:
            deg[v] += 1
    order = sorted(edges)
    rng.shuffle(order)
    return Hypergraph3(nv, order)


def test_ac3_coloring_suite():
    with criterion(3, "greedy coloring proper, <= 3*delta+1 colors, slack >= 4, 500 hypergraphs", 10.0):
        rng = random.Random(20240603)
        for _ in range(500):
            h = random_hypergraph(rng)
            delta = max_degree(h)
            assert delta <= 6
            col = greedy_color(h)
            for i, j in itertools.combinations(range(len(h.edges)), 2):
                if set(h.edges[i]) & set(h.edges[j]):
                    assert col.color_of[i] != col.color_of[j]
            assert max(col.color_of, default=0) <= 3 * delta + 1
            assert all(s >= 4 for s in col.slack)
            assert len(col.slack) == len(h.edges)


def random_support_collection(rng):
    n = rng.randint(6, 40)
    lo = rng.randint(1, max(1, n // 4))
    hi = rng.randint(lo, max(lo, n // 2))
    count = rng.randint(1, 60)
    sups = [frozenset(rng.sample(range(1, n + 1), rng.randint(lo, hi))) for _ in range(count)]
    return n, sups


def test_ac4_packing_suite():
    with criterion(4, "greedy packing disjoint, meets |S|/(M*b*n), removals <= M*b*n, 500 collections", 10.0):
        rng = random.Random(20240604)
        for _ in range(500):
            n, sups = random_support_collection(rng)
            sizes = [len(s) for s in sups]
            a, b = Fraction(min(sizes), n), Fraction(max(sizes), n)
            M = max(sum(i in s for s in sups) for i in range(1, n + 1))
            assert all(a * n <= len(s) <= b * n for s in sups)
            res = greedy_pack(sups, n, keep_trace=True)
            assert (res.stats_used.a, res.stats_used.b, res.stats_used.M) == (a, b, M)
            chosen = [sups[i] for i in res.selected]
            for s, t in itertools.combinations(chosen, 2):
                assert not s & t
            assert len(res.selected) >= Fraction(len(sups)) / (M * b * n)
            assert sum(len(r) for _, r in res.removal_trace) == len(sups)
            for _, removed in res.removal_trace:
                assert len(removed) <= M * b * n


def test_ac5_two_block_pipeline():
    with criterion(5, "two-block abstract-edge pipeline: selected 2, delta 1, depth <= 2", 1.0):
        from cczfountain import MagicFriendlyTriple

        code = trivial_code(8)
        triples = [
            MagicFriendlyTriple.from_strings("01110000", "10110000", "11010000"),
            MagicFriendlyTriple.from_strings("00000111", "00001011", "00001101"),
        ]
        rep = run_pipeline(code, triples, "abstract-edge")
        assert rep.selected_count == 2
        assert rep.delta == 1
        assert rep.depth <= 2


def random_layered_circuit(rng):
    nq = rng.randint(3, 8)
    L = rng.randint(1, 3)
    gates = []
    for layer in range(1, L + 1):
        free = list(range(1, nq + 1))
        rng.shuffle(free)
        while free:
            kind = rng.choice(["Z", "CZ", "CCZ", None])
            arity = {"Z": 1, "CZ": 2, "CCZ": 3, None: 1}[kind]
            if arity > len(free):
                break
            picked, free = free[:arity], free[arity:]
            if kind is not None:
                gates.append((kind, tuple(picked), layer))
    return DiagonalCircuit(nq, gates), L


def test_ac6_lightcone_suite():
    with criterion(6, "conjugated single-qubit error support inside light cone and <= 3^L, 200 circuits", 60.0):
        rng = random.Random(20240606)
        for _ in range(200):
            circuit, L = random_layered_circuit(rng)
            for q in range(1, circuit.qubit_count + 1):
                xr = lightcone_support_check(circuit, [q], "X")
                assert xr.support <= xr.cone
                assert len(xr.support) <= 3**L
                zr = lightcone_support_check(circuit, [q], "Z")
                assert zr.support == frozenset({q})


def test_ac7_distance_bookkeeping():
    with criterion(7, "exact distance (Steane 3, trivial 1, naive agreement n<=10); bound*3^L = d"):
        steane = new_css(BitMatrix(HAMMING), BitMatrix(HAMMING))
        assert distance_exact(steane).d == 3
        assert distance_exact(trivial_code(4)).d == 1
        rng = random.Random(20240607)
        shor_z = ["110000000", "011000000", "000110000", "000011000", "000000110", "000000011"]
        structured = [
            new_css(BitMatrix(HAMMING), BitMatrix(HAMMING)),
            new_css(BitMatrix(["1111"]), BitMatrix(["1111"])),
            new_css(BitMatrix(["111111"]), BitMatrix(["111111"])),
            new_css(BitMatrix(["111111000", "000111111"]), BitMatrix(shor_z)),
            new_css(BitMatrix(["1111111111"]), BitMatrix(["1100000000", "0011000000"])),
        ]
        for code in structured:
            sx = [v.to_array().tolist() for v in code.stabilizer_x_basis]
            sz = [v.to_array().tolist() for v in code.stabilizer_z_basis]
            dx, dz = naive_distance(sx, sz, code.n)
            rep = distance_exact(code)
            assert (rep.d_x, rep.d_z, rep.d) == (dx, dz, min(dx, dz))
        assert distance_exact(structured[3]).d == 3
        checked = 0
        while checked < 60:
            n = rng.randint(2, 10)
            code = random_css(rng, n, rng.randint(0, n // 2), rng.randint(0, n // 2))
            if code.k == 0:
                continue
            sx = [v.to_array().tolist() for v in code.stabilizer_x_basis]
            sz = [v.to_array().tolist() for v in code.stabilizer_z_basis]
            dx, dz = naive_distance(sx, sz, n)
            rep = distance_exact(code)
            assert (rep.d_x, rep.d_z, rep.d) == (dx, dz, min(dx, dz))
            checked += 1
        for d in range(1, 40):
            for L in range(0, 6):
                assert lightcone_distance_bound(d, 3, L) * 3**L == d


def test_ac8_logical_action():
    with criterion(8, "logical action restricted to (x,y,z) is CCZ, checked over all 2^12 labels", 10.0):
        code = trivial_code(4)
        x, y, z = (BitVector(s) for s in BASE_TRIPLE)
        circuit = wirewise_circuit(4)
        act = extract_logical_action(code, (x, y, z), circuit)
        assert act.matches_ccz
        reps = [[int(c) for c in r] for r in act.representatives]
        targets = [g.targets for g in circuit.gates]

        def rep_of(label):
            v = [0] * 4
            for j in range(4):
                if label >> j & 1:
                    v = [a ^ b for a, b in zip(v, reps[j])]
            return v

        for alpha, beta, gamma in itertools.product(range(16), repeat=3):
            e = gate_by_gate_phase(targets, rep_of(alpha) + rep_of(beta) + rep_of(gamma))
            assert act.truth_table[act.index(alpha, beta, gamma)] == e
            assert act.evaluate(alpha, beta, gamma) == e
        # restriction to {0,x} x {0,y} x {0,z}: a*b*c
        for a, b, c in itertools.product((0, 1), repeat=3):
            label = rep_of(a) + rep_of(b << 1) + rep_of(c << 2)
            assert gate_by_gate_phase(targets, label) == a * b * c


def test_ac9_scaling_fit():
    with criterion(9, "scaling fit recovers gamma = 0.5 +- 0.05 and flags gamma <= 0"):
        fit = scaling_fit([(n, 2 * n**1.5) for n in (64, 128, 256, 512)])
        assert abs(fit.gamma_estimate - 0.5) <= 0.05
        assert fit.satisfies_hypothesis
        for counts in ([5, 5, 5, 5], [3 * n for n in (64, 128, 256, 512)]):
            flat = scaling_fit(list(zip((64, 128, 256, 512), counts)))
            assert flat.gamma_estimate <= 1e-9
            assert not flat.satisfies_hypothesis
        with pytest.raises(ValueError):
            scaling_fit([(64, 1.0), (128, 2.0)])
