"""Naive reference computations, written without the library's linear algebra."""

import itertools


def bits(s):
    return [int(c) for c in s]


def span_set(rows, n):
    """Every GF(2) combination of the rows, as tuples."""
    out = {tuple([0] * n)}
    for r in rows:
        out |= {tuple((a + b) % 2 for a, b in zip(v, r)) for v in out}
    return out


def dot(u, v):
    return sum(a * b for a, b in zip(u, v)) % 2


def all_vectors(n):
    return itertools.product((0, 1), repeat=n)


def naive_distance(s_x, s_z, n):
    """(d_x, d_z) by scanning all 2^n vectors."""
    cx = span_set(s_x, n)
    cz = span_set(s_z, n)

    def side(checks, stab):
        best = None
        for v in all_vectors(n):
            if any(dot(v, r) for r in checks):
                continue
            if v in stab:
                continue
            w = sum(v)
            best = w if best is None else min(best, w)
        return best

    return side(s_z, cx), side(s_x, cz)


def naive_rank(rows, n):
    return len(span_set(rows, n)).bit_length() - 1


def naive_independent_mod(vs, sub, n):
    """No nonzero combination of vs lies in span(sub)."""
    stab = span_set(sub, n)
    for coeffs in itertools.product((0, 1), repeat=len(vs)):
        if not any(coeffs):
            continue
        acc = [0] * n
        for c, v in zip(coeffs, vs):
            if c:
                acc = [(a + b) % 2 for a, b in zip(acc, v)]
        if tuple(acc) in stab:
            return False
    return True


def naive_magic_friendly_set(n, s_x=(), s_z=()):
    """Canonical (sorted string) triples passing all conditions, over all ordered triples."""
    space = [v for v in all_vectors(n) if not any(dot(v, r) for r in s_z)]
    out = set()
    for x, y, z in itertools.product(space, repeat=3):
        if dot(x, y) or dot(x, z) or dot(y, z):
            continue
        if sum(a * b * c for a, b, c in zip(x, y, z)) % 2 != 1:
            continue
        if not naive_independent_mod([x, y, z], list(s_x), n):
            continue
        out.add(tuple(sorted("".join(map(str, v)) for v in (x, y, z))))
    return out


def gate_by_gate_phase(gates, label):
    """Phase exponent: product of target bits per gate, summed mod 2."""
    e = 0
    for targets in gates:
        p = 1
        for t in targets:
            p *= label[t - 1]
        e += p
    return e % 2
