"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 no triples
found for the pipeline.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from .code import DEFAULT_DISTANCE_CUTOFF, CommutationError, distance_exact
from .f2la import BitVector
from .fountain import STRATEGIES, GatePattern, PipelineError, run_pipeline, scaling_fit
from .formats import (
    InputError,
    dumps,
    load_bundle,
    load_code_files,
    parse_triples,
    schedule_to_dot,
    to_dot,
)
from .hypergraph import Hypergraph3, Schedule, greedy_color, schedule_from_coloring, verify_coloring
from .packing import greedy_pack, verify_packing
from .phaseverify import (
    DEFAULT_LABEL_CUTOFF,
    DiagonalCircuit,
    EnumerationCutoffError,
    check_coset_constancy,
    check_wirewise_phase,
    extract_logical_action,
    wirewise_circuit,
)
from .triples import SearchBudget, enumerate_triples, sample_triples, verify_magic_friendly

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NO_TRIPLES = 0, 1, 2, 3
DEFAULT_SEED = 20240601


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None


def _load_bundle(args):
    if args.sx or args.sz:
        if not (args.sx and args.sz):
            raise CliError("--sx and --sz must be given together")
        return load_code_files(args.sx, args.sz)
    if not args.code:
        raise CliError("give a JSON code bundle or --sx/--sz text files")
    return load_bundle(args.code)


def _load_code(args):
    bundle = _load_bundle(args)
    return bundle, bundle.to_code()


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _triple_arg(values, n):
    return parse_triples([values], n, "--triple")[0]


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    bundle, code = _load_code(args)
    payload = {
        "valid": True,
        "name": bundle.name,
        "n": code.n,
        "k": code.k,
        "rank_s_x": code.rank_x,
        "rank_s_z": code.rank_z,
        "max_row_weight": {"s_x": code.s_x.max_row_weight(), "s_z": code.s_z.max_row_weight()},
        "max_col_weight": {"s_x": code.s_x.max_col_weight(), "s_z": code.s_z.max_col_weight()},
    }
    text = (
        f"valid, n={code.n}, k={code.k}\n"
        f"max row weight: s_x={payload['max_row_weight']['s_x']} s_z={payload['max_row_weight']['s_z']}\n"
        f"max col weight: s_x={payload['max_col_weight']['s_x']} s_z={payload['max_col_weight']['s_z']}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_logicals(args) -> int:
    _, code = _load_code(args)
    xs = [str(v) for v in code.logical_x_basis]
    zs = [str(v) for v in code.logical_z_basis]
    _emit(args, {"n": code.n, "k": code.k, "logical_x": xs, "logical_z": zs},
          f"k={code.k}\nX logicals:\n" + "\n".join(xs) + "\nZ logicals:\n" + "\n".join(zs))
    return EXIT_OK


def cmd_distance(args) -> int:
    _, code = _load_code(args)
    rep = distance_exact(code, args.cutoff)
    payload = {"d_x": rep.d_x, "d_z": rep.d_z, "d": rep.d, "method": rep.method}
    fmt = lambda v: "unknown" if v is None else str(v)  # noqa: E731
    _emit(args, payload, f"d={fmt(rep.d)} (d_x={fmt(rep.d_x)}, d_z={fmt(rep.d_z)}; {rep.method})")
    return EXIT_OK


def _search(code, args):
    if args.search == "sample":
        found = sample_triples(code, args.seed, args.attempts)
        return found, False
    res = enumerate_triples(code, SearchBudget(max_checks=args.budget, stabilizer_shift=args.shift))
    return res.triples, res.truncated


def cmd_triples_search(args) -> int:
    _, code = _load_code(args)
    found, truncated = _search(code, args)
    payload = {"count": len(found), "truncated": truncated, "triples": [t.to_json() for t in found]}
    lines = [f"{len(found)} magic-friendly triples" + (" (truncated)" if truncated else "")]
    lines += [" ".join(t.to_json()) for t in found]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_triples_verify(args) -> int:
    bundle, code = _load_code(args)
    if args.triple:
        triples = [_triple_arg(args.triple, code.n)]
    elif args.triples:
        triples = parse_triples(_load_json(args.triples), code.n, args.triples)
    elif bundle.triples:
        triples = bundle.triples
    else:
        raise CliError("give --triple X Y Z, --triples FILE, or a bundle with triples")
    reports = [verify_magic_friendly(code, *t).to_dict() for t in triples]
    ok = all(r["overall"] for r in reports)
    lines = []
    for r in reports:
        status = "magic-friendly" if r["overall"] else f"FAIL ({r['first_failure']})"
        lines.append(f"{' '.join(r['representatives'])}: {status}; inner={r['inner_products']} tau={r['triple_overlap']}")
    _emit(args, {"all_pass": ok, "reports": reports}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _collection_from_json(data, n_flag):
    # {"n": .., "triples": [...]} or {"n": .., "supports": [[...], ...]}
    if isinstance(data, dict):
        n = data.get("n", n_flag)
        if n is None:
            raise CliError("collection needs n")
        if "supports" in data:
            return [frozenset(s) for s in data["supports"]], n
        return parse_triples(data.get("triples"), n), n
    if n_flag is None:
        raise CliError("--n is required for a bare list")
    return parse_triples(data, n_flag), n_flag


def cmd_pack(args) -> int:
    collection, n = _collection_from_json(_load_json(args.collection), args.n)
    if not collection:
        raise CliError("empty collection")
    res = greedy_pack(collection, n)
    check = verify_packing(collection, res.selected, n)
    payload = res.to_dict()
    payload["verified"] = check.ok
    _emit(args, payload,
          f"selected {len(res.selected)} of {len(collection)} (guaranteed >= {res.guaranteed_lower_bound}): "
          f"{res.selected}\nverified: {check.ok}")
    return EXIT_OK if check.ok else EXIT_FAIL


def _hypergraph_from_json(data) -> Hypergraph3:
    if "layers" in data:
        s = Schedule.from_dict(data)
        return Hypergraph3(s.vertex_count, s.edges())
    return Hypergraph3(data["vertex_count"], data["edges"])


def cmd_color(args) -> int:
    h = _hypergraph_from_json(_load_json(args.hypergraph))
    col = greedy_color(h)
    check = verify_coloring(h, col)
    payload = {"palette": col.palette, "colors": list(col.color_of), "verified": check.ok,
               "violation": check.violation}
    _emit(args, payload, f"palette {col.palette}: {list(col.color_of)}\nverified: {check.ok}")
    return EXIT_OK if check.ok else EXIT_FAIL


def cmd_schedule(args) -> int:
    h = _hypergraph_from_json(_load_json(args.hypergraph))
    col = greedy_color(h)
    check = verify_coloring(h, col)
    if not check.ok:
        raise CliError(f"coloring failed: {check.violation}", EXIT_FAIL)
    sched = schedule_from_coloring(h, col)
    lines = [f"depth {sched.depth}"] + [
        f"layer {i}: " + " ".join(f"({a},{b},{c})" for a, b, c in layer)
        for i, layer in enumerate(sched.layers, start=1)
    ]
    _emit(args, sched.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_pipeline(args) -> int:
    bundle, code = _load_code(args)
    if args.triples:
        triples = parse_triples(_load_json(args.triples), code.n, args.triples)
    elif bundle.triples:
        triples = bundle.triples
    else:
        if code.k < 3:
            raise CliError(f"no triples: code has k={code.k} < 3 logical qubits", EXIT_NO_TRIPLES)
        triples, _ = _search(code, args)
    if not triples:
        raise CliError("no triples: search exhausted without finding a magic-friendly triple", EXIT_NO_TRIPLES)
    try:
        report = run_pipeline(code, triples, GatePattern(args.strategy, code.n), distance_cutoff=args.cutoff)
    except PipelineError as exc:
        raise CliError(str(exc), EXIT_FAIL) from None
    _emit(args, report.to_dict(), report.summary())
    return EXIT_OK


def cmd_export_dot(args) -> int:
    data = _load_json(args.input)
    if "layers" in data:
        out = schedule_to_dot(Schedule.from_dict(data))
    elif "schedule" in data:
        out = schedule_to_dot(Schedule.from_dict(data["schedule"]))
    elif "edges" in data:
        h = Hypergraph3(data["vertex_count"], data["edges"])
        colors = data.get("colors")
        if colors is None:
            colors = greedy_color(h).color_of
        out = to_dot(h, colors)
    else:
        raise CliError(f"{args.input}: expected a schedule or hypergraph JSON")
    sys.stdout.write(out)
    return EXIT_OK


def cmd_verify_phase(args) -> int:
    if args.mode == "exhaustive":
        failures = 0
        cases = 0
        for n in range(1, args.max_n + 1):
            for xv, yv, zv in itertools.product(range(1 << n), repeat=3):
                cases += 1
                vs = [BitVector.from_int(v, n) for v in (xv, yv, zv)]
                if not check_wirewise_phase(*vs).ok:
                    failures += 1
        _emit(args, {"cases": cases, "failures": failures},
              f"{cases} cases, {failures} failures")
        return EXIT_OK if failures == 0 else EXIT_FAIL
    if args.mode == "wirewise":
        if not args.triple:
            raise CliError("wirewise mode needs --triple X Y Z")
        xs = [BitVector(s) for s in args.triple]
        chk = check_wirewise_phase(*xs)
        _emit(args, {"ok": chk.ok, "exponent": chk.exponent, "triple_overlap": chk.overlap},
              f"phase exponent {chk.exponent}, tau {chk.overlap}: {'agree' if chk.ok else 'DISAGREE'}")
        return EXIT_OK if chk.ok else EXIT_FAIL
    # logical
    bundle, code = _load_code(args)
    if args.triple:
        triple = _triple_arg(args.triple, code.n)
    elif bundle.triples:
        triple = bundle.triples[0]
    else:
        raise CliError("logical mode needs --triple X Y Z or a bundle with triples")
    if args.circuit:
        circuit = DiagonalCircuit.from_dict(_load_json(args.circuit))
    else:
        circuit = wirewise_circuit(code.n)
    const = check_coset_constancy(code, triple, circuit, args.label_cutoff)
    payload = {"constancy": const.to_dict()}
    lines = [f"coset constancy: {const.status}"]
    ok = const.constant
    if const.constant:
        try:
            action = extract_logical_action(code, triple, circuit, args.label_cutoff)
        except EnumerationCutoffError as exc:
            raise CliError(str(exc), EXIT_FAIL) from None
        payload["logical_action"] = action.to_dict()
        ok = action.matches_ccz
        lines.append(f"restriction to target directions: {action.restricted_monomials} "
                     f"({'CCZ' if action.matches_ccz else 'not CCZ'})")
        lines.append(f"spectator terms: {len(action.spectator_terms)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scaling_fit(args) -> int:
    pts = []
    if args.points:
        pts = [tuple(p) for p in _load_json(args.points)]
    if args.point:
        pts += [(int(n), float(c)) for n, c in args.point]
    try:
        fit = scaling_fit(pts)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    flag = "" if fit.satisfies_hypothesis else " (gamma <= 0: hypothesis violated)"
    _emit(args, fit.to_dict(), f"gamma={fit.gamma_estimate:.6g} c1={fit.c1_estimate:.6g}{flag}")
    return EXIT_OK if fit.satisfies_hypothesis else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def _add_common(p, code=True):
    p.add_argument("--format", choices=("text", "json"), default="text")
    if code:
        p.add_argument("code", nargs="?", help="JSON code bundle {n, s_x, s_z}")
        p.add_argument("--sx", help="plain-text s_x matrix file")
        p.add_argument("--sz", help="plain-text s_z matrix file")


def _add_search(p):
    p.add_argument("--search", choices=("enumerate", "sample"), default="enumerate")
    p.add_argument("--budget", type=int, default=2_000_000, help="max candidate triples checked")
    p.add_argument("--shift", type=int, default=0, help="stabilizer-shift weight for enumeration")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--attempts", type=int, default=10_000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cczfountain", description="CCZ magic-state fountain toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a CSS code and print n, k, weights")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("logicals", help="print logical X and Z bases")
    _add_common(p)
    p.set_defaults(func=cmd_logicals)

    p = sub.add_parser("distance", help="exact distance by enumeration")
    _add_common(p)
    p.add_argument("--cutoff", type=int, default=DEFAULT_DISTANCE_CUTOFF)
    p.set_defaults(func=cmd_distance)

    tp = sub.add_parser("triples", help="search or verify magic-friendly triples")
    tsub = tp.add_subparsers(dest="triples_command", required=True)
    p = tsub.add_parser("search")
    _add_common(p)
    _add_search(p)
    p.set_defaults(func=cmd_triples_search)
    p = tsub.add_parser("verify")
    _add_common(p)
    p.add_argument("--triple", nargs=3, metavar=("X", "Y", "Z"))
    p.add_argument("--triples", help="JSON list of [x, y, z]")
    p.set_defaults(func=cmd_triples_verify)

    p = sub.add_parser("pack", help="greedy disjoint packing of a triple collection")
    _add_common(p, code=False)
    p.add_argument("collection", help="JSON {n, triples} or {n, supports}")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_pack)

    for name, func, helptext in (
        ("color", cmd_color, "greedy edge coloring of a hypergraph"),
        ("schedule", cmd_schedule, "layered CCZ schedule from a hypergraph"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p, code=False)
        p.add_argument("hypergraph", help="JSON {vertex_count, edges}")
        p.set_defaults(func=func)

    p = sub.add_parser("pipeline", help="search, pack, schedule and report")
    _add_common(p)
    _add_search(p)
    p.add_argument("--strategy", choices=STRATEGIES[:3], default="wirewise-full")
    p.add_argument("--triples", help="JSON list of [x, y, z]; skips the search")
    p.add_argument("--cutoff", type=int, default=DEFAULT_DISTANCE_CUTOFF)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("export-dot", help="DOT rendering of a schedule or hypergraph")
    p.add_argument("input", help="schedule, pipeline report, or hypergraph JSON")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("verify-phase", help="phase oracles")
    p.add_argument("mode", choices=("exhaustive", "wirewise", "logical"))
    _add_common(p)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--triple", nargs=3, metavar=("X", "Y", "Z"))
    p.add_argument("--circuit", help="JSON diagonal circuit on 3n qubits (default wirewise-full)")
    p.add_argument("--label-cutoff", type=int, default=DEFAULT_LABEL_CUTOFF)
    p.set_defaults(func=cmd_verify_phase)

    p = sub.add_parser("scaling-fit", help="fit count = c1 n^(1+gamma)")
    _add_common(p, code=False)
    p.add_argument("points", nargs="?", help="JSON list of [n, count]")
    p.add_argument("--point", nargs=2, action="append", metavar=("N", "COUNT"))
    p.set_defaults(func=cmd_scaling_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CommutationError as exc:
        print(f"error: invalid code: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
