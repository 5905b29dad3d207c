"""Command-line interface: ``zmsplines {gen,rank,mingen,verify,oracle}``.

Exit codes: 0 success/pass, 1 check failed, 2 usage or input error,
3 exhaustive oracle infeasible within the budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import constructions as cons
from .arith import SplineError, factorize
from .graph import complete_from_labels, r
from .io import gens_from_json, gens_to_dict, gens_to_json, graph_from_json, graph_to_dict, graph_to_json, parse_int
from .kernels import DEFAULT_BUDGET, OracleInfeasibleError
from .lattice import build_spline_lattice, flow_up_basis, module_invariants, spans
from .splines import violated_edge
from .verify import (
    check_flow_up_generators,
    check_minimum_criterion,
    enumerate_splines_array,
    oracle_invariants,
    leading_entry_audit,
)

logger = logging.getLogger("zmsplines")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3
GEN_KINDS = ("son-dec", "son-inc", "prime-power", "rank-one-pq", "pq-rank", "star-ext")
LEVELS = ("spline", "flowup", "spanning", "minimum")


class UsageError(SplineError):
    pass


def _int_list(text):
    return [parse_int(x) for x in text.split(",") if x.strip()]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} needs --{', --'.join(m.replace('_', '-') for m in missing)}")


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_graph(path):
    try:
        return graph_from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    kind = args.kind
    if kind in ("son-dec", "son-inc"):
        _need(args, "n", "m", "chain")
        ctx = factorize(parse_int(args.m))
        chain = _int_list(args.chain)
        if len(chain) == 1:
            chain = chain * r(args.n)
        build = cons.son_decreasing if kind == "son-dec" else cons.son_increasing
        g, gens = build(args.n, chain, ctx)
    elif kind == "prime-power":
        _need(args, "n", "p", "t", "exponents")
        p, t = parse_int(args.p), args.t
        ctx = factorize(p**t)
        if ctx.factorization != ((p, t),):
            raise UsageError(f"{p} is not prime")
        g = complete_from_labels(args.n, [p**e for e in _int_list(args.exponents)], ctx)
        gens = cons.prime_power_unordered(g, check_trails=args.check_trails)
    elif kind == "rank-one-pq":
        _need(args, "n", "p", "q")
        pa, qb = parse_int(args.p) ** args.alpha, parse_int(args.q) ** args.beta
        ctx = factorize(pa * qb)
        g = cons.rank_one_pq(args.n, pa, qb, ctx)
        gens = cons.flow_up_generating_set(g)
    elif kind == "pq-rank":
        _need(args, "n", "rank", "p", "q")
        p = parse_int(args.p)
        ctx = factorize(p * parse_int(args.q))
        g = cons.pq_rank(args.n, args.rank, ctx, p)
        gens = cons.flow_up_generating_set(g)
    else:
        _need(args, "graph", "mode")
        base = _read_graph(args.graph)
        g = cons.star_extension(base, args.mode, parse_int(args.p) if args.p is not None else None)
        gens = cons.flow_up_generating_set(g)
    cons.verify_members(g, gens)
    if args.json_out:
        Path(f"{args.json_out}.graph.json").write_text(graph_to_json(g))
        Path(f"{args.json_out}.gens.json").write_text(gens_to_json(gens))
        print(f"wrote {args.json_out}.graph.json {args.json_out}.gens.json")
    else:
        sys.stdout.write(json.dumps({"graph": graph_to_dict(g), "generating_set": gens_to_dict(gens)}, indent=2) + "\n")
    return EXIT_OK


def cmd_rank(args) -> int:
    g = _read_graph(args.graph)
    lat = build_spline_lattice(g)
    inv = module_invariants(lat)
    if args.check_trails:
        flow_up_basis(lat, cross_check=True, use_trails=True)
    factors = " ".join(str(f) for f in inv.factors)
    print(f"rank {inv.rank}")
    print(f"invariant factors: {factors}")
    if args.json_out:
        _write(args.json_out, json.dumps({"rank": inv.rank, "invariant_factors": [str(f) for f in inv.factors]}, indent=2) + "\n")
    return EXIT_OK


def cmd_mingen(args) -> int:
    g = _read_graph(args.graph)
    if args.check_trails:
        flow_up_basis(build_spline_lattice(g), cross_check=True, use_trails=True)
    gens = cons.minimum_generating_set(g, check_trails=args.check_trails)
    _write(args.json_out, gens_to_json(gens))
    if gens.certificate == cons.GENERATING_ONLY:
        print(f"rank {gens.rank}, not minimum: flow-up set has {len(gens)} members", file=sys.stderr)
    return EXIT_OK


def _verify_levels(g, gens, level) -> list[tuple[str, bool, str]]:
    results = []
    for f in gens.splines:
        edge = violated_edge(g, f)
        if edge is not None:
            u, v = edge
            results.append(("spline", False, f"{list(f)} violates edge v{u}v{v} (label {g.label(u, v)})"))
            return results
    results.append(("spline", True, f"{len(gens)} splines"))
    if level == "spline":
        return results
    if level == "flowup":
        chk = check_flow_up_generators(g, gens.splines)
        results.append(("flowup", chk.ok, chk.reason))
        return results
    lat = build_spline_lattice(g)
    spanning = spans(lat, gens.splines)
    results.append(("spanning", spanning, "spans the module" if spanning else "does not span the module"))
    if level == "spanning" or not spanning:
        return results
    rank = module_invariants(lat).rank
    crit = check_minimum_criterion(gens.splines, g.ctx)
    if crit.ok:
        results.append(("minimum", True, f"criterion holds: {crit.details['chain']}"))
    elif len(gens) == rank:
        results.append(("minimum", True, f"size {len(gens)} equals rank {rank}"))
    else:
        results.append(("minimum", False, f"{crit.reason}; size {len(gens)} exceeds rank {rank}"))
    return results


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    try:
        gens = gens_from_json(Path(args.set).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.set}: {exc.strerror}") from exc
    results = _verify_levels(g, gens, args.level)
    ok = all(passed for _, passed, _ in results)
    for name, passed, msg in results:
        print(f"{name}: {'pass' if passed else 'FAIL'} - {msg}")
    if args.json_out:
        payload = {"pass": ok, "checks": [{"level": n, "pass": p, "message": m} for n, p, m in results]}
        _write(args.json_out, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    try:
        rows = enumerate_splines_array(g, args.budget)
        delta = oracle_invariants(g, rows=rows)
    except OracleInfeasibleError as exc:
        report = {"status": "infeasible", "budget": args.budget, "visited": exc.visited, "message": str(exc)}
        print(json.dumps(report, indent=2))
        return EXIT_INFEASIBLE
    oracle = sum(1 for d in delta if d != g.m)
    lattice = module_invariants(build_spline_lattice(g)).rank
    violations = leading_entry_audit(g, rows, use_trails=args.check_trails)
    report = {
        "status": "ok",
        "splines": len(rows),
        "oracle_rank": oracle,
        "lattice_rank": lattice,
        "ranks_agree": oracle == lattice,
        "thm_min_violations": len(violations),
    }
    text = json.dumps(report, indent=2) + "\n"
    _write(args.json_out, text)
    agree = f"ranks agree: {oracle}" if oracle == lattice else f"ranks DISAGREE: oracle {oracle}, lattice {lattice}"
    print(f"{agree}; splines: {len(rows)}; thm-min violations: {len(violations)}", file=sys.stderr)
    return EXIT_OK if oracle == lattice and not violations else EXIT_FAIL


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-out", metavar="PATH", help="write JSON output here (gen: path prefix)")
    common.add_argument("--check-trails", action="store_true", help="cross-check path lcms against full trail enumeration")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration node cap (default 10^7)")

    parser = argparse.ArgumentParser(prog="zmsplines", description="Generalized spline modules over Z/mZ.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="build a labeled complete graph and its generating set")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--n", type=int)
    gen.add_argument("--m", help="modulus, e.g. 1180980000000 or 2^8*3^10*5^7")
    gen.add_argument("--chain", help="comma-separated chain labels a_1..a_{r_n} (one value repeats)")
    gen.add_argument("--p")
    gen.add_argument("--q")
    gen.add_argument("--alpha", type=int, default=1)
    gen.add_argument("--beta", type=int, default=1)
    gen.add_argument("--t", type=int, help="exponent of the prime-power modulus p^t")
    gen.add_argument("--exponents", help="comma-separated label exponents in canonical edge order")
    gen.add_argument("--rank", type=int, help="target rank for pq-rank")
    gen.add_argument("--graph", help="base K_n graph file for star-ext")
    gen.add_argument("--mode", choices=("all_p", "one_q"))
    gen.set_defaults(func=cmd_gen)

    rank = sub.add_parser("rank", parents=[common], help="print rank and invariant factors")
    rank.add_argument("graph")
    rank.set_defaults(func=cmd_rank)

    mingen = sub.add_parser("mingen", parents=[common], help="emit a (certified) generating set")
    mingen.add_argument("graph")
    mingen.set_defaults(func=cmd_mingen)

    verify = sub.add_parser("verify", parents=[common], help="check a generating set against a graph")
    verify.add_argument("graph")
    verify.add_argument("set")
    verify.add_argument("--level", choices=LEVELS, default="minimum")
    verify.set_defaults(func=cmd_verify)

    oracle = sub.add_parser("oracle", parents=[common], help="exhaustive enumeration cross-checks")
    oracle.add_argument("graph")
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except OracleInfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SplineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
