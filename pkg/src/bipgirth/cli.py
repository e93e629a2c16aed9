"""Single batch CLI exposing every pipeline with reproducible seeds.

Exit codes: 0 success, 3 absent / failed verification, 2 usage or input
errors, 1 internal errors.  All randomness flows from one --seed flag;
components derive their own sub-streams, so identical inputs, flags and seed
give byte-identical artifacts and reports apart from the wall-time counter.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import detect, generate, girth6, regularize, sparsify
from .errors import BipgirthError, GraphFormatError, ParameterError
from .graph import (
    BipartiteGraph,
    Side,
    average_degree,
    degree_stats,
    graph_to_text,
    induced_subgraph,
    is_r_regular_side,
    parse_graph,
    parse_selection,
    write_selection,
)
from .report import (
    OUTCOME_ABSENT,
    OUTCOME_ERROR,
    OUTCOME_SUCCESS,
    dump_report,
    make_report,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_ABSENT = 3


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_graph(path: str) -> BipartiteGraph:
    return parse_graph(Path(path).read_text())


def _emit_report(args, report: dict[str, Any]) -> None:
    text = dump_report(report)
    if getattr(args, "report", None):
        Path(args.report).write_text(text)
    elif getattr(args, "report_to_stdout", False):
        sys.stdout.write(text)


def _selection_to_file(sel, path: str) -> None:
    import io

    buf = io.StringIO()
    write_selection(sel, buf)
    _write_text(path, buf.getvalue())


def witness_to_json(w: detect.BicliqueWitness) -> dict[str, Any]:
    return {
        "sideInA": list(w.side_in_a),
        "sideInB": list(w.side_in_b),
        "s": w.s,
        "t": w.t,
        "sSide": w.s_side.value,
    }


def witness_from_json(data: dict[str, Any]) -> detect.BicliqueWitness:
    try:
        return detect.BicliqueWitness(
            tuple(data["sideInA"]),
            tuple(data["sideInB"]),
            int(data["s"]),
            int(data["t"]),
            Side(data["sSide"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise GraphFormatError(f"bad witness JSON: {exc}") from exc


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _degrees_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad degree list: {text!r}") from exc


# ----------------------------------------------------------------------------
# gen
# ----------------------------------------------------------------------------


def cmd_gen(args) -> int:
    t0 = time.perf_counter()
    seed = generate.Seed(args.seed)
    audits: list[tuple[str, bool]] = []
    blocks = None
    if args.generator == "complete":
        g = generate.gen_complete(args.s, args.t)
        params = {"generator": "complete", "s": args.s, "t": args.t}
    elif args.generator == "random":
        g = generate.gen_random(args.na, args.nb, args.p, seed)
        params = {"generator": "random", "na": args.na, "nb": args.nb, "p": args.p}
    elif args.generator == "biregular":
        g = generate.gen_biregular(args.na, args.nb, args.dega, seed)
        params = {
            "generator": "biregular",
            "na": args.na,
            "nb": args.nb,
            "dega": args.dega,
        }
        audits.append(("a_side_regular", is_r_regular_side(g, Side.A, None, args.dega)))
        deg_b = args.na * args.dega // args.nb
        audits.append(("b_side_regular", is_r_regular_side(g, Side.B, None, deg_b)))
    elif args.generator == "pg":
        g = generate.gen_projective_incidence(args.q)
        params = {"generator": "pg", "q": args.q}
        audits.append(("regular_q_plus_1", is_r_regular_side(g, Side.A, None, args.q + 1)))
        audits.append(("girth_6", detect.girth(g) == 6))
    else:  # nbr-regular
        spec = generate.NeighbourhoodRegularSpec(args.r, args.degrees, args.asize)
        g, blocks = generate.gen_neighbourhood_regular(spec, seed)
        params = {
            "generator": "nbr-regular",
            "r": args.r,
            "degrees": list(args.degrees),
            "asize": args.asize,
        }
        audits.append(("a_side_regular", is_r_regular_side(g, Side.A, None, args.r)))
        block_ok = all(
            len(g.adj_b[b]) == d
            for d, block in zip(args.degrees, blocks)
            for b in block
        )
        audits.append(("block_degrees", block_ok))

    _write_text(args.out, graph_to_text(g))
    payloads = {"graph": args.out}
    if blocks is not None:
        blocks_path = args.blocks_out or (
            args.out + ".blocks" if args.out != "-" else "-"
        )
        lines = [
            f"block {i} {b}\n" for i, block in enumerate(blocks) for b in block
        ]
        _write_text(blocks_path, "".join(lines))
        payloads["blocks"] = blocks_path
    report = make_report(
        f"gen {args.generator}",
        params,
        args.seed,
        OUTCOME_SUCCESS,
        payloads,
        audits,
        {"wallTimeSec": time.perf_counter() - t0},
    )
    _emit_report(args, report)
    return EXIT_OK if all(ok for _, ok in audits) else EXIT_INTERNAL


# ----------------------------------------------------------------------------
# analyze
# ----------------------------------------------------------------------------


def _frac_json(x: Fraction) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    gir = detect.girth(g)
    census = detect.count_short_cycles(g, args.max_len)
    probe = detect.find_biclique(g, args.probe_s, args.probe_t)
    stats_a = degree_stats(g, Side.A)
    stats_b = degree_stats(g, Side.B)
    doc = {
        "nA": g.n_a,
        "nB": g.n_b,
        "edges": g.edge_count,
        "girth": "Infinity" if gir == float("inf") else gir,
        "averageDegree": _frac_json(average_degree(g)),
        "census": {
            "maxLength": census.max_length,
            "counts": {str(k): v for k, v in sorted(census.counts_by_length.items())},
            "total": census.total,
        },
        "degreeStats": {
            "A": {"min": stats_a.min_deg, "max": stats_a.max_deg, "avg": _frac_json(stats_a.avg_deg)},
            "B": {"min": stats_b.min_deg, "max": stats_b.max_deg, "avg": _frac_json(stats_b.avg_deg)},
        },
        "bicliqueProbe": {
            "s": args.probe_s,
            "t": args.probe_t,
            "found": probe is not None,
            "witness": witness_to_json(probe) if probe else None,
        },
    }
    # Advisory edge-bound diagnostic (square graphs only): a graph the probe
    # calls K_{t,t}-free while exceeding the bound would indicate a detector
    # bug.  Never gates anything.
    if g.n_a == g.n_b and g.n_a >= args.probe_t and args.probe_s == args.probe_t:
        bound = detect.kst_edge_bound(g.n_a, args.probe_t)
        doc["kstEdgeBound"] = {
            "t": args.probe_t,
            "bound": _frac_json(bound),
            "edgesWithinBound": g.edge_count <= bound,
            "consistentWithProbe": probe is not None or g.edge_count <= bound,
        }
    else:
        doc["kstEdgeBound"] = None
    _write_text(args.out, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# regularize
# ----------------------------------------------------------------------------


def cmd_regularize(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.graph)
    params = regularize.RegularizeParams(
        r=args.r,
        lam=args.lam,
        seed=generate.Seed(args.seed),
        max_retries=args.max_retries,
        partition_attempts=args.partition_attempts,
    )
    outcome = regularize.extract_regular_side(g, params)
    cli_params = {
        "graph": args.graph,
        "r": args.r,
        "lam": args.lam,
        "maxRetries": args.max_retries,
        "partitionAttempts": args.partition_attempts,
    }
    counters = {
        "retries": outcome.attempts,
        "partitionDraws": outcome.partition_draws,
        "wallTimeSec": time.perf_counter() - t0,
    }
    if outcome.selection is None:
        report = make_report(
            "regularize", cli_params, args.seed, OUTCOME_ABSENT, {}, [], counters,
            detail=f"no success in {outcome.attempts} attempts "
            f"(best |A1| = {outcome.best_a1_size})",
        )
        _emit_report(args, report)
        return EXIT_ABSENT
    sub, _, _ = induced_subgraph(outcome.selection)
    audits = [
        ("a_side_exactly_r_regular", is_r_regular_side(sub, Side.A, None, args.r)),
        ("b_side_nonempty", sub.n_b > 0),
        ("size_ratio_at_least_lambda", sub.n_a >= args.lam * sub.n_b),
    ]
    _selection_to_file(outcome.selection, args.selection_out)
    report = make_report(
        "regularize", cli_params, args.seed, OUTCOME_SUCCESS,
        {"selection": args.selection_out}, audits, counters,
    )
    _emit_report(args, report)
    return EXIT_OK if all(ok for _, ok in audits) else EXIT_INTERNAL


# ----------------------------------------------------------------------------
# sparsify
# ----------------------------------------------------------------------------


def cmd_sparsify(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.graph)
    params = sparsify.SparsifyParams(
        t=args.t,
        k=args.k,
        seed=generate.Seed(args.seed),
        lambda_reg=args.lambda_reg,
        max_retries=args.retries,
    )
    cli_params = {
        "graph": args.graph,
        "t": args.t,
        "k": args.k,
        "lambdaReg": args.lambda_reg,
        "retries": args.retries,
        "hittingMode": args.hitting_mode,
    }
    if args.diagnostics:
        rep = sparsify.expectation_diagnostics(
            g, params, args.diagnostics, generate.Seed(args.seed), args.force_p
        )
        doc = {
            "trials": rep.trials,
            "p": rep.p,
            "predicted": {"vertexMean": rep.predicted_vertex_mean, "edgeMean": rep.predicted_edge_mean},
            "observed": {
                "vertexMean": rep.observed_vertex_mean,
                "edgeMean": rep.observed_edge_mean,
                "vertexStderr": rep.vertex_stderr,
                "edgeStderr": rep.edge_stderr,
                "x1Mean": rep.x1_mean,
                "x2Mean": rep.x2_mean,
            },
            "edgeLossBoundHeld": rep.edge_loss_bound_held,
            "worstSlack": rep.worst_slack,
        }
        _write_text(args.stats_out, json.dumps(doc, sort_keys=True, indent=2) + "\n")
        report = make_report(
            "sparsify", {**cli_params, "diagnostics": args.diagnostics}, args.seed,
            OUTCOME_SUCCESS if rep.edge_loss_bound_held else OUTCOME_ERROR,
            {"stats": args.stats_out},
            [("edge_loss_bound", rep.edge_loss_bound_held)],
            {"wallTimeSec": time.perf_counter() - t0},
        )
        _emit_report(args, report)
        return EXIT_OK if rep.edge_loss_bound_held else EXIT_INTERNAL

    result = sparsify.sparsify_high_girth(g, params, args.hitting_mode)
    counters = {
        "retries": result.attempts,
        "cyclesEnumerated": result.diagnostics.short_cycles_found,
        "verticesDeleted": result.diagnostics.vertices_deleted,
        "wallTimeSec": time.perf_counter() - t0,
    }
    if not result.success or result.selection is None:
        report = make_report(
            "sparsify", cli_params, args.seed, OUTCOME_ABSENT, {}, [], counters,
            detail=f"best final average degree {result.diagnostics.final_avg_deg}",
        )
        _emit_report(args, report)
        return EXIT_ABSENT
    sub, _, _ = induced_subgraph(result.selection)
    audits = [
        ("girth_at_least_2k", detect.girth(sub) >= 2 * args.k),
        ("short_cycle_census_empty", detect.count_short_cycles(sub, 2 * args.k).total == 0),
        ("average_degree_at_least_t", average_degree(sub) >= args.t),
    ]
    _selection_to_file(result.selection, args.selection_out)
    report = make_report(
        "sparsify", cli_params, args.seed, OUTCOME_SUCCESS,
        {"selection": args.selection_out}, audits, counters,
    )
    _emit_report(args, report)
    return EXIT_OK if all(ok for _, ok in audits) else EXIT_INTERNAL


# ----------------------------------------------------------------------------
# extract-girth6
# ----------------------------------------------------------------------------


def cmd_extract(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.graph)
    budgets = girth6.SearchBudgets(
        partition_mode=args.mode,
        heuristic_iters=args.heuristic_iters,
        heuristic_restarts=args.restarts,
    )
    result = girth6.iterate_extraction(
        g, args.s, args.t, budgets, generate.Seed(args.seed), args.c_override
    )
    cli_params = {
        "graph": args.graph,
        "s": args.s,
        "t": args.t,
        "cOverride": str(args.c_override),
        "mode": args.mode,
        "heuristicIters": args.heuristic_iters,
        "restarts": args.restarts,
        "schedule": [
            {"s": row.s, "requiredDegree": row.required_degree,
             "requiredRatio": row.required_ratio}
            for row in result.schedule
        ],
    }
    trace_text = "; ".join(
        f"depth {row.depth} (s={row.s_cur}) {row.action}: {row.detail}"
        for row in result.trace
    )
    counters = {
        "depthsVisited": len(result.trace),
        "wallTimeSec": time.perf_counter() - t0,
    }
    if result.kind == "girth6":
        failures = girth6.audit_girth_six(g, result.selection, args.t)
        names = ("four_cycle_free", "girth_at_least_6",
                 f"average_degree_at_least_{args.t}")
        audits = [(name, name not in failures) for name in names]
        _selection_to_file(result.selection, args.selection_out)
        report = make_report(
            "extract-girth6", cli_params, args.seed,
            OUTCOME_SUCCESS if not failures else OUTCOME_ERROR,
            {"selection": args.selection_out}, audits, counters, detail=trace_text,
        )
        _emit_report(args, report)
        return EXIT_OK if not failures else EXIT_INTERNAL
    if result.kind == "biclique":
        ok = detect.verify_biclique(g, result.witness)
        _write_text(
            args.witness_out,
            json.dumps(witness_to_json(result.witness), sort_keys=True, indent=2) + "\n",
        )
        report = make_report(
            "extract-girth6", cli_params, args.seed, OUTCOME_SUCCESS,
            {"witness": args.witness_out}, [("biclique_witness_valid", ok)],
            counters, detail=trace_text,
        )
        _emit_report(args, report)
        return EXIT_OK if ok else EXIT_INTERNAL
    report = make_report(
        "extract-girth6", cli_params, args.seed, OUTCOME_ABSENT, {}, [],
        counters, detail=trace_text,
    )
    _emit_report(args, report)
    return EXIT_ABSENT


# ----------------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------------


def _verify_witness_audits(g: BipartiteGraph, w: detect.BicliqueWitness) -> list[tuple[str, bool]]:
    want_a = w.s if w.s_side is Side.A else w.t
    want_b = w.t if w.s_side is Side.A else w.s
    in_range = all(0 <= a < g.n_a for a in w.side_in_a) and all(
        0 <= b < g.n_b for b in w.side_in_b
    )
    audits = [
        ("sides_match_s_and_t",
         len(w.side_in_a) == want_a and len(w.side_in_b) == want_b and w.s >= 1 and w.t >= 1),
        ("vertices_duplicate_free",
         len(set(w.side_in_a)) == len(w.side_in_a)
         and len(set(w.side_in_b)) == len(w.side_in_b)),
        ("vertices_in_range", in_range),
    ]
    complete = in_range and all(
        g.has_edge(a, b) for a in w.side_in_a for b in w.side_in_b
    )
    audits.append(("all_edges_present", complete))
    return audits


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.graph)
    audits: list[tuple[str, bool]]
    if args.witness:
        data = json.loads(Path(args.witness).read_text())
        w = witness_from_json(data)
        audits = _verify_witness_audits(g, w)
        params = {"graph": args.graph, "witness": args.witness}
        payloads = {"witness": args.witness}
    else:
        sel = parse_selection(Path(args.selection).read_text(), g)
        sub, _, _ = induced_subgraph(sel)
        audits = []
        if args.min_girth is not None:
            audits.append((f"girth_at_least_{args.min_girth}", detect.girth(sub) >= args.min_girth))
        if args.min_avg_deg is not None:
            audits.append(
                (f"average_degree_at_least_{args.min_avg_deg}",
                 average_degree(sub) >= args.min_avg_deg)
            )
        if not audits:
            audits.append(("selection_in_range", True))
        params = {
            "graph": args.graph,
            "selection": args.selection,
            "minGirth": args.min_girth,
            "minAvgDeg": str(args.min_avg_deg) if args.min_avg_deg is not None else None,
        }
        payloads = {"selection": args.selection}
    ok = all(passed for _, passed in audits)
    failed = [name for name, passed in audits if not passed]
    report = make_report(
        "verify", params, None, OUTCOME_SUCCESS if ok else OUTCOME_ABSENT,
        payloads, audits, {"wallTimeSec": time.perf_counter() - t0},
        detail=None if ok else f"failed invariants: {', '.join(failed)}",
    )
    _emit_report(args, report)
    return EXIT_OK if ok else EXIT_ABSENT


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bipgirth",
        description="Bipartite girth extraction toolkit (batch use only).",
    )
    parser.add_argument("--jobs", type=int, default=1,
                        help="accepted for interface compatibility; pipelines run sequentially")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write a generated graph file")
    gen_sub = p_gen.add_subparsers(dest="generator", required=True)
    for name in ("complete", "random", "biregular", "pg", "nbr-regular"):
        sp = gen_sub.add_parser(name)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default="-")
        sp.add_argument("--report", default=None)
        sp.set_defaults(handler=cmd_gen)
        if name == "complete":
            sp.add_argument("--s", type=int, required=True)
            sp.add_argument("--t", type=int, required=True)
        elif name == "random":
            sp.add_argument("--na", type=int, required=True)
            sp.add_argument("--nb", type=int, required=True)
            sp.add_argument("--p", type=float, required=True)
        elif name == "biregular":
            sp.add_argument("--na", type=int, required=True)
            sp.add_argument("--nb", type=int, required=True)
            sp.add_argument("--dega", type=int, required=True)
        elif name == "pg":
            sp.add_argument("--q", type=int, required=True)
        else:
            sp.add_argument("--r", type=int, required=True)
            sp.add_argument("--degrees", type=_degrees_arg, required=True)
            sp.add_argument("--asize", type=int, required=True)
            sp.add_argument("--blocks-out", default=None)

    p_an = sub.add_parser("analyze", help="girth, census, degree stats, K_{s,t} probe")
    p_an.add_argument("--graph", required=True)
    p_an.add_argument("--max-len", type=int, default=8)
    p_an.add_argument("--probe-s", type=int, default=2)
    p_an.add_argument("--probe-t", type=int, default=2)
    p_an.add_argument("--out", default="-")
    p_an.set_defaults(handler=cmd_analyze)

    p_reg = sub.add_parser("regularize", help="extract an exactly r-regular A side")
    p_reg.add_argument("--graph", required=True)
    p_reg.add_argument("--r", type=int, required=True)
    p_reg.add_argument("--lam", type=int, required=True)
    p_reg.add_argument("--seed", type=int, default=0)
    p_reg.add_argument("--max-retries", type=int, default=200)
    p_reg.add_argument("--partition-attempts", type=int, default=50)
    p_reg.add_argument("--selection-out", default="selection.txt")
    p_reg.add_argument("--report", default=None)
    p_reg.set_defaults(handler=cmd_regularize, report_to_stdout=True)

    p_sp = sub.add_parser("sparsify", help="sample vertices and hit short cycles")
    p_sp.add_argument("--graph", required=True)
    p_sp.add_argument("--t", type=int, required=True)
    p_sp.add_argument("--k", type=int, required=True)
    p_sp.add_argument("--lambda-reg", type=int, default=1)
    p_sp.add_argument("--seed", type=int, default=0)
    p_sp.add_argument("--retries", type=int, default=20)
    p_sp.add_argument("--hitting-mode", choices=sparsify.HITTING_MODES, default="greedy")
    p_sp.add_argument("--selection-out", default="selection.txt")
    p_sp.add_argument("--diagnostics", type=int, default=None,
                      help="run N Monte-Carlo trials instead of extracting")
    p_sp.add_argument("--force-p", type=float, default=None)
    p_sp.add_argument("--stats-out", default="-")
    p_sp.add_argument("--report", default=None)
    p_sp.set_defaults(handler=cmd_sparsify, report_to_stdout=True)

    p_ex = sub.add_parser("extract-girth6",
                          help="iterated extraction: girth-6 subgraph or K_{s,t}")
    p_ex.add_argument("--graph", required=True)
    p_ex.add_argument("--s", type=int, required=True)
    p_ex.add_argument("--t", type=int, required=True)
    p_ex.add_argument("--c-override", type=_fraction_arg, default=Fraction(1))
    p_ex.add_argument("--mode", choices=("auto", "exact", "heuristic"), default="auto")
    p_ex.add_argument("--heuristic-iters", type=int, default=500)
    p_ex.add_argument("--restarts", type=int, default=20)
    p_ex.add_argument("--seed", type=int, default=0)
    p_ex.add_argument("--selection-out", default="selection.txt")
    p_ex.add_argument("--witness-out", default="witness.json")
    p_ex.add_argument("--report", default=None)
    p_ex.set_defaults(handler=cmd_extract, report_to_stdout=True)

    for alias in ("verify", "verify-witness"):
        p_v = sub.add_parser(alias, help="re-audit a saved witness or selection")
        p_v.add_argument("--graph", required=True)
        group = p_v.add_mutually_exclusive_group(required=True)
        group.add_argument("--witness", default=None)
        group.add_argument("--selection", default=None)
        p_v.add_argument("--min-girth", type=int, default=None)
        p_v.add_argument("--min-avg-deg", type=_fraction_arg, default=None)
        p_v.add_argument("--report", default=None)
        p_v.set_defaults(handler=cmd_verify, report_to_stdout=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParameterError, GraphFormatError) as exc:
        print(f"bipgirth: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"bipgirth: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BipgirthError as exc:
        print(f"bipgirth: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - the CLI must not traceback
        print(f"bipgirth: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
