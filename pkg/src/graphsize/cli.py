"""Command-line interface.

Subcommands: graphstat, gen, sample, estimate, experiment, plot.
Exit codes: 0 success, 2 configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import MODE_SET, EstimatorError
from .experiment import (EstimatorSpec, ExperimentPlan, PlanError, SamplerSpec,
                         draw_sample, emit_csv, emit_svg_band,
                         evaluate_with_ratio, parse_plan_file, resolve_graph,
                         run_experiment, TrialSummary)
from .graph import (GraphError, exact_stats, largest_connected_component,
                    size_identity, write_edge_list)
from .sampling import SamplingError, read_sample, write_sample

EXIT_CONFIG = 2
EXIT_DATA = 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (PlanError, EstimatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GraphError, SamplingError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphsize",
        description="Estimate the number of nodes of a graph from node samples.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphstat", help="print exact graph statistics")
    p.add_argument("graph", help="edge-list path or gen:<model>:<args> spec")
    p.set_defaults(handler=_cmd_graphstat)

    p = sub.add_parser("gen", help="generate a synthetic graph edge list")
    p.add_argument("spec", help="generator spec, e.g. gen:er:nodes=1000,p=0.02,seed=1")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("sample", help="draw a node sample and write it to a file")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", required=True,
                   choices=["uis", "wis", "rw", "rw-multi"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--walkers", type=int, default=1)
    p.add_argument("--weight-rule", default="degree",
                   choices=["degree", "unit"])
    p.add_argument("--lcc", action="store_true",
                   help="restrict to the largest connected component first")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("estimate", help="estimate graph size from a sample file")
    p.add_argument("--sample", required=True)
    p.add_argument("--estimator", required=True,
                   choices=["node-uis", "node-wis", "capture", "mle-approx",
                            "mle-exact", "ind-a", "ind-b", "star"])
    p.add_argument("--correction", default="none",
                   choices=["none", "thin", "thin-shifted", "margin",
                            "cross-walker"])
    p.add_argument("--a-mode", default=MODE_SET, choices=["set", "multiset"])
    p.add_argument("--theta", type=int, default=1)
    p.add_argument("--margin", type=int, default=0)
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the capture-recapture split")
    p.set_defaults(handler=_cmd_estimate)

    p = sub.add_parser("experiment", help="run a percentile-band experiment plan")
    p.add_argument("--plan", required=True, help="key=value plan file")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("plot", help="render an experiment CSV as an SVG band plot")
    p.add_argument("--csv", required=True)
    p.add_argument("--xlabel", default="parameter")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_plot)

    return parser


def _cmd_graphstat(args) -> int:
    g = resolve_graph(args.graph)
    stats = exact_stats(g)
    print(f"nodes: {g.node_count}")
    print(f"edges: {g.edge_count}")
    print(f"mean_degree: {stats.mean_degree:.6g}")
    print(f"density: {stats.density:.6g}")
    if g.edge_count:
        residual = abs(size_identity(g) - g.node_count) / g.node_count
        print(f"size_identity_residual: {residual:.3e}")
    if g.load_report is not None:
        r = g.load_report
        print(f"dropped_self_loops: {r.self_loops_dropped}")
        print(f"collapsed_duplicates: {r.duplicates_collapsed}")
    if not g.is_connected:
        print("warning: graph is disconnected; random walks need the "
              "largest connected component", file=sys.stderr)
    return 0


def _cmd_gen(args) -> int:
    g = resolve_graph(args.spec)
    with open(args.output, "w", encoding="utf-8") as fh:
        write_edge_list(g, fh)
    print(f"wrote {g.node_count} nodes, {g.edge_count} edges to {args.output}")
    return 0


def _cmd_sample(args) -> int:
    g = resolve_graph(args.graph)
    if args.lcc:
        g = largest_connected_component(g)
    spec = SamplerSpec(method=args.method, n=args.n, walkers=args.walkers,
                       weight_rule=args.weight_rule)
    s = draw_sample(g, spec, args.seed)
    with open(args.output, "w", encoding="utf-8") as fh:
        write_sample(s, fh, g)
    print(f"wrote {len(s)} records to {args.output}")
    return 0


def _cmd_estimate(args) -> int:
    if args.estimator == "star":
        print("notice: the star estimator is EXPERIMENTAL and typically "
              "performs worse than node/ind estimators", file=sys.stderr)
    with open(args.sample, "r", encoding="utf-8") as fh:
        sample = read_sample(fh)
    est = EstimatorSpec(name=args.estimator, correction=args.correction,
                        a_mode=args.a_mode, theta=args.theta, m=args.margin)
    _check_estimate_config(sample, est)
    ratio, outcome = evaluate_with_ratio(sample, est, args.seed)
    payload = {
        "estimator": est.name,
        "correction": est.correction,
        "params": {"a_mode": est.a_mode, "theta": est.theta, "m": est.m},
        "n": len(sample),
        "numerator": ratio.numerator if ratio else None,
        "denominator": ratio.denominator if ratio else None,
        "estimate": outcome.value if outcome.finite else "no_collisions",
    }
    print(json.dumps(payload))
    return 0


def _check_estimate_config(sample, est: EstimatorSpec) -> None:
    method_map = {"UIS": "uis", "WIS": "wis", "RW": "rw", "RW_MULTI": "rw-multi"}
    # Reuse plan validation by faking a single-point grid on n.
    from .graph import Graph
    dummy = Graph([()], [0])
    ExperimentPlan(graph=dummy,
                   sampler=SamplerSpec(method=method_map[sample.method],
                                       n=max(len(sample), 1)),
                   estimator=est, param="n", values=(len(sample),), trials=1)


def _cmd_experiment(args) -> int:
    with open(args.plan, "r", encoding="utf-8") as fh:
        plan = parse_plan_file(fh.read())
    summaries = run_experiment(plan)
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        fh.write(emit_csv(summaries))
    print(f"wrote {len(summaries)} rows to {args.output}")
    return 0


def _cmd_plot(args) -> int:
    summaries = _read_csv(args.csv)
    svg = emit_svg_band(summaries, xlabel=args.xlabel)
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def _read_csv(path: str) -> list[TrialSummary]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "param,p10,p50,p90,infinite_fraction,trials":
            raise ValueError(f"{path}: not a graphsize experiment CSV")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            param, p10, p50, p90, frac, trials = line.split(",")
            opt = lambda x: float(x) if x else None
            rows.append(TrialSummary(float(param), opt(p10), opt(p50),
                                     opt(p90), float(frac), int(trials)))
    return rows


if __name__ == "__main__":
    sys.exit(main())
