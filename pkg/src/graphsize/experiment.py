"""Percentile-band experiment harness.

Runs repeated seeded trials of a sampler/estimator combination over a
parameter grid, summarizes each grid point by 10/50/90 percentiles of the
finite estimates plus the fraction of no-collisions outcomes, and renders
CSV and static SVG band plots.  Everything is deterministic given the plan
and its base seed.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

from . import generators
from .core import MODE_SET, EstimateOutcome, EstimatorError
from .graph import Graph, largest_connected_component, load_edge_list
from .ind_estimators import inda_uis, inda_wis, indb_auto
from .node_estimators import (capture_recapture_from_sample, mle_unique_approx,
                              mle_unique_exact, node_uis, node_wis)
from .rw_correction import (BASE_IND_B, BASE_NODE_WIS, MarginConfig,
                            ThinningConfig, estimate_thinned, ind_margin,
                            margin_crosswalker, node_margin)
from .sampling import (METHOD_RW, METHOD_RW_MULTI, METHOD_UIS, METHOD_WIS,
                       Sample, sample_rw, sample_rw_multi, sample_uis,
                       sample_wis)
from .star import star_estimate

THREADS_ENV = "GRAPHSIZE_THREADS"

CORRECTIONS = ("none", "thin", "thin-shifted", "margin", "cross-walker")
ESTIMATORS = ("node-uis", "node-wis", "capture", "mle-approx", "mle-exact",
              "ind-a", "ind-b", "star")


class PlanError(Exception):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class SamplerSpec:
    method: str  # uis | wis | rw | rw-multi
    n: int
    walkers: int = 1
    weight_rule: str = "degree"


@dataclass(frozen=True)
class EstimatorSpec:
    name: str
    correction: str = "none"
    a_mode: str = MODE_SET
    theta: int = 1
    m: int = 0


@dataclass(frozen=True)
class ExperimentPlan:
    graph: Graph
    sampler: SamplerSpec
    estimator: EstimatorSpec
    param: str = "n"  # n | theta | m
    values: tuple = ()
    trials: int = 500
    base_seed: int = 0
    normalize: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise PlanError("trials must be >= 1")
        if not self.values:
            raise PlanError("parameter grid must be non-empty")
        validate(self)


@dataclass(frozen=True)
class TrialSummary:
    """Percentile statistics for one grid point."""

    param_value: float
    p10: float | None
    p50: float | None
    p90: float | None
    infinite_fraction: float
    trials: int

    @property
    def band_width(self) -> float | None:
        if self.p10 is None or self.p90 is None:
            return None
        return self.p90 - self.p10


def validate(plan: ExperimentPlan) -> None:
    est = plan.estimator
    method = plan.sampler.method
    if method not in ("uis", "wis", "rw", "rw-multi"):
        raise PlanError(f"unknown sampling method: {method!r}")
    if est.name not in ESTIMATORS:
        raise PlanError(f"unknown estimator: {est.name!r}")
    if est.correction not in CORRECTIONS:
        raise PlanError(f"unknown correction: {est.correction!r}")
    if est.correction != "none":
        if est.name not in ("node-wis", "ind-b"):
            raise PlanError(
                f"correction {est.correction!r} applies only to node-wis/ind-b")
        if est.correction == "cross-walker":
            if method != "rw-multi":
                raise PlanError("cross-walker correction needs rw-multi sampling")
        elif method not in ("rw", "rw-multi"):
            raise PlanError(
                f"correction {est.correction!r} needs random-walk sampling")
    if plan.param not in ("n", "theta", "m"):
        raise PlanError(f"unknown grid parameter: {plan.param!r}")
    if plan.param == "theta" and est.correction not in ("thin", "thin-shifted"):
        raise PlanError("theta grid needs a thinning correction")
    if plan.param == "m" and est.correction != "margin":
        raise PlanError("margin grid needs the margin correction")


def draw_sample(g: Graph, spec: SamplerSpec, seed: int) -> Sample:
    if spec.method == "uis":
        return sample_uis(g, spec.n, seed)
    if spec.method == "wis":
        return sample_wis(g, spec.weight_rule, spec.n, seed)
    if spec.method == "rw":
        return sample_rw(g, spec.n, seed)
    if spec.method == "rw-multi":
        per_walk = spec.n // spec.walkers
        seeds = [seed * 1_000_003 + k for k in range(spec.walkers)]
        return sample_rw_multi(g, spec.walkers, per_walk, seeds)
    raise PlanError(f"unknown sampling method: {spec.method!r}")


def evaluate(sample: Sample, est: EstimatorSpec, seed: int = 0) -> EstimateOutcome:
    """Apply the configured estimator (and correction) to one sample."""
    if est.correction == "none":
        return _plain_estimate(sample, est, seed)
    base = BASE_NODE_WIS if est.name == "node-wis" else BASE_IND_B
    if est.correction in ("thin", "thin-shifted"):
        return estimate_thinned(sample, ThinningConfig(est.theta), base,
                                shifted=est.correction == "thin-shifted",
                                a_mode=est.a_mode)
    if est.correction == "margin":
        if est.name == "node-wis":
            return node_margin(sample, MarginConfig(est.m))
        return ind_margin(sample, MarginConfig(est.m), est.a_mode)
    if est.correction == "cross-walker":
        kind = "node" if est.name == "node-wis" else "ind"
        return margin_crosswalker(sample, kind, est.a_mode)
    raise PlanError(f"unknown correction: {est.correction!r}")


def evaluate_with_ratio(sample: Sample, est: EstimatorSpec, seed: int = 0):
    """Like :func:`evaluate`, but also expose the numerator/denominator pair.

    Returns (ratio, outcome); ratio is None for estimators that are not
    ratio-shaped (capture-recapture and the MLE solvers).
    """
    from .ind_estimators import inda_uis_ratio, inda_wis_ratio, indb_auto_ratio
    from .node_estimators import node_uis_ratio, node_wis_ratio
    from .rw_correction import ind_margin_ratio, node_margin_ratio

    outcome = evaluate(sample, est, seed)
    ratio = None
    if est.correction == "none":
        if est.name == "node-uis":
            ratio = node_uis_ratio(sample)
        elif est.name == "node-wis":
            ratio = node_wis_ratio(sample)
        elif est.name == "ind-a":
            ratio = (inda_uis_ratio(sample) if sample.method == METHOD_UIS
                     else inda_wis_ratio(sample))
        elif est.name == "ind-b":
            ratio = indb_auto_ratio(sample, est.a_mode)
    elif est.correction == "margin":
        if est.name == "node-wis":
            ratio = node_margin_ratio(sample, est.m)
        else:
            ratio = ind_margin_ratio(sample, est.m, est.a_mode)
    return ratio, outcome


def _plain_estimate(sample: Sample, est: EstimatorSpec,
                    seed: int) -> EstimateOutcome:
    name = est.name
    if name == "node-uis":
        return node_uis(sample)
    if name == "node-wis":
        return node_wis(sample)
    if name == "capture":
        return capture_recapture_from_sample(sample, seed)
    if name in ("mle-approx", "mle-exact"):
        n_unique = len(set(sample.nodes()))
        fn = mle_unique_approx if name == "mle-approx" else mle_unique_exact
        return fn(len(sample), n_unique)
    if name == "ind-a":
        if sample.method == METHOD_UIS:
            return inda_uis(sample)
        return inda_wis(sample)
    if name == "ind-b":
        return indb_auto(sample, est.a_mode)
    if name == "star":
        return star_estimate(sample)
    raise PlanError(f"unknown estimator: {name!r}")


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_experiment(plan: ExperimentPlan) -> list[TrialSummary]:
    """One summary per grid point, over `trials` seeded independent trials.

    Trial seeds are base_seed + trial index.  For theta/m grids each trial
    draws one sample and sweeps the parameter over it, mirroring how a real
    crawl would be post-processed.
    """
    scale = plan.graph.node_count if plan.normalize else 1.0
    threads = _thread_count()

    def run_trial(trial: int) -> list[EstimateOutcome]:
        seed = plan.base_seed + trial
        if plan.param == "n":
            out = []
            for value in plan.values:
                spec = replace(plan.sampler, n=int(value))
                out.append(evaluate(draw_sample(plan.graph, spec, seed),
                                    plan.estimator, seed))
            return out
        sample = draw_sample(plan.graph, plan.sampler, seed)
        key = "theta" if plan.param == "theta" else "m"
        return [evaluate(sample, replace(plan.estimator, **{key: int(value)}),
                         seed)
                for value in plan.values]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_trial = list(pool.map(run_trial, range(plan.trials)))
    else:
        per_trial = [run_trial(t) for t in range(plan.trials)]

    summaries = []
    for col, value in enumerate(plan.values):
        outcomes = [per_trial[t][col] for t in range(plan.trials)]
        summaries.append(summarize(value, outcomes, scale))
    return summaries


def summarize(param_value, outcomes: Sequence[EstimateOutcome],
              scale: float = 1.0) -> TrialSummary:
    finite = sorted(o.value / scale for o in outcomes if o.finite)
    infinite_fraction = 1.0 - len(finite) / len(outcomes)
    if finite:
        p10, p50, p90 = (percentile(finite, q) for q in (0.1, 0.5, 0.9))
    else:
        p10 = p50 = p90 = None
    return TrialSummary(param_value, p10, p50, p90, infinite_fraction,
                        len(outcomes))


def percentile(values: Sequence[float], q: float) -> float:
    """Nearest-rank percentile: sorted value at index ceil(q*len) - 1."""
    if not values:
        raise EstimatorError("percentile of empty list")
    if not 0.0 <= q <= 1.0:
        raise EstimatorError("q must be in [0, 1]")
    ordered = sorted(values)
    rank = math.ceil(q * len(ordered))
    return ordered[max(rank - 1, 0)]


def emit_csv(summaries: Sequence[TrialSummary]) -> str:
    """CSV with one row per grid point; missing percentiles stay empty."""
    if not summaries:
        raise EstimatorError("no summaries to emit")
    fmt = lambda x: "" if x is None else f"{x:.12g}"
    lines = ["param,p10,p50,p90,infinite_fraction,trials"]
    for s in summaries:
        lines.append(f"{s.param_value:g},{fmt(s.p10)},{fmt(s.p50)},"
                     f"{fmt(s.p90)},{s.infinite_fraction:.12g},{s.trials}")
    return "\n".join(lines) + "\n"


def emit_svg_band(summaries: Sequence[TrialSummary], xlabel: str = "parameter",
                  ylabel: str = "estimate / true size",
                  width: int = 640, height: int = 400) -> str:
    """Static SVG: grey 10-90 band with a dotted median line.

    Grid points are spaced evenly; rows whose trials were all infinite are
    skipped (their information lives in the CSV's infinite_fraction).
    """
    if not summaries:
        raise EstimatorError("no summaries to plot")
    margin_l, margin_r, margin_t, margin_b = 60, 20, 20, 50
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b
    rows = [s for s in summaries if s.p10 is not None]
    ys = [v for s in rows for v in (s.p10, s.p50, s.p90)]
    y_lo = min(ys + [0.0]) if ys else 0.0
    y_hi = max(ys + [1.0]) if ys else 1.0
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0
    n_pts = len(summaries)

    def x_of(i: int) -> float:
        if n_pts == 1:
            return margin_l + plot_w / 2
        return margin_l + plot_w * i / (n_pts - 1)

    def y_of(v: float) -> float:
        return margin_t + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo))

    index = {id(s): i for i, s in enumerate(summaries)}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin_l}" y1="{margin_t}" x2="{margin_l}" '
        f'y2="{margin_t + plot_h}" stroke="black"/>',
        f'<line x1="{margin_l}" y1="{margin_t + plot_h}" '
        f'x2="{margin_l + plot_w}" y2="{margin_t + plot_h}" stroke="black"/>',
    ]
    if rows:
        upper = [f"{x_of(index[id(s)]):.2f},{y_of(s.p90):.2f}" for s in rows]
        lower = [f"{x_of(index[id(s)]):.2f},{y_of(s.p10):.2f}"
                 for s in reversed(rows)]
        parts.append(f'<polygon points="{" ".join(upper + lower)}" '
                     'fill="#cccccc" stroke="none"/>')
        med = [f"{x_of(index[id(s)]):.2f},{y_of(s.p50):.2f}" for s in rows]
        parts.append(f'<polyline points="{" ".join(med)}" fill="none" '
                     'stroke="black" stroke-dasharray="4 3"/>')
    for i, s in enumerate(summaries):
        parts.append(f'<text x="{x_of(i):.2f}" y="{margin_t + plot_h + 18}" '
                     f'font-size="11" text-anchor="middle">{s.param_value:g}'
                     '</text>')
    for frac in (0.0, 0.5, 1.0):
        v = y_lo + frac * (y_hi - y_lo)
        parts.append(f'<text x="{margin_l - 6}" y="{y_of(v) + 4:.2f}" '
                     f'font-size="11" text-anchor="end">{v:.3g}</text>')
    parts.append(f'<text x="{margin_l + plot_w / 2:.0f}" y="{height - 10}" '
                 f'font-size="13" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="16" y="{margin_t + plot_h / 2:.0f}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 '
                 f'{margin_t + plot_h / 2:.0f})">{ylabel}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- plan files --------------------------------------------------------------

_PLAN_KEYS = {"graph", "method", "n", "walkers", "weight_rule", "estimator",
              "correction", "a_mode", "theta", "m", "param", "values",
              "trials", "base_seed", "normalize", "lcc"}


def parse_plan_file(text: str) -> ExperimentPlan:
    """Parse the simple key=value plan format (one pair per line, # comments).

    The ``graph`` value is either a path to an edge list, or a generator
    spec like ``gen:er:nodes=1000,p=0.02,seed=1``.
    """
    kv: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise PlanError(f"plan line {line_no}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _PLAN_KEYS:
            raise PlanError(f"plan line {line_no}: unknown key {key!r}")
        kv[key] = value
    for required in ("graph", "method", "n", "estimator", "param", "values"):
        if required not in kv:
            raise PlanError(f"plan is missing required key {required!r}")
    graph = resolve_graph(kv["graph"])
    if kv.get("lcc", "false").lower() in ("1", "true", "yes"):
        graph = largest_connected_component(graph)
    sampler = SamplerSpec(method=kv["method"], n=int(kv["n"]),
                          walkers=int(kv.get("walkers", "1")),
                          weight_rule=kv.get("weight_rule", "degree"))
    estimator = EstimatorSpec(name=kv["estimator"],
                              correction=kv.get("correction", "none"),
                              a_mode=kv.get("a_mode", MODE_SET),
                              theta=int(kv.get("theta", "1")),
                              m=int(kv.get("m", "0")))
    return ExperimentPlan(
        graph=graph, sampler=sampler, estimator=estimator,
        param=kv["param"],
        values=tuple(float(v) for v in kv["values"].split(",")),
        trials=int(kv.get("trials", "500")),
        base_seed=int(kv.get("base_seed", "0")),
        normalize=kv.get("normalize", "true").lower() in ("1", "true", "yes"))


def resolve_graph(spec: str) -> Graph:
    """Load a graph from a path, or build one from a ``gen:...`` spec."""
    if not spec.startswith("gen:"):
        with open(spec, "r", encoding="utf-8") as fh:
            return load_edge_list(fh)
    try:
        _, model, args = spec.split(":", 2)
    except ValueError:
        raise PlanError(f"bad generator spec: {spec!r}") from None
    params: dict[str, str] = {}
    if args:
        for part in args.split(","):
            k, _, v = part.partition("=")
            params[k.strip()] = v.strip()
    try:
        if model == "er":
            return generators.erdos_renyi(int(params["nodes"]),
                                          float(params["p"]),
                                          int(params.get("seed", "0")))
        if model == "ba":
            return generators.barabasi_albert(int(params["nodes"]),
                                              int(params["m"]),
                                              int(params.get("seed", "0")))
        if model == "ring":
            return generators.ring_of_cliques(int(params["cliques"]),
                                              int(params["size"]))
        if model == "grid":
            return generators.grid_2d(int(params["rows"]),
                                      int(params["cols"]))
    except KeyError as exc:
        raise PlanError(f"generator spec {spec!r} missing {exc}") from None
    raise PlanError(f"unknown generator model: {model!r}")
