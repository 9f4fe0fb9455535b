"""Node samplers: UIS, WIS, single and multi-walker random walks.

Every sampler is a pure function of (graph, parameters, seed) using numpy's
PCG64 generator, named in the sample metadata so files are reproducible
across platforms.  Each record snapshots the sampled node's neighbor list,
so estimation downstream never needs the full graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import IO, Callable, Sequence

import numpy as np

from .graph import Graph

RNG_NAME = "numpy-pcg64"

METHOD_UIS = "UIS"
METHOD_WIS = "WIS"
METHOD_RW = "RW"
METHOD_RW_MULTI = "RW_MULTI"


class SamplingError(Exception):
    """Invalid sampler input (e.g. disconnected graph for a random walk)."""


@dataclass(frozen=True, slots=True)
class SampleRecord:
    """One sampled node with its local view of the graph."""

    position: int
    node: int
    degree: int
    weight: float
    neighbors: tuple[int, ...]
    walker: int = 0


@dataclass(frozen=True)
class Sample:
    """An ordered node sample with provenance metadata."""

    records: tuple[SampleRecord, ...]
    method: str
    seed: int
    weight_rule: str
    graph_digest: str
    rng_name: str = RNG_NAME
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.records)

    def nodes(self) -> list[int]:
        return [r.node for r in self.records]

    def weights(self) -> list[float]:
        return [r.weight for r in self.records]

    def degrees(self) -> list[int]:
        return [r.degree for r in self.records]

    def walkers(self) -> list[int]:
        return [r.walker for r in self.records]


def _record(g: Graph, position: int, node: int, weight: float,
            walker: int = 0) -> SampleRecord:
    nbrs = g.neighbors(node)
    return SampleRecord(position, node, len(nbrs), weight, nbrs, walker)


def sample_uis(g: Graph, n: int, seed: int) -> Sample:
    """n i.i.d. uniform node draws with replacement, unit weights."""
    if n < 1:
        raise SamplingError("n must be >= 1")
    rng = np.random.default_rng(seed)
    nodes = rng.integers(0, g.node_count, size=n)
    records = tuple(_record(g, i, int(v), 1.0) for i, v in enumerate(nodes))
    return Sample(records, METHOD_UIS, seed, "unit", g.digest)


def sample_wis(g: Graph, weight_rule: Callable[[int], float] | str,
               n: int, seed: int) -> Sample:
    """n i.i.d. draws with probability proportional to node weight.

    ``weight_rule`` is either the string "degree"/"unit" or a callable from
    dense node index to a positive weight.
    """
    if n < 1:
        raise SamplingError("n must be >= 1")
    rule_name, weights = _resolve_weights(g, weight_rule)
    if np.any(weights <= 0):
        raise SamplingError("all sampling weights must be positive")
    rng = np.random.default_rng(seed)
    cumulative = np.cumsum(weights)
    draws = rng.random(n) * cumulative[-1]
    nodes = np.searchsorted(cumulative, draws, side="right")
    records = tuple(_record(g, i, int(v), float(weights[v]))
                    for i, v in enumerate(nodes))
    return Sample(records, METHOD_WIS, seed, rule_name, g.digest)


def _resolve_weights(g: Graph, rule) -> tuple[str, np.ndarray]:
    if rule == "degree":
        return "degree", np.asarray(g.degrees, dtype=float)
    if rule == "unit":
        return "unit", np.ones(g.node_count)
    if callable(rule):
        w = np.array([float(rule(v)) for v in range(g.node_count)])
        name = getattr(rule, "__name__", "custom")
        return name, w
    raise SamplingError(f"unknown weight rule: {rule!r}")


def sample_rw(g: Graph, n: int, seed: int,
              start: int | None = None) -> Sample:
    """A simple random walk of n steps; record weight is the node degree.

    The start node defaults to a uniform draw from the same seed stream.
    There is no burn-in: dependence between consecutive samples is handled
    by the correction layer, not the sampler.
    """
    records = _walk_records(g, n, seed, start, walker=0, offset=0)
    return Sample(tuple(records), METHOD_RW, seed, "degree", g.digest)


def _walk_records(g: Graph, n: int, seed: int, start: int | None,
                  walker: int, offset: int) -> list[SampleRecord]:
    if n < 1:
        raise SamplingError("n must be >= 1")
    if not g.is_connected:
        raise SamplingError(
            "random walk requires a connected graph; "
            "extract the largest connected component first")
    rng = np.random.default_rng(seed)
    if start is None:
        current = int(rng.integers(g.node_count))
    else:
        current = start
    uniforms = rng.random(n - 1)
    records = []
    for i in range(n):
        nbrs = g.neighbors(current)
        records.append(SampleRecord(offset + i, current, len(nbrs),
                                    float(len(nbrs)), nbrs, walker))
        if i < n - 1:
            current = nbrs[int(uniforms[i] * len(nbrs))]
    return records


def sample_rw_multi(g: Graph, walkers: int, per_walk: int,
                    seeds: Sequence[int]) -> Sample:
    """Concatenation of independent random walks, tagged by walker id."""
    if walkers < 1:
        raise SamplingError("walkers must be >= 1")
    if len(seeds) != walkers:
        raise SamplingError("need exactly one seed per walker")
    records: list[SampleRecord] = []
    for k in range(walkers):
        records.extend(_walk_records(g, per_walk, seeds[k], None,
                                     walker=k, offset=len(records)))
    return Sample(tuple(records), METHOD_RW_MULTI, seeds[0], "degree",
                  g.digest, provenance=f"walkers={walkers}")


# -- sample file format ----------------------------------------------------
#
# One metadata header line, then one record per line:
#   position \t external-node-id \t degree \t weight \t walker \t n1,n2,...
# Node ids in record lines are external ids when a graph is supplied for
# writing, otherwise the record's own node keys.

_HEADER_PREFIX = "graphsize-sample v1"


def write_sample(s: Sample, sink: IO[str], g: Graph | None = None) -> None:
    """Write the line-oriented sample format (bit-exact, documented above)."""
    sink.write(f"{_HEADER_PREFIX}\tmethod={s.method}\tseed={s.seed}"
               f"\tweight_rule={s.weight_rule}\tgraph_digest={s.graph_digest}"
               f"\trng={s.rng_name}\tn={len(s)}\n")
    to_ext = g.ext_id if g is not None else (lambda v: v)
    for r in s.records:
        nbrs = ",".join(str(to_ext(u)) for u in r.neighbors)
        sink.write(f"{r.position}\t{to_ext(r.node)}\t{r.degree}"
                   f"\t{r.weight!r}\t{r.walker}\t{nbrs}\n")


def read_sample(source: IO[str]) -> Sample:
    """Read a sample file; node keys are the external ids as written."""
    header = source.readline().rstrip("\n")
    fields = header.split("\t")
    if not fields or fields[0] != _HEADER_PREFIX:
        raise SamplingError("not a graphsize sample file")
    meta = dict(f.split("=", 1) for f in fields[1:])
    records = []
    for line in source:
        line = line.rstrip("\n")
        if not line:
            continue
        pos, node, deg, weight, walker, nbrs = line.split("\t")
        neighbors = tuple(int(x) for x in nbrs.split(",")) if nbrs else ()
        records.append(SampleRecord(int(pos), int(node), int(deg),
                                    float(weight), neighbors, int(walker)))
    s = Sample(tuple(records), meta["method"], int(meta["seed"]),
               meta["weight_rule"], meta["graph_digest"],
               rng_name=meta.get("rng", RNG_NAME))
    if len(s) != int(meta["n"]):
        raise SamplingError("record count does not match header")
    return s


def reindexed(s: Sample, records: Sequence[SampleRecord],
              provenance: str) -> Sample:
    """Derive a new sample from a subset of records, positions renumbered."""
    renum = tuple(replace(r, position=i) for i, r in enumerate(records))
    return Sample(renum, s.method, s.seed, s.weight_rule, s.graph_digest,
                  rng_name=s.rng_name, provenance=provenance)
