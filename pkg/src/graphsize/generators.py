"""Seeded synthetic graph generators used by tests and the CLI.

All generators are deterministic given their parameters and seed, and return
:class:`~graphsize.graph.Graph` instances with external ids 0..N-1.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) via geometric skipping over the linearized upper triangle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    total = n * (n - 1) // 2
    if p > 0.0:
        # Geometric gaps between kept pair indices give O(E) work; indices
        # arrive sorted, so rows of the upper triangle advance monotonically.
        row, row_start, row_len = 0, 0, n - 1
        idx = -1
        while True:
            idx += int(rng.geometric(p))
            if idx >= total:
                break
            while idx >= row_start + row_len:
                row_start += row_len
                row += 1
                row_len = n - 1 - row
            edges.append((row, row + 1 + idx - row_start))
    return Graph.from_edges(edges, extra_nodes=range(n))


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment: each new node attaches to m existing nodes.

    Starts from an m-node path; attachment targets are drawn from the
    repeated-endpoints list, without duplicate targets per new node.
    """
    if m < 1 or n <= m:
        raise ValueError("need n > m >= 1")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = [(i, i + 1) for i in range(m - 1)]
    repeated: list[int] = []
    for a, b in edges:
        repeated += [a, b]
    if not repeated:
        repeated = [0]
    for v in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[int(rng.integers(len(repeated)))])
        for t in targets:
            edges.append((t, v))
            repeated += [t, v]
    return Graph.from_edges(edges, extra_nodes=range(n))


def ring_of_cliques(num_cliques: int, clique_size: int) -> Graph:
    """Cliques arranged in a ring, joined by single bridge edges."""
    if num_cliques < 1 or clique_size < 2:
        raise ValueError("need num_cliques >= 1 and clique_size >= 2")
    edges = []
    for c in range(num_cliques):
        base = c * clique_size
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                edges.append((base + i, base + j))
    for c in range(num_cliques):
        a = c * clique_size
        b = ((c + 1) % num_cliques) * clique_size
        if a != b:
            edges.append((a, b))
    return Graph.from_edges(edges)


def hub_of_cliques(num_cliques: int, clique_size: int) -> Graph:
    """A hub node joined to one member of each clique (skewed degrees)."""
    if num_cliques < 1 or clique_size < 2:
        raise ValueError("need num_cliques >= 1 and clique_size >= 2")
    edges = []
    hub = num_cliques * clique_size
    for c in range(num_cliques):
        base = c * clique_size
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                edges.append((base + i, base + j))
        edges.append((hub, base))
    return Graph.from_edges(edges)


def grid_2d(rows: int, cols: int) -> Graph:
    """Four-connected 2-D lattice (road-network stand-in)."""
    if rows < 1 or cols < 1:
        raise ValueError("need rows >= 1 and cols >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(edges, extra_nodes=range(rows * cols))
