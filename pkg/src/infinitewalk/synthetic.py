"""Seeded synthetic graph generators for benchmarks and tests."""

from __future__ import annotations

import numpy as np

from .graph import Graph, LabeledDataset, WalkabilityError, build_graph
from .graph import largest_connected_component, validate_walkable


def complete_graph(n: int) -> Graph:
    edges = [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]
    return build_graph(n, edges)


def cycle_graph(n: int) -> Graph:
    edges = [(i, (i + 1) % n, 1.0) for i in range(n)]
    return build_graph(n, edges)


def triangle_with_pendant() -> Graph:
    """Triangle 0-1-2 plus the pendant edge 2-3."""
    return build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (2, 3, 1.0)])


def erdos_renyi_walkable(
    n: int, p: float, seed: int, weighted: bool = False, max_tries: int = 200
) -> Graph:
    """G(n, p) conditioned on being connected and non-bipartite.

    Redraws (with a fresh substream) until the sample is walkable; weighted
    samples get uniform weights in [0.5, 2.0).
    """
    for attempt in range(max_tries):
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence((seed, attempt)))
        )
        upper = rng.random((n, n)) < p
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if upper[i, j]:
                    w = 0.5 + 1.5 * rng.random() if weighted else 1.0
                    edges.append((i, j, w))
        g = build_graph(n, edges)
        try:
            validate_walkable(g)
        except WalkabilityError:
            continue
        return g
    raise RuntimeError(f"no walkable G({n}, {p}) sample in {max_tries} tries")


def sbm_labeled(
    sizes: list[int], p_in: float, p_out: float, seed: int
) -> LabeledDataset:
    """Stochastic block model with one label per node (its block).

    The sample is reduced to its largest connected component so the result
    is always usable downstream; labels follow the surviving nodes.
    """
    n = sum(sizes)
    block = np.repeat(np.arange(len(sizes)), sizes)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            p = p_in if block[i] == block[j] else p_out
            if rng.random() < p:
                edges.append((i, j, 1.0))
    g = build_graph(n, edges, node_names=tuple(str(i) for i in range(n)))
    g = largest_connected_component(g)
    validate_walkable(g)
    labels = tuple(
        frozenset({int(block[int(g.name_of(i))])}) for i in range(g.n)
    )
    return LabeledDataset(
        graph=g,
        labels=labels,
        num_labels=len(sizes),
        label_names=tuple(str(b) for b in range(len(sizes))),
    )
