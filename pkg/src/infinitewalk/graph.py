"""Undirected weighted graphs: loading, component extraction, walkability checks.

A graph is stored as a canonical edge list (u < v, one entry per pair, weights
merged by summation) together with precomputed degrees and volume. All
downstream linear algebra derives its matrices from here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np


class GraphError(Exception):
    """Base class for graph construction and validation failures."""


class EdgeListError(GraphError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class WalkabilityError(GraphError):
    """The graph does not admit a well-mixed random walk."""


class Disconnected(WalkabilityError):
    def __init__(self, component_sizes: list[int]):
        sizes = sorted(component_sizes, reverse=True)
        super().__init__(f"graph is disconnected; component sizes {sizes}")
        self.component_sizes = sizes


class Bipartite(WalkabilityError):
    def __init__(self, coloring: np.ndarray):
        super().__init__("graph is bipartite; a 2-coloring exists")
        self.coloring = coloring


class IsolatedNode(WalkabilityError):
    def __init__(self, node: int):
        super().__init__(f"node {node} has zero degree")
        self.node = node


@dataclass(frozen=True)
class Graph:
    """Immutable undirected weighted graph.

    edges holds each undirected edge once with u <= v (self-loops are
    disallowed, so in fact u < v). node_names maps dense ids back to the
    original string ids of the input file, when known.
    """

    n: int
    edge_u: np.ndarray  # int array, shape (m,)
    edge_v: np.ndarray  # int array, shape (m,)
    edge_w: np.ndarray  # float array, shape (m,)
    degree: np.ndarray = field(default=None)  # type: ignore[assignment]
    volume: float = 0.0
    node_names: tuple[str, ...] | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edge_u)

    def adjacency(self) -> np.ndarray:
        """Dense symmetric adjacency matrix A."""
        a = np.zeros((self.n, self.n))
        a[self.edge_u, self.edge_v] = self.edge_w
        a[self.edge_v, self.edge_u] = self.edge_w
        return a

    def name_of(self, i: int) -> str:
        if self.node_names is not None:
            return self.node_names[i]
        return str(i)


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int, float]],
    node_names: tuple[str, ...] | None = None,
) -> Graph:
    """Canonicalize an edge iterable into a Graph.

    Duplicate (u, v) pairs are merged by summing weights; orientation is
    normalized to u < v. Self-loops and non-positive weights are rejected.
    """
    merged: dict[tuple[int, int], float] = {}
    for u, v, w in edges:
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        if w <= 0:
            raise GraphError(f"non-positive weight {w} on edge ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) outside node range [0, {n})")
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0.0) + float(w)

    if merged:
        keys = sorted(merged)
        eu = np.array([k[0] for k in keys], dtype=np.int64)
        ev = np.array([k[1] for k in keys], dtype=np.int64)
        ew = np.array([merged[k] for k in keys], dtype=np.float64)
    else:
        eu = np.zeros(0, dtype=np.int64)
        ev = np.zeros(0, dtype=np.int64)
        ew = np.zeros(0, dtype=np.float64)

    degree = np.zeros(n)
    np.add.at(degree, eu, ew)
    np.add.at(degree, ev, ew)
    # defined as 2 * total edge weight so the identity holds bit-exactly
    volume = float(2.0 * ew.sum())
    return Graph(
        n=n,
        edge_u=eu,
        edge_v=ev,
        edge_w=ew,
        degree=degree,
        volume=volume,
        node_names=node_names,
    )


def load_edge_list(source: IO[str]) -> Graph:
    """Parse a whitespace-separated edge list.

    Each non-empty, non-comment ('#') line is "u v" or "u v w". Node ids are
    arbitrary non-whitespace tokens, remapped to dense ints in first-seen
    order; the original ids are kept in node_names.
    """
    ids: dict[str, int] = {}
    raw_edges: list[tuple[int, int, float]] = []

    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) not in (2, 3):
            raise EdgeListError(
                f"expected 2 or 3 tokens, got {len(tokens)}", lineno
            )
        su, sv = tokens[0], tokens[1]
        if su == sv:
            raise EdgeListError(f"self-loop on node {su!r}", lineno)
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise EdgeListError(f"bad weight {tokens[2]!r}", lineno) from None
            if not np.isfinite(w) or w <= 0:
                raise EdgeListError(f"non-positive weight {tokens[2]!r}", lineno)
        else:
            w = 1.0
        for s in (su, sv):
            if s not in ids:
                ids[s] = len(ids)
        raw_edges.append((ids[su], ids[sv], w))

    names = tuple(sorted(ids, key=ids.get))  # type: ignore[arg-type]
    return build_graph(len(ids), raw_edges, node_names=names)


def _components(g: Graph) -> list[list[int]]:
    """Connected components as lists of node ids (union-find)."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    groups: dict[int, list[int]] = {}
    for i in range(g.n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component, node ids re-densified.

    Ties in component size break toward the component containing the smallest
    node id. Name maps are composed through the relabeling.
    """
    if g.n == 0:
        raise GraphError("empty graph has no components")
    comps = _components(g)
    best = max(comps, key=lambda c: (len(c), -min(c)))
    best_sorted = sorted(best)
    keep = np.zeros(g.n, dtype=bool)
    keep[best_sorted] = True
    remap = -np.ones(g.n, dtype=np.int64)
    remap[best_sorted] = np.arange(len(best_sorted))

    mask = keep[g.edge_u] & keep[g.edge_v]
    edges = zip(
        remap[g.edge_u[mask]].tolist(),
        remap[g.edge_v[mask]].tolist(),
        g.edge_w[mask].tolist(),
    )
    names = None
    if g.node_names is not None:
        names = tuple(g.node_names[i] for i in best_sorted)
    else:
        names = tuple(str(i) for i in best_sorted)
    return build_graph(len(best_sorted), edges, node_names=names)


def validate_walkable(g: Graph) -> None:
    """Raise unless g is connected, non-bipartite, and free of isolated nodes.

    This is the gate in front of every PMI construction: the stationary
    distribution of the walk must exist and be unique.
    """
    if g.n == 0:
        raise GraphError("empty graph")
    zero = np.flatnonzero(g.degree == 0)
    if len(zero) > 0:
        raise IsolatedNode(int(zero[0]))
    comps = _components(g)
    if len(comps) > 1:
        raise Disconnected([len(c) for c in comps])

    # BFS 2-coloring; any odd edge certifies non-bipartiteness.
    neighbors: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        neighbors[u].append(v)
        neighbors[v].append(u)
    color = -np.ones(g.n, dtype=np.int64)
    color[0] = 0
    queue = [0]
    while queue:
        u = queue.pop()
        for v in neighbors[u]:
            if color[v] == -1:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                return  # odd cycle found
    raise Bipartite(color)


@dataclass(frozen=True)
class LabeledDataset:
    """Per-node label sets with dense label ids, optionally tied to a graph."""

    graph: Graph | None
    labels: tuple[frozenset[int], ...]
    num_labels: int
    label_names: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.labels)

    def label_counts(self) -> np.ndarray:
        return np.array([len(s) for s in self.labels], dtype=np.int64)


def load_label_sets(
    source: IO[str], node_names: Iterable[str], graph: Graph | None = None
) -> LabeledDataset:
    """Parse "node label [label ...]" lines against an ordered node-name list.

    Nodes absent from the file get empty label sets; lines naming unknown
    nodes are skipped (they belong to components dropped in preprocessing).
    Label tokens get dense ids in first-seen order.
    """
    name_to_id = {name: i for i, name in enumerate(node_names)}
    label_ids: dict[str, int] = {}
    per_node: list[set[int]] = [set() for _ in range(len(name_to_id))]

    for line in source:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        node_tok = tokens[0]
        if node_tok not in name_to_id:
            continue
        node = name_to_id[node_tok]
        for tok in tokens[1:]:
            if tok not in label_ids:
                label_ids[tok] = len(label_ids)
            per_node[node].add(label_ids[tok])

    names = tuple(sorted(label_ids, key=label_ids.get))  # type: ignore[arg-type]
    return LabeledDataset(
        graph=graph,
        labels=tuple(frozenset(s) for s in per_node),
        num_labels=len(label_ids),
        label_names=names,
    )


def load_labels(source: IO[str], graph: Graph) -> LabeledDataset:
    """Parse labels against a loaded graph's name map."""
    return load_label_sets(
        source, (graph.name_of(i) for i in range(graph.n)), graph=graph
    )
