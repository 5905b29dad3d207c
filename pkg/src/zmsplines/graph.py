"""Edge-labeled graphs over Z/mZ and the canonical complete-graph edge order.

Vertices are 1-indexed (``1..n``); an edge is stored as ``(i, j)`` with
``i < j``. For complete graphs the edge ``(i, j)`` has canonical index
``r(j-1) + i`` where ``r(k) = k(k-1)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .arith import ModulusContext, SplineError, canonical_label


class GraphError(SplineError):
    pass


class ConnectivityError(GraphError):
    pass


def r(n: int) -> int:
    """Number of edges of the complete graph on ``n`` vertices."""
    return n * (n - 1) // 2


def edge_index(i: int, j: int) -> int:
    """Canonical 1-based index of edge ``v_i v_j`` in a complete graph."""
    if i > j:
        i, j = j, i
    if i < 1 or i == j:
        raise GraphError(f"invalid edge ({i}, {j})")
    return r(j - 1) + i


def edge_at(k: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    if k < 1:
        raise GraphError(f"edge index must be >= 1, got {k}")
    j = 2
    while r(j) < k:
        j += 1
    return k - r(j - 1), j


def canonical_edges(n: int) -> list[tuple[int, int]]:
    """Edges of K_n in canonical order e_1, e_2, ..."""
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


@dataclass(frozen=True)
class EdgeLabeledGraph:
    """A simple connected graph with edges labeled by divisors of ``m``."""

    ctx: ModulusContext
    n: int
    labels: Mapping[tuple[int, int], int] = field(hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        clean = {}
        for (u, v), lab in self.labels.items():
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            i, j = min(u, v), max(u, v)
            if not (1 <= i and j <= self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            if (i, j) in clean:
                raise GraphError(f"duplicate edge ({i}, {j})")
            clean[(i, j)] = canonical_label(int(lab), self.ctx)
        object.__setattr__(self, "labels", dict(sorted(clean.items(), key=lambda e: (e[0][1], e[0][0]))))
        if not _connected(self.n, clean):
            raise ConnectivityError(f"graph on {self.n} vertices is not connected")

    @property
    def m(self) -> int:
        return self.ctx.m

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(self.labels)

    def label(self, u: int, v: int) -> int:
        return self.labels[(min(u, v), max(u, v))]

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """``(neighbor, label)`` pairs of vertex ``v``."""
        out = []
        for (a, b), lab in self.labels.items():
            if a == v:
                out.append((b, lab))
            elif b == v:
                out.append((a, lab))
        return sorted(out)

    @property
    def is_complete(self) -> bool:
        return len(self.labels) == r(self.n)

    def complete_labels(self) -> list[int]:
        """Labels ``l_1..l_{r_n}`` in canonical order (complete graphs only)."""
        if not self.is_complete:
            raise GraphError("graph is not complete")
        return [self.labels[e] for e in canonical_edges(self.n)]

    def has_proper_labels(self) -> bool:
        return all(1 < lab < self.m for lab in self.labels.values())

    def label_matrix(self):
        """Dense ``n x n`` int64 array of labels, 0 where there is no edge."""
        import numpy as np

        A = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), lab in self.labels.items():
            A[i - 1, j - 1] = A[j - 1, i - 1] = lab
        return A


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _check_proper(labels: Sequence[int], ctx: ModulusContext) -> list[int]:
    out = []
    for lab in labels:
        c = canonical_label(int(lab), ctx)
        if lab <= 0 or not 1 < c < ctx.m:
            raise GraphError(f"label {lab} does not generate a nonzero proper ideal of Z/{ctx.m}Z")
        out.append(c)
    return out


def complete_from_labels(n: int, labels: Sequence[int], ctx: ModulusContext) -> EdgeLabeledGraph:
    """K_n with ``labels[k-1]`` on the edge of canonical index ``k``."""
    if n < 3:
        raise GraphError(f"canonical complete-graph labeling needs n >= 3, got {n}")
    if len(labels) != r(n):
        raise GraphError(f"K_{n} needs {r(n)} labels, got {len(labels)}")
    labs = _check_proper(labels, ctx)
    return EdgeLabeledGraph(ctx, n, dict(zip(canonical_edges(n), labs)))


def complete_graph(n: int, labels: Sequence[int], ctx: ModulusContext) -> EdgeLabeledGraph:
    """Like :func:`complete_from_labels` but also admits K_1 and K_2."""
    if n >= 3:
        return complete_from_labels(n, labels, ctx)
    if len(labels) != r(n):
        raise GraphError(f"K_{n} needs {r(n)} labels, got {len(labels)}")
    return EdgeLabeledGraph(ctx, n, dict(zip(canonical_edges(n), _check_proper(labels, ctx))))


def add_star(g: EdgeLabeledGraph, star_labels: Sequence[int]) -> EdgeLabeledGraph:
    """K_{n+1} = K_n + S_n; ``star_labels[i-1]`` labels edge ``v_i v_{n+1}``."""
    if not g.is_complete:
        raise GraphError("add_star needs a complete graph")
    if len(star_labels) != g.n:
        raise GraphError(f"star on K_{g.n} needs {g.n} labels, got {len(star_labels)}")
    labs = _check_proper(star_labels, g.ctx)
    new = dict(g.labels)
    for i, lab in enumerate(labs, start=1):
        new[(i, g.n + 1)] = lab
    return EdgeLabeledGraph(g.ctx, g.n + 1, new)


def spanning_subgraph(g: EdgeLabeledGraph, keep: Iterable[tuple[int, int]]) -> EdgeLabeledGraph:
    """Same vertices, only the edges in ``keep``; labels carried over."""
    sub = {}
    for u, v in keep:
        e = (min(u, v), max(u, v))
        if e not in g.labels:
            raise GraphError(f"edge {e} is not in the graph")
        sub[e] = g.labels[e]
    return EdgeLabeledGraph(g.ctx, g.n, sub)


# -- standard edge sets ------------------------------------------------------


def path_edges(order: Sequence[int]) -> list[tuple[int, int]]:
    return [(order[k], order[k + 1]) for k in range(len(order) - 1)]


def cycle_edges(order: Sequence[int]) -> list[tuple[int, int]]:
    return path_edges(order) + [(order[-1], order[0])]


def star_edges(n: int, center: int) -> list[tuple[int, int]]:
    return [(center, v) for v in range(1, n + 1) if v != center]


def wheel_edges(n: int, hub: int) -> list[tuple[int, int]]:
    """Hub joined to every other vertex, plus the cycle through the rest in index order."""
    rim = [v for v in range(1, n + 1) if v != hub]
    return star_edges(n, hub) + cycle_edges(rim)


def from_edge_labels(n: int, labeled: Mapping[tuple[int, int], int] | Sequence, ctx: ModulusContext) -> EdgeLabeledGraph:
    """Build a graph from ``{(u, v): label}`` or ``[(u, v, label), ...]``."""
    if isinstance(labeled, Mapping):
        return EdgeLabeledGraph(ctx, n, dict(labeled))
    return EdgeLabeledGraph(ctx, n, {(u, v): lab for u, v, lab in labeled})
