"""Splines, flow-up classes, trails and smallest leading entries.

A spline is a tuple of residues ``(f_1, ..., f_n)`` in vertex order. The
edge condition ``f_u - f_v in <label>`` reduces to ``label | f_u - f_v``
because canonical labels divide ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterator, Sequence

from .arith import ModulusContext, SplineError, lcm_reduced
from .graph import EdgeLabeledGraph

Spline = tuple[int, ...]


@dataclass(frozen=True)
class FlowUpClass:
    spline: Spline
    index: int

    @property
    def leading_entry(self) -> int:
        return self.spline[self.index - 1]


@dataclass(frozen=True)
class Trail:
    """Alternating vertex/edge walk with no repeated edge."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def gcd(self, g: EdgeLabeledGraph) -> int:
        return reduce(gcd, (g.labels[e] for e in self.edges))


def _check_length(g: EdgeLabeledGraph, f: Sequence[int]):
    if len(f) != g.n:
        raise SplineError(f"vector has {len(f)} entries, graph has {g.n} vertices")


def violated_edge(g: EdgeLabeledGraph, f: Sequence[int]):
    """First edge ``(u, v)`` whose condition fails, or None."""
    _check_length(g, f)
    for (u, v), lab in g.labels.items():
        if (f[u - 1] - f[v - 1]) % lab:
            return (u, v)
    return None


def is_spline(g: EdgeLabeledGraph, f: Sequence[int]) -> bool:
    return violated_edge(g, f) is None


def flow_up_index(f: Sequence[int]) -> int | None:
    """1 + number of leading zeros; None for the zero vector."""
    for k, x in enumerate(f):
        if x:
            return k + 1
    return None


def is_constant_flow_up(f: Sequence[int]) -> tuple[bool, int | None]:
    """Whether all nonzero entries agree, and their common value."""
    nonzero = {x for x in f if x}
    if len(nonzero) == 1:
        return True, nonzero.pop()
    return False, None


def reduce_spline(f: Sequence[int], ctx: ModulusContext) -> Spline:
    return tuple(int(x) % ctx.m for x in f)


# -- trails and paths ----------------------------------------------------------


def _incidence(g: EdgeLabeledGraph):
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {v: [] for v in range(1, g.n + 1)}
    for e in g.labels:
        a, b = e
        adj[a].append((b, e))
        adj[b].append((a, e))
    for v in adj:
        adj[v].sort()
    return adj


def trails_between(g: EdgeLabeledGraph, i: int, k: int) -> Iterator[Trail]:
    """Every trail from ``v_i`` to ``v_k``, depth first over unused edges.

    Vertices may repeat (including passing through ``v_k`` and continuing).
    """
    if i == k:
        raise SplineError("trail endpoints must differ")
    adj = _incidence(g)
    used: set[tuple[int, int]] = set()
    verts = [i]
    edges: list[tuple[int, int]] = []

    def walk(v):
        for w, e in adj[v]:
            if e in used:
                continue
            used.add(e)
            verts.append(w)
            edges.append(e)
            if w == k:
                yield Trail(tuple(verts), tuple(edges))
            yield from walk(w)
            edges.pop()
            verts.pop()
            used.discard(e)

    yield from walk(i)


def simple_paths_between(g: EdgeLabeledGraph, i: int, k: int) -> Iterator[Trail]:
    """Trails from ``v_i`` to ``v_k`` that repeat no vertex."""
    if i == k:
        raise SplineError("path endpoints must differ")
    adj = _incidence(g)
    on_path = {i}
    verts = [i]
    edges: list[tuple[int, int]] = []

    def walk(v):
        for w, e in adj[v]:
            if w in on_path:
                continue
            verts.append(w)
            edges.append(e)
            if w == k:
                yield Trail(tuple(verts), tuple(edges))
            else:
                on_path.add(w)
                yield from walk(w)
                on_path.discard(w)
            edges.pop()
            verts.pop()

    yield from walk(i)


def trail_gcd_set(g: EdgeLabeledGraph, i: int, k: int) -> set[int]:
    return {t.gcd(g) for t in trails_between(g, i, k)}


def path_gcd_set(g: EdgeLabeledGraph, i: int, k: int) -> set[int]:
    return {t.gcd(g) for t in simple_paths_between(g, i, k)}


def leading_lcm(g: EdgeLabeledGraph, j: int, i: int, use_trails: bool = False) -> tuple[int, bool]:
    """lcm over ``k < i`` of the gcds of all ``v_j -> v_k`` trails.

    With ``j == i`` this is the smallest leading entry of an ``i``-th flow-up
    class; with ``j > i`` it bounds the ``j``-th entry of such a class from below.
    """
    if i < 2:
        raise SplineError(f"leading entries are defined for indices >= 2, got {i}")
    gcds = trail_gcd_set if use_trails else path_gcd_set
    values: set[int] = set()
    for k in range(1, i):
        values |= gcds(g, j, k)
    return lcm_reduced(values, g.ctx)


def smallest_leading_entry(g: EdgeLabeledGraph, i: int, use_trails: bool = False) -> tuple[int, bool]:
    """``(L mod m, vanishes)`` for the smallest leading entry at index ``i``.

    Simple paths give the same lcm as trails (a trail's gcd divides the gcd
    of any path inside it); ``use_trails`` switches to the full trail set.
    """
    if not 2 <= i <= g.n:
        raise SplineError(f"index {i} out of range 2..{g.n}")
    L, vanishes = leading_lcm(g, i, i, use_trails)
    return L % g.m, vanishes


def construct_flow_up(g: EdgeLabeledGraph, i: int, check_trails: bool = False) -> FlowUpClass | None:
    """An ``i``-th flow-up class with the smallest possible leading entry, or None.

    Built from the lattice flow-up basis; the leading entry is checked
    against the path (or trail) lcm whenever that lcm does not vanish.
    """
    from .lattice import build_spline_lattice, flow_up_basis

    if not 1 <= i <= g.n:
        raise SplineError(f"index {i} out of range 1..{g.n}")
    report = flow_up_basis(build_spline_lattice(g))
    col = report.column(i)
    spline = reduce_spline(col, g.ctx)
    if i >= 2:
        L, vanishes = smallest_leading_entry(g, i, use_trails=check_trails)
        if not vanishes and L != spline[i - 1]:
            raise AssertionError(f"lattice leading entry {spline[i - 1]} disagrees with trail lcm {L} at index {i}")
    if report.leading_ideals[i - 1] == g.m:
        return None
    return FlowUpClass(spline, i)
