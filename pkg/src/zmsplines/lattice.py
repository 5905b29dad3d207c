"""Integer-lattice backend for spline modules over Z/mZ.

Splines mod m are reductions of integer splines for the labels gcd(l_e, m),
so the module is ``L / mZ^n`` with
``L = {f in Z^n : gcd(l_e, m) | f_u - f_v for every edge uv}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .arith import IntMatrix, ModulusContext, SplineError, hnf_rows, integer_kernel, smith_normal_form
from .graph import EdgeLabeledGraph
from .splines import Spline, is_spline, leading_lcm, reduce_spline


@dataclass(frozen=True)
class SplineLattice:
    graph: EdgeLabeledGraph
    generators: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]  # row-HNF of the generators, n x n

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class FlowUpBasisReport:
    """Triangular basis of L: vector ``i`` has ``i-1`` leading zeros and diagonal ``d_i > 0``."""

    basis: tuple[tuple[int, ...], ...]
    diagonal: tuple[int, ...]
    leading_ideals: tuple[int, ...]

    def column(self, i: int) -> tuple[int, ...]:
        return self.basis[i - 1]

    def reduced(self, ctx: ModulusContext, drop_vanishing: bool = True) -> list[Spline]:
        """Basis vectors mod m, in index order, skipping indices whose leading ideal is zero."""
        out = []
        for vec, ideal in zip(self.basis, self.leading_ideals):
            if drop_vanishing and ideal == ctx.m:
                continue
            out.append(reduce_spline(vec, ctx))
        return out


@dataclass(frozen=True)
class ModuleInvariants:
    """``L / mZ^n`` is the direct sum of ``Z/(m/delta_i)Z``."""

    m: int
    delta: tuple[int, ...]

    @property
    def factors(self) -> tuple[int, ...]:
        """Nontrivial cyclic orders in divisibility order."""
        return tuple(reversed([self.m // d for d in self.delta if d != self.m]))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.delta if d != self.m)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out


def _edge_ok(g: EdgeLabeledGraph, f: Sequence[int]) -> bool:
    return all((f[u - 1] - f[v - 1]) % lab == 0 for (u, v), lab in g.labels.items())


def build_spline_lattice(g: EdgeLabeledGraph) -> SplineLattice:
    """Generators of L from the integer kernel of ``[M | -D]``, plus ``m e_i``."""
    n = g.n
    edges = g.edges
    ncols = n + len(edges)
    A: IntMatrix = []
    for k, (u, v) in enumerate(edges):
        row = [0] * ncols
        row[u - 1] = 1
        row[v - 1] = -1
        row[n + k] = -g.labels[(u, v)]
        A.append(row)
    kernel = integer_kernel(A, ncols)
    gens = [tuple(vec[:n]) for vec in kernel]
    gens += [tuple(g.m if c == r else 0 for c in range(n)) for r in range(n)]
    for vec in gens:
        if not _edge_ok(g, vec):
            raise AssertionError(f"kernel vector {vec} violates an edge constraint")
    H, _ = hnf_rows(gens, n)
    if len(H) != n:
        raise AssertionError("spline lattice is not full rank")
    return SplineLattice(g, tuple(gens), tuple(tuple(r) for r in H))


def flow_up_basis(lat: SplineLattice, cross_check: bool = False, use_trails: bool = False) -> FlowUpBasisReport:
    """The triangular (HNF) basis of the spline lattice.

    With ``cross_check`` each diagonal entry ``d_i`` (``i >= 2``) is compared
    against the lcm of path (or trail) gcds.
    """
    g = lat.graph
    basis = lat.basis
    diag = []
    for i, vec in enumerate(basis):
        if any(vec[:i]) or vec[i] <= 0:
            raise AssertionError(f"basis vector {i + 1} is not a flow-up vector: {vec}")
        diag.append(vec[i])
    if cross_check:
        for i in range(2, g.n + 1):
            L, _ = leading_lcm(g, i, i, use_trails=use_trails)
            if L != diag[i - 1]:
                raise AssertionError(f"diagonal {diag[i - 1]} != trail lcm {L} at index {i}")
    ideals = tuple(gcd(d, g.m) for d in diag)
    return FlowUpBasisReport(basis, tuple(diag), ideals)


def module_invariants(lat: SplineLattice, ctx: ModulusContext | None = None) -> ModuleInvariants:
    """Invariant factors via the Smith form of the lattice basis (never its diagonal)."""
    m = (ctx or lat.graph.ctx).m
    snf = smith_normal_form([list(r) for r in lat.basis], lat.n)
    if len(snf.d) != lat.n or any(m % d for d in snf.d):
        raise AssertionError(f"unexpected invariant factors {snf.d} for modulus {m}")
    return ModuleInvariants(m, snf.d)


def lattice_of(g: EdgeLabeledGraph, vectors: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-HNF of ``vectors`` together with ``m e_i``."""
    rows = [list(map(int, v)) for v in vectors]
    rows += [[g.m if c == r else 0 for c in range(g.n)] for r in range(g.n)]
    H, _ = hnf_rows(rows, g.n)
    return tuple(tuple(r) for r in H)


def spans(lat: SplineLattice, gens: Sequence[Sequence[int]], ctx: ModulusContext | None = None) -> bool:
    """Whether ``gens`` generate the whole spline module over Z/mZ."""
    g = lat.graph
    for f in gens:
        if not is_spline(g, f):
            raise SplineError(f"{tuple(f)} is not a spline")
    return lattice_of(g, gens) == lat.basis
