"""Independent checks: flow-up generator test, minimality criterion, brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .arith import LatticeAccumulator, ModulusContext, SplineError, smith_normal_form
from .graph import EdgeLabeledGraph
from .kernels import DEFAULT_BUDGET, OracleInfeasibleError, additive_closure, enumerate_residue_splines
from .lattice import build_spline_lattice, flow_up_basis
from .splines import flow_up_index, is_constant_flow_up, leading_lcm, violated_edge

__all__ = [
    "Check",
    "OracleInfeasibleError",
    "check_flow_up_generators",
    "check_minimum_criterion",
    "elementary_rank",
    "enumerate_splines",
    "enumerate_splines_array",
    "oracle_invariants",
    "oracle_rank",
    "span_closure",
    "leading_entry_audit",
]


@dataclass
class Check:
    """Outcome of a verification; truthy iff it passed."""

    ok: bool
    reason: str = ""
    failing_index: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def check_flow_up_generators(g: EdgeLabeledGraph, splines: Sequence[Sequence[int]]) -> Check:
    """Whether ``splines`` (one per flow-up index) generate the module.

    Index ``i`` passes when the generator's leading entry generates the same
    ideal as the smallest achievable leading entry; indices where no flow-up
    class exists must have no generator.
    """
    if len(splines) > g.n:
        raise SplineError(f"{len(splines)} generators for {g.n} vertices")
    by_index: dict[int, tuple[int, ...]] = {}
    for f in splines:
        f = tuple(int(x) % g.m for x in f)
        edge = violated_edge(g, f)
        if edge is not None:
            raise SplineError(f"{f} is not a spline (edge {edge})")
        i = flow_up_index(f)
        if i is None:
            raise SplineError("the zero spline is not a flow-up class")
        if i in by_index:
            raise SplineError(f"two generators with flow-up index {i}")
        by_index[i] = f
    report = flow_up_basis(build_spline_lattice(g))
    for i in range(1, g.n + 1):
        ideal = report.leading_ideals[i - 1]
        f = by_index.get(i)
        if f is None:
            if ideal != g.m:
                return Check(False, f"no generator at index {i}; leading ideal <{ideal}> is nonzero", i)
            continue
        got = gcd(f[i - 1], g.m)
        if got != ideal:
            return Check(
                False,
                f"index {i}: leading entry {f[i - 1]} generates <{got}>, smallest leading ideal is <{ideal}>",
                i,
            )
    return Check(True, "flow-up generators", details={"leading_ideals": list(report.leading_ideals)})


def check_minimum_criterion(splines: Sequence[Sequence[int]], ctx: ModulusContext) -> Check:
    """Constant-flow-up chain criterion for a minimum generating set.

    Requires the all-ones spline, every other member a constant flow-up class
    with constant ``c_i``, and the constants (with 1) totally ordered by
    divisibility in Z/mZ.
    """
    vecs = [tuple(int(x) % ctx.m for x in f) for f in splines]
    if not vecs:
        return Check(False, "empty set")
    ones = next((k for k, f in enumerate(vecs) if all(x == 1 % ctx.m for x in f)), None)
    if ones is None:
        return Check(False, "missing the trivial spline (1,...,1)")
    constants = [1]
    for k, f in enumerate(vecs):
        if k == ones:
            continue
        ok, c = is_constant_flow_up(f)
        if not ok:
            return Check(False, f"{f} is not a constant flow-up class", flow_up_index(f))
        constants.append(c)
    ideals = [gcd(c, ctx.m) for c in constants]
    for a in range(len(ideals)):
        for b in range(a + 1, len(ideals)):
            x, y = ideals[a], ideals[b]
            if x % y and y % x:
                return Check(
                    False,
                    f"constants {constants[a]},{constants[b]} incomparable",
                    details={"constants": constants},
                )
    chain = sorted(range(len(constants)), key=lambda k: (ideals[k], k))
    return Check(True, "criterion holds", details={"constants": constants, "chain": [constants[k] for k in chain]})


# -- exhaustive oracles --------------------------------------------------------


def enumerate_splines_array(g: EdgeLabeledGraph, budget: int = DEFAULT_BUDGET, backend=None) -> np.ndarray:
    rows, _ = enumerate_residue_splines(g.label_matrix(), g.m, budget, backend)
    return rows


def enumerate_splines(g: EdgeLabeledGraph, budget: int = DEFAULT_BUDGET, backend=None) -> list[tuple[int, ...]]:
    """Every spline of ``g`` over Z/mZ in lexicographic order.

    Raises :class:`OracleInfeasibleError` rather than truncating.
    """
    return [tuple(int(x) for x in row) for row in enumerate_splines_array(g, budget, backend)]


def oracle_invariants(g: EdgeLabeledGraph, budget: int = DEFAULT_BUDGET, backend=None, rows=None) -> tuple[int, ...]:
    """Smith invariants of (all enumerated splines, lifted) plus ``m I``.

    Shares nothing with the constraint-kernel lattice construction. Pass
    ``rows`` to reuse an enumeration already in hand.
    """
    if rows is None:
        rows = enumerate_splines_array(g, budget, backend)
    acc = LatticeAccumulator(g.n)
    for r in range(g.n):
        acc.add([g.m if c == r else 0 for c in range(g.n)])
    for row in rows:
        acc.add([int(x) for x in row])
    return smith_normal_form(acc.basis(), g.n).d


def oracle_rank(g: EdgeLabeledGraph, budget: int = DEFAULT_BUDGET, backend=None) -> int:
    return sum(1 for d in oracle_invariants(g, budget, backend) if d != g.m)


def elementary_rank(rows: np.ndarray, ctx: ModulusContext) -> int:
    """Minimal generator count of a finite subgroup of (Z/mZ)^n, from ``|G/pG|``.

    ``rows`` must list every element of the group exactly once.
    """
    if len(rows) == 0:
        return 0
    n = rows.shape[1]
    powers = np.array([ctx.m**k for k in range(n - 1, -1, -1)], dtype=object)
    best = 0
    for p, _ in ctx.factorization:
        scaled = (rows.astype(object) * p) % ctx.m
        image = len({int(x) for x in scaled.dot(powers)})
        quotient = len(rows) // image
        k = 0
        while quotient > 1:
            quotient //= p
            k += 1
        best = max(best, k)
    return best


def span_closure(gens: Sequence[Sequence[int]], ctx: ModulusContext, n: int, backend=None) -> np.ndarray:
    """All Z-combinations of ``gens`` mod m, as sorted residue rows."""
    return additive_closure(np.asarray([[int(x) % ctx.m for x in f] for f in gens], dtype=np.int64).reshape(-1, n),
                            ctx.m, n, backend)


def leading_entry_audit(g: EdgeLabeledGraph, rows, use_trails: bool = False) -> list[tuple[tuple[int, ...], int, int]]:
    """Entries of flow-up splines that are not multiples of their trail lcm.

    For every spline with ``i - 1`` leading zeros (``i >= 2``) and every
    ``j >= i`` whose lcm over ``k < i`` of ``v_j``-trail gcds is nonzero mod m,
    ``f_j`` must be a multiple of that lcm. Returns ``(spline, i, j)`` violations.
    """
    bounds: dict[tuple[int, int], int | None] = {}
    for i in range(2, g.n + 1):
        for j in range(i, g.n + 1):
            L, vanishes = leading_lcm(g, j, i, use_trails)
            bounds[(i, j)] = None if vanishes else L
    bad = []
    for row in rows:
        f = tuple(int(x) for x in row)
        i = flow_up_index(f)
        if i is None or i < 2:
            continue
        for j in range(i, g.n + 1):
            L = bounds[(i, j)]
            if L is not None and f[j - 1] % gcd(L, g.m):
                bad.append((f, i, j))
    return bad
