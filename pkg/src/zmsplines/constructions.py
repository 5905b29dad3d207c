"""Explicit generating sets and rank-controlling labelings for complete graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import ModulusContext, SplineError
from .graph import (
    EdgeLabeledGraph,
    GraphError,
    add_star,
    canonical_edges,
    complete_from_labels,
    complete_graph,
    r,
)
from .lattice import build_spline_lattice, flow_up_basis, module_invariants
from .splines import Spline, flow_up_index, is_constant_flow_up, is_spline, smallest_leading_entry

CRITERION_MINIMUM = "criterion-minimum"
RANK_MATCHED_MINIMUM = "rank-matched-minimum"
GENERATING_ONLY = "generating-only"
CERTIFICATES = (CRITERION_MINIMUM, RANK_MATCHED_MINIMUM, GENERATING_ONLY)


class ConstructionError(SplineError):
    pass


@dataclass
class GeneratingSet:
    splines: list[Spline]
    certificate: str
    rank: int | None = None
    invariant_factors: tuple[int, ...] = ()
    indices: list[int | None] = field(default_factory=list)
    constants: list[int | None] = field(default_factory=list)

    def __post_init__(self):
        if self.certificate not in CERTIFICATES:
            raise ValueError(f"unknown certificate {self.certificate!r}")
        self.splines = [tuple(int(x) for x in f) for f in self.splines]
        self.indices = [flow_up_index(f) for f in self.splines]
        self.constants = [is_constant_flow_up(f)[1] for f in self.splines]

    def __len__(self):
        return len(self.splines)


def _attach_invariants(g: EdgeLabeledGraph, gens: GeneratingSet) -> GeneratingSet:
    inv = module_invariants(build_spline_lattice(g))
    gens.rank = inv.rank
    gens.invariant_factors = inv.factors
    return gens


def _check_chain(labels: Sequence[int], ctx: ModulusContext, increasing: bool) -> list[int]:
    labels = [int(a) for a in labels]
    for a in labels:
        if a <= 1 or ctx.m % a or a == ctx.m:
            raise ConstructionError(f"chain label {a} must be a proper divisor of {ctx.m} greater than 1")
    seq = labels if increasing else labels[::-1]
    for lo, hi in zip(seq, seq[1:]):
        if hi % lo:
            raise ConstructionError(f"chain breaks: {lo} does not divide {hi}")
    return labels


def is_chain(labels: Sequence[int], ctx: ModulusContext, increasing: bool) -> bool:
    try:
        _check_chain(labels, ctx, increasing)
    except ConstructionError:
        return False
    return True


def son_decreasing(n: int, chain: Sequence[int], ctx: ModulusContext) -> tuple[EdgeLabeledGraph, GeneratingSet]:
    """K_n with ``a_{r_n} | ... | a_1 | m``; generators ``a_{r_{i-1}+1} e_i``."""
    if n < 3:
        raise ConstructionError("need n >= 3")
    if len(chain) != r(n):
        raise ConstructionError(f"K_{n} needs {r(n)} chain labels, got {len(chain)}")
    a = _check_chain(chain, ctx, increasing=False)
    g = complete_from_labels(n, a, ctx)
    splines = [tuple([1] * n)]
    for i in range(2, n + 1):
        f = [0] * n
        f[i - 1] = a[r(i - 1)]  # a_{r_{i-1}+1}, 0-based
        splines.append(tuple(f))
    return g, _attach_invariants(g, GeneratingSet(splines, CRITERION_MINIMUM))


def son_increasing(n: int, chain: Sequence[int], ctx: ModulusContext) -> tuple[EdgeLabeledGraph, GeneratingSet]:
    """K_n with ``a_1 | ... | a_{r_n} | m``; generator ``i`` is ``a_{r_n-(n-i)}`` on ``v_i..v_n``."""
    if n < 3:
        raise ConstructionError("need n >= 3")
    if len(chain) != r(n):
        raise ConstructionError(f"K_{n} needs {r(n)} chain labels, got {len(chain)}")
    a = _check_chain(chain, ctx, increasing=True)
    g = complete_from_labels(n, a, ctx)
    splines = [tuple([1] * n)]
    for i in range(2, n + 1):
        c = a[r(n) - (n - i) - 1]
        splines.append(tuple(0 if v < i else c for v in range(1, n + 1)))
    return g, _attach_invariants(g, GeneratingSet(splines, CRITERION_MINIMUM))


def _p_exponent(x: int, p: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    if x != 1:
        raise ConstructionError(f"{x} is not a power of {p}")
    return e


def threshold_component(g: EdgeLabeledGraph, start: int, p: int, b: int) -> set[int]:
    """Vertices reachable from ``start`` through edges labeled ``p^e`` with ``e >= b``."""
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w, lab in g.neighbors(v):
            if w not in comp and _p_exponent(lab, p) >= b:
                comp.add(w)
                stack.append(w)
    return comp


def prime_power_unordered(g: EdgeLabeledGraph, check_trails: bool = False) -> GeneratingSet:
    """Constant flow-up generators for K_n over Z/p^tZ with arbitrary labels ``p^{i_j}``."""
    ctx = g.ctx
    if not ctx.is_prime_power:
        raise ConstructionError(f"modulus {ctx.m} is not a prime power")
    if not g.is_complete:
        raise ConstructionError("prime_power_unordered needs a complete graph")
    (p, t), = ctx.factorization
    for lab in g.labels.values():
        if not 1 <= _p_exponent(lab, p) < t:
            raise ConstructionError(f"label {lab} must be p^e with 1 <= e < {t}")
    report = flow_up_basis(build_spline_lattice(g))
    splines = [tuple([1] * g.n)]
    for i in range(2, g.n + 1):
        d = report.diagonal[i - 1]
        if check_trails:
            L, vanishes = smallest_leading_entry(g, i, use_trails=True)
            if vanishes or L != d:
                raise AssertionError(f"trail lcm {L} disagrees with lattice diagonal {d} at index {i}")
        a_i = _p_exponent(d, p)
        comp = threshold_component(g, i, p, a_i + 1)
        if any(v < i for v in comp):
            raise AssertionError(f"component of v_{i} reaches an earlier vertex: {sorted(comp)}")
        splines.append(tuple(d if v in comp else 0 for v in range(1, g.n + 1)))
    return _attach_invariants(g, GeneratingSet(splines, CRITERION_MINIMUM))


def _two_primes(ctx: ModulusContext) -> tuple[tuple[int, int], tuple[int, int]]:
    if len(ctx.factorization) != 2:
        raise ConstructionError(f"modulus {ctx.m} is not of the form p^a q^b with two distinct primes")
    return ctx.factorization


def rank_one_pq(n: int, p_power: int, q_power: int, ctx: ModulusContext) -> EdgeLabeledGraph:
    """K_n with the path ``v_i v_{i+1}`` labeled ``p^a`` and every other edge ``q^b``."""
    if n < 4:
        raise ConstructionError("rank-one labeling needs n >= 4 (K_3 lacks two edge-disjoint spanning trees)")
    if p_power * q_power != ctx.m:
        raise ConstructionError(f"{p_power} * {q_power} != {ctx.m}")
    _two_primes(ctx)
    if len(_prime_support(p_power)) != 1 or len(_prime_support(q_power)) != 1:
        raise ConstructionError("labels must be prime powers")
    labels = [p_power if j == i + 1 else q_power for i, j in canonical_edges(n)]
    g = complete_from_labels(n, labels, ctx)
    inv = module_invariants(build_spline_lattice(g))
    if inv.rank != 1:
        raise AssertionError(f"rank-one construction produced rank {inv.rank}")
    return g


def _prime_support(x: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return out


def _pq(ctx: ModulusContext) -> tuple[int, int]:
    (p, a), (q, b) = _two_primes(ctx)
    if a != 1 or b != 1:
        raise ConstructionError(f"modulus {ctx.m} is not a product of two distinct primes")
    return p, q


def check_star_hypothesis(g: EdgeLabeledGraph, p: int) -> int:
    """Rank of ``g`` if its flow-up generators (beyond the constants) lie in <p>.

    The hypothesis is read as: every non-vanishing flow-up basis vector of
    index >= 2 has all entries divisible by ``p``, and together with the
    constant spline they form a set of size equal to the rank.
    """
    lat = build_spline_lattice(g)
    report = flow_up_basis(lat)
    gens = report.reduced(g.ctx)
    for f in gens[1:]:
        if any(x % p for x in f):
            raise ConstructionError(f"flow-up generator {f} has entries outside <{p}>")
    rank = module_invariants(lat).rank
    if rank != len(gens):
        raise ConstructionError(f"flow-up set of size {len(gens)} is not minimum (rank {rank})")
    return rank


def star_extension(g: EdgeLabeledGraph, mode: str, p: int | None = None) -> EdgeLabeledGraph:
    """K_{n+1} from K_n over Z/pqZ: ``all_p`` raises the rank by one, ``one_q`` keeps it."""
    P, Q = _pq(g.ctx)
    if p is None:
        p = P
    if p not in (P, Q):
        raise ConstructionError(f"{p} is not a prime factor of {g.m}")
    q = g.m // p
    before = check_star_hypothesis(g, p)
    if mode == "all_p":
        star = [p] * g.n
        expected = before + 1
    elif mode == "one_q":
        star = [q] + [p] * (g.n - 1)
        expected = before
    else:
        raise ConstructionError(f"unknown star mode {mode!r}")
    h = add_star(g, star)
    after = module_invariants(build_spline_lattice(h)).rank
    if after != expected:
        raise AssertionError(f"star extension ({mode}) gave rank {after}, expected {expected}")
    return h


def pq_rank(n: int, target: int, ctx: ModulusContext, p: int | None = None) -> EdgeLabeledGraph:
    """K_n over Z/pqZ with spline-module rank ``target`` (2 <= target <= n)."""
    P, _ = _pq(ctx)
    p = P if p is None else p
    if n < 2:
        raise ConstructionError("need n >= 2")
    if not 2 <= target <= n:
        raise ConstructionError(f"target rank must lie in 2..{n}, got {target}")
    g = complete_graph(2, [p], ctx)
    for _ in range(target - 2):
        g = star_extension(g, "all_p", p)
    for _ in range(n - target):
        g = star_extension(g, "one_q", p)
    rank = module_invariants(build_spline_lattice(g)).rank
    if rank != target:
        raise AssertionError(f"pq_rank built rank {rank}, wanted {target}")
    return g


def flow_up_generating_set(g: EdgeLabeledGraph) -> GeneratingSet:
    """The reduced lattice flow-up basis, certified as far as it can be."""
    from .verify import check_minimum_criterion

    gens = _attach_invariants(g, GeneratingSet(flow_up_basis(build_spline_lattice(g)).reduced(g.ctx), GENERATING_ONLY))
    if check_minimum_criterion(gens.splines, g.ctx).ok:
        gens.certificate = CRITERION_MINIMUM
    elif len(gens) == gens.rank:
        gens.certificate = RANK_MATCHED_MINIMUM
    return gens


def minimum_generating_set(g: EdgeLabeledGraph, check_trails: bool = False) -> GeneratingSet:
    """Dispatch to a closed-form construction when the labels fit one."""
    if g.n >= 3 and g.is_complete and g.has_proper_labels():
        labels = g.complete_labels()
        if is_chain(labels, g.ctx, increasing=False):
            return son_decreasing(g.n, labels, g.ctx)[1]
        if is_chain(labels, g.ctx, increasing=True):
            return son_increasing(g.n, labels, g.ctx)[1]
        if g.ctx.is_prime_power:
            return prime_power_unordered(g, check_trails=check_trails)
    return flow_up_generating_set(g)


def verify_members(g: EdgeLabeledGraph, gens: GeneratingSet) -> None:
    for f in gens.splines:
        if not is_spline(g, f):
            raise AssertionError(f"{f} is not a spline of the constructed graph")


__all__ = [
    "CERTIFICATES",
    "CRITERION_MINIMUM",
    "ConstructionError",
    "GENERATING_ONLY",
    "GeneratingSet",
    "GraphError",
    "RANK_MATCHED_MINIMUM",
    "check_star_hypothesis",
    "flow_up_generating_set",
    "is_chain",
    "minimum_generating_set",
    "pq_rank",
    "prime_power_unordered",
    "rank_one_pq",
    "son_decreasing",
    "son_increasing",
    "star_extension",
    "threshold_component",
    "verify_members",
]
