import random

import pytest

from zmsplines.arith import factorize
from zmsplines.constructions import (
    CRITERION_MINIMUM,
    GENERATING_ONLY,
    RANK_MATCHED_MINIMUM,
    ConstructionError,
    GeneratingSet,
    check_star_hypothesis,
    flow_up_generating_set,
    is_chain,
    minimum_generating_set,
    pq_rank,
    prime_power_unordered,
    rank_one_pq,
    son_decreasing,
    son_increasing,
    star_extension,
    threshold_component,
)
from zmsplines.graph import complete_from_labels, complete_graph, r
from zmsplines.lattice import build_spline_lattice, module_invariants, spans
from zmsplines.splines import is_spline, smallest_leading_entry
from zmsplines.verify import check_flow_up_generators, check_minimum_criterion, enumerate_splines, oracle_rank

K5_POWERS = [8, 8, 8, 10, 8, 8, 8, 11, 12, 8]  # exponents of 5 in canonical edge order


def assert_construction_properties(g, gens, rank=None):
    assert all(is_spline(g, f) for f in gens.splines)
    assert sorted(gens.indices) == list(range(1, g.n + 1))
    assert check_minimum_criterion(gens.splines, g.ctx)
    lat = build_spline_lattice(g)
    assert spans(lat, gens.splines)
    assert len(gens) == module_invariants(lat).rank == gens.rank
    if rank is not None:
        assert gens.rank == rank
    for i in range(2, g.n + 1):
        lead = gens.splines[gens.indices.index(i)][i - 1]
        assert smallest_leading_entry(g, i, use_trails=g.n <= 4) == (lead, False)


def test_son_decreasing_small():
    g, gens = son_decreasing(3, [4, 4, 2], factorize(8))
    assert gens.splines == [(1, 1, 1), (0, 4, 0), (0, 0, 4)]
    assert gens.certificate == CRITERION_MINIMUM
    assert_construction_properties(g, gens, rank=3)
    assert oracle_rank(g) == 3


def test_son_decreasing_leading_positions():
    ctx = factorize(2**12)
    chain = [2 ** (11 - k) for k in range(10)]
    g, gens = son_decreasing(5, chain, ctx)
    assert gens.splines[3] == (0, 0, 0, chain[3], 0)  # a_4 at v_4
    assert gens.splines[4] == (0, 0, 0, 0, chain[r(4)])
    assert_construction_properties(g, gens, rank=5)


def test_son_increasing_constant_chain():
    g, gens = son_increasing(4, [6] * 6, factorize(36))
    assert gens.splines == [(1, 1, 1, 1), (0, 6, 6, 6), (0, 0, 6, 6), (0, 0, 0, 6)]
    assert_construction_properties(g, gens, rank=4)
    assert oracle_rank(g) == 4


def test_son_increasing_second_generator():
    ctx = factorize(2**12)
    chain = [2 ** (k + 1) for k in range(10)]
    g, gens = son_increasing(5, chain, ctx)
    a = chain[r(5) - 3 - 1]
    assert gens.splines[1] == (0, a, a, a, a)
    assert_construction_properties(g, gens, rank=5)


def test_son_rejects_bad_chains():
    ctx = factorize(8)
    with pytest.raises(ConstructionError):
        son_decreasing(3, [2, 4, 4], ctx)
    with pytest.raises(ConstructionError):
        son_increasing(3, [4, 4, 2], ctx)
    with pytest.raises(ConstructionError):
        son_increasing(3, [2, 4, 8], ctx)
    with pytest.raises(ConstructionError):
        son_decreasing(3, [4, 2], ctx)
    with pytest.raises(ConstructionError):
        son_decreasing(2, [2], ctx)
    assert is_chain([2, 2, 4], ctx, increasing=True)
    assert not is_chain([2, 2, 4], ctx, increasing=False)


def test_prime_power_k5():
    ctx = factorize(5**15)
    g = complete_from_labels(5, [5**e for e in K5_POWERS], ctx)
    gens = prime_power_unordered(g, check_trails=True)
    assert gens.splines[1:] == [
        (0, 5**8, 5**8, 0, 5**8),
        (0, 0, 5**11, 0, 5**11),
        (0, 0, 0, 5**10, 0),
        (0, 0, 0, 0, 5**12),
    ]
    assert_construction_properties(g, gens, rank=5)


def test_prime_power_all_exponent_one():
    g = complete_from_labels(4, [3] * 6, factorize(27))
    gens = prime_power_unordered(g)
    assert gens.splines[1:] == [(0, 3, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3)]
    assert threshold_component(g, 2, 3, 2) == {2}


def test_prime_power_agrees_with_son_on_chains():
    ctx = factorize(2**9)
    dec = [2 ** e for e in (8, 7, 7, 6, 5, 5)]
    inc = dec[::-1]
    g, son = son_decreasing(4, dec, ctx)
    assert prime_power_unordered(g, check_trails=True).splines == son.splines
    # increasing chains: same leading entries, but the threshold component of
    # v_i can be smaller than v_i..v_n, so the vectors themselves may differ
    g, son = son_increasing(4, inc, ctx)
    pp = prime_power_unordered(g, check_trails=True)
    assert [f[i] for i, f in enumerate(pp.splines)] == [f[i] for i, f in enumerate(son.splines)]
    assert pp.splines[1] == (0, 2**7, 0, 0) and son.splines[1] == (0, 2**7, 2**7, 2**7)
    lat = build_spline_lattice(g)
    assert spans(lat, pp.splines) and spans(lat, son.splines)


def test_prime_power_random_matches_oracle():
    rng = random.Random(29)
    ctx = factorize(2**4)
    for _ in range(25):
        g = complete_from_labels(4, [2 ** rng.randint(1, 3) for _ in range(6)], ctx)
        gens = prime_power_unordered(g, check_trails=True)
        assert_construction_properties(g, gens, rank=4)
        assert oracle_rank(g) == 4


def test_prime_power_errors():
    with pytest.raises(ConstructionError):
        prime_power_unordered(complete_from_labels(3, [2, 3, 2], factorize(6)))


@pytest.mark.parametrize("n", [4, 5])
def test_rank_one_pq(n):
    g = rank_one_pq(n, 2, 3, factorize(6))
    assert module_invariants(build_spline_lattice(g)).rank == 1
    assert enumerate_splines(g) == [(c,) * n for c in range(6)]
    assert g.label(1, 2) == 2 and g.label(1, 3) == 3


def test_rank_one_pq_prime_powers():
    g = rank_one_pq(4, 4, 9, factorize(36))
    assert oracle_rank(g) == 1


def test_rank_one_pq_rejects_triangle():
    with pytest.raises(ConstructionError):
        rank_one_pq(3, 2, 3, factorize(6))


def test_star_extension_from_edge():
    ctx = factorize(6)
    k2 = complete_graph(2, [2], ctx)
    assert check_star_hypothesis(k2, 2) == 2
    up = star_extension(k2, "all_p")
    same = star_extension(k2, "one_q")
    assert oracle_rank(up) == 3
    assert oracle_rank(same) == 2
    assert same.label(1, 3) == 3 and same.label(2, 3) == 2
    with pytest.raises(ConstructionError):
        star_extension(k2, "sideways")


def test_all_p_chain():
    ctx = factorize(15)
    g = complete_graph(2, [3], ctx)
    for n in range(3, 6):
        g = star_extension(g, "all_p", 3)
        assert module_invariants(build_spline_lattice(g)).rank == n


def test_pq_rank_edge_case():
    ctx = factorize(6)
    g = pq_rank(2, 2, ctx)
    assert g.labels == {(1, 2): 2}
    gens = flow_up_generating_set(g)
    assert gens.splines == [(1, 1), (0, 2)]


@pytest.mark.parametrize("n, i", [(5, 3), (4, 4), (4, 2)])
def test_pq_rank_oracle(n, i):
    assert oracle_rank(pq_rank(n, i, factorize(6))) == i


def test_pq_rank_errors():
    ctx = factorize(6)
    with pytest.raises(ConstructionError):
        pq_rank(4, 5, ctx)
    with pytest.raises(ConstructionError):
        pq_rank(4, 1, ctx)
    with pytest.raises(ConstructionError):
        pq_rank(4, 2, factorize(12))


def test_flow_up_generating_set_certificates(c5, p3):
    gens = flow_up_generating_set(c5)
    assert gens.certificate == GENERATING_ONLY and len(gens) == 4 and gens.rank == 3
    assert check_flow_up_generators(c5, gens.splines)
    gens = flow_up_generating_set(p3)
    assert gens.splines == [(1, 1, 1), (0, 2, 0), (0, 0, 3)]
    assert gens.certificate == GENERATING_ONLY and gens.rank == 2


def test_rank_matched_certificate():
    # non-constant flow-up generator, but the flow-up set is already minimum
    from zmsplines.graph import from_edge_labels

    g = from_edge_labels(3, [(1, 2, 2), (2, 3, 3), (1, 3, 4)], factorize(36))
    gens = flow_up_generating_set(g)
    assert gens.splines == [(1, 1, 1), (0, 2, 8), (0, 0, 12)]
    assert gens.rank == 3
    assert gens.certificate == RANK_MATCHED_MINIMUM


def test_minimum_generating_set_dispatch():
    ctx = factorize(2**12)
    dec = [2 ** (11 - k) for k in range(6)]
    g, son = son_decreasing(4, dec, ctx)
    assert minimum_generating_set(g).splines == son.splines
    g, son = son_increasing(4, dec[::-1], ctx)
    assert minimum_generating_set(g).splines == son.splines
    g = complete_from_labels(5, [5**e for e in K5_POWERS], factorize(5**15))
    assert minimum_generating_set(g).certificate == CRITERION_MINIMUM


def test_generating_set_rejects_unknown_certificate():
    with pytest.raises(ValueError):
        GeneratingSet([(1, 1)], "probably-minimum")
