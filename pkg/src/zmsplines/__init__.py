"""Generalized spline modules on edge-labeled graphs over Z/mZ."""

from .arith import ModulusContext, SplineError, canonical_label, factorize, lcm_reduced
from .constructions import (
    GeneratingSet,
    minimum_generating_set,
    pq_rank,
    prime_power_unordered,
    rank_one_pq,
    son_decreasing,
    son_increasing,
    star_extension,
)
from .graph import EdgeLabeledGraph, add_star, complete_from_labels, from_edge_labels, spanning_subgraph
from .lattice import build_spline_lattice, flow_up_basis, module_invariants, spans
from .splines import construct_flow_up, is_spline, smallest_leading_entry
from .verify import check_flow_up_generators, check_minimum_criterion, enumerate_splines, oracle_rank

__version__ = "0.1.0"
