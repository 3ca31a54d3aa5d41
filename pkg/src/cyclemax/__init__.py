"""Exact cycle counts and cycle-count bounds for triangle-free graphs."""

from .bounds import edge_bound, hmorph_bound, pi_max_product, turan_log_lower
from .cycles import count_cycles, count_cycles_by_length, turan_cycle_count
from .graph import BlowupSpec, Graph, GraphError, gamma_blowup, make_blowup, make_gamma
from .permanent import BlockMatrixSpec, block_permanent, cycle_bound_blowup, ryser_permanent

__all__ = [
    "BlockMatrixSpec",
    "BlowupSpec",
    "Graph",
    "GraphError",
    "block_permanent",
    "count_cycles",
    "count_cycles_by_length",
    "cycle_bound_blowup",
    "edge_bound",
    "gamma_blowup",
    "hmorph_bound",
    "make_blowup",
    "make_gamma",
    "pi_max_product",
    "ryser_permanent",
    "turan_cycle_count",
    "turan_log_lower",
]
