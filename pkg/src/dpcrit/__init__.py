"""Exact DP-colouring tools for small multigraphs.

Covers and an exhaustive solver, the 4-Ore atlas, criticality scans,
potential bookkeeping and a discharging audit.
"""

from .cover import Cover, cover_space, dump_cover, identity_cover, load_cover
from .critical import (check_theorem_bound, is_dp_k_critical, is_h_minimal, is_HL_minimal,
                       scan_critical)
from .discharge import audit_charges, identify_S0, run_discharge
from .enumerate import enumerate_graphs, enumerate_multigraphs
from .graph_io import decode, encode, read_graphs, write_graphs
from .multigraph import MultiGraph, complete_graph, cycle_graph, is_gdp_tree, path_graph
from .ore import generate_4ore, is_4ore, moser_spindle
from .potential import rho, rho_set
from .solver import chi_dp, is_degree_colorable, is_dp_colorable, replay

__version__ = "0.1.0"

__all__ = [
    "Cover", "MultiGraph", "audit_charges", "check_theorem_bound", "chi_dp", "complete_graph",
    "cover_space", "cycle_graph", "decode", "dump_cover", "encode", "enumerate_graphs",
    "enumerate_multigraphs", "generate_4ore", "identify_S0", "identity_cover", "is_4ore",
    "is_HL_minimal", "is_degree_colorable", "is_dp_colorable", "is_dp_k_critical", "is_gdp_tree",
    "is_h_minimal", "load_cover", "moser_spindle", "path_graph", "read_graphs", "replay", "rho",
    "rho_set", "run_discharge", "scan_critical", "write_graphs",
]
