"""Exact brute-force width oracles for small graphs."""
from .caps import DEFAULT_CAPS, cap_for, check_cap
from .layered import enumerate_layerings, exact_layered_pathwidth, exact_layered_treewidth
from .minor import find_clique_minor
from .row import exact_row_pathwidth, exact_row_treewidth, host_decomposition, row_width_decision
from .widths import exact_pathwidth, exact_treewidth

__all__ = [
    "DEFAULT_CAPS", "cap_for", "check_cap", "enumerate_layerings", "exact_layered_pathwidth",
    "exact_layered_treewidth", "find_clique_minor", "exact_row_pathwidth", "exact_row_treewidth",
    "host_decomposition", "row_width_decision", "exact_pathwidth", "exact_treewidth",
]
