"""Colour-critical graph toolkit: criticality, clique packings, Ore composition,
potentials and discharging, with an executable lemma-verification harness."""

from __future__ import annotations

from .catalog import catalog
from .cliques import clique_packing, find_kites, find_k4_minus_e, packing_number
from .colorings import chromatic_number, find_coloring, is_critical, is_k_critical
from .discharging import audit, run_discharging
from .graph import Graph
from .graph6 import from_graph6, to_graph6
from .ore import generate_family, is_class_b, is_k_ore, ore_compose
from .potential import classify_critical, find_extension, ky_potential, potential, quotient

__version__ = "0.1.0"

__all__ = [
    "Graph", "catalog", "from_graph6", "to_graph6",
    "find_coloring", "chromatic_number", "is_critical", "is_k_critical",
    "clique_packing", "packing_number", "find_kites", "find_k4_minus_e",
    "ore_compose", "generate_family", "is_k_ore", "is_class_b",
    "potential", "ky_potential", "quotient", "find_extension", "classify_critical",
    "run_discharging", "audit",
]
