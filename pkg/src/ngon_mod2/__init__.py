"""Mod-2 obstructions to periodicity on the double regular n-gon and its staircase model."""
from .analysis import Certificate, SearchBudget, certify_direction, find_witness, reachable_reductions, survey
from .hecke_orbit import gens, orbit_contains, orbit_mod2, strict_inclusion
from .mod_two import Inconclusive, ProjClass, psi, ring
from .number_field import field, min_poly
from .surfaces import StaircasePoint, build_double_ngon, build_staircase, matrix_p
from .tracer import theorem_direction, theorem_separatrix_trace, trace

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "Inconclusive",
    "ProjClass",
    "SearchBudget",
    "StaircasePoint",
    "build_double_ngon",
    "build_staircase",
    "certify_direction",
    "field",
    "find_witness",
    "gens",
    "matrix_p",
    "min_poly",
    "orbit_contains",
    "orbit_mod2",
    "psi",
    "reachable_reductions",
    "ring",
    "strict_inclusion",
    "survey",
    "theorem_direction",
    "theorem_separatrix_trace",
    "trace",
]
