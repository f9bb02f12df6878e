"""Exact normal surface theory in standard and quadrilateral coordinates."""

from .coordinates import (
    QUAD,
    STANDARD,
    MatchingSystem,
    haken_sum,
    is_admissible,
    matching_system,
    project_to_quad,
    q_matching_system,
    quad_condition,
    quad_to_standard,
    standard_matching_system,
)
from .enumeration import BACKEND, enumerate_bruteforce, enumerate_dd
from .surface import NormalSurface, invariants, is_essential_disc, realize
from .triangulation import (
    Perm4,
    Triangulation,
    layered_solid_torus,
    load_triangulation,
    parse_triangulation,
)
from .unknot import PipelineConfig, Verdict, cross_check, recognize, survey

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "QUAD",
    "STANDARD",
    "MatchingSystem",
    "NormalSurface",
    "Perm4",
    "PipelineConfig",
    "Triangulation",
    "Verdict",
    "cross_check",
    "enumerate_bruteforce",
    "enumerate_dd",
    "haken_sum",
    "invariants",
    "is_admissible",
    "is_essential_disc",
    "layered_solid_torus",
    "load_triangulation",
    "matching_system",
    "parse_triangulation",
    "project_to_quad",
    "q_matching_system",
    "quad_condition",
    "quad_to_standard",
    "realize",
    "recognize",
    "standard_matching_system",
    "survey",
]
