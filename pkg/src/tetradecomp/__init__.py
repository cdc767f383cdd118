"""Canonical decomposition of 4-connected graphs along totally-nested tetra-separations."""

from .connectivity import connectivity, is_k_connected, is_quasi_k_connected, max_independent_paths
from .decomposition import build_decomposition, compressed_torso, expanded_torso, splitting_stars
from .errors import CapabilityError, InputError, InvariantError, TetraError
from .graph import Graph
from .pipeline import full_pipeline, tri_decompose, tutte_decomposition, ydelta
from .recognizers import classify_4_angry, classify_torso, verify_torso_class
from .separations import MixedSeparation, corner_diagram, crossing_classification, is_nested
from .tetra import (
    enumerate_tetra_separations,
    is_4_angry,
    is_externally_5_connected,
    is_tetra_separation,
    totally_nested_set,
)

__all__ = [
    "CapabilityError",
    "Graph",
    "InputError",
    "InvariantError",
    "MixedSeparation",
    "TetraError",
    "build_decomposition",
    "classify_4_angry",
    "classify_torso",
    "compressed_torso",
    "connectivity",
    "corner_diagram",
    "crossing_classification",
    "enumerate_tetra_separations",
    "expanded_torso",
    "full_pipeline",
    "is_4_angry",
    "is_externally_5_connected",
    "is_k_connected",
    "is_nested",
    "is_quasi_k_connected",
    "is_tetra_separation",
    "max_independent_paths",
    "splitting_stars",
    "totally_nested_set",
    "tri_decompose",
    "tutte_decomposition",
    "verify_torso_class",
    "ydelta",
]
