"""Toric steady states of mass-action networks via network translation."""

__version__ = "0.1.0"

from .core import Complex, CRNError, Network, NetworkError, TranslationScheme
from .dsl import ParseError, load_network, load_bundled_system, load_scheme, parse_network, parse_scheme
from .graph import deficiency, is_weakly_reversible, linkage_classes
from .numeric import ConvergenceError, find_steady_state, verify_basis
from .toric import HypothesisError, steady_state_basis, tree_constants, tree_constants_bruteforce
from .translation import GeneralizedNetwork, apply_scheme, check_proper

__all__ = [
    "Complex",
    "ConvergenceError",
    "CRNError",
    "GeneralizedNetwork",
    "HypothesisError",
    "Network",
    "NetworkError",
    "ParseError",
    "TranslationScheme",
    "apply_scheme",
    "check_proper",
    "deficiency",
    "find_steady_state",
    "is_weakly_reversible",
    "linkage_classes",
    "load_network",
    "load_bundled_system",
    "load_scheme",
    "parse_network",
    "parse_scheme",
    "steady_state_basis",
    "tree_constants",
    "tree_constants_bruteforce",
    "verify_basis",
]
