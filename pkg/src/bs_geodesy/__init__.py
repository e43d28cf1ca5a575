"""Geodesics, growth and conjugation curvature in the Baumslag-Solitar groups BS(1,n)."""

from .cayley_oracle import bfs_ball, oracle_kappa, oracle_length
from .curvature_lab import FamilySpec, build_family, kappa, verify_family_sign
from .geodesic_automata import build_O2, build_strict1_acceptor, count_by_length, growth_rate, restrict_to_Qn
from .geodesic_engine import geodesic, is_minimal, minimal_vector, word_length
from .group_core import NormalForm, evaluate_word, invert, multiply, normalize

__all__ = [
    "NormalForm",
    "normalize",
    "multiply",
    "invert",
    "evaluate_word",
    "geodesic",
    "word_length",
    "minimal_vector",
    "is_minimal",
    "bfs_ball",
    "oracle_length",
    "oracle_kappa",
    "kappa",
    "FamilySpec",
    "build_family",
    "verify_family_sign",
    "build_O2",
    "build_strict1_acceptor",
    "restrict_to_Qn",
    "count_by_length",
    "growth_rate",
]

__version__ = "0.1.0"
