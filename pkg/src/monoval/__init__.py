"""Exact computation with monomial valuations on dual complexes of SNC models."""
from .complex import DualComplex, WeightPoint
from .core import INF, Norm, SupportSet, parse_support
from .multiplicities import MonomialIdeal, alpha, volume
from .surface_models import BlowupTree
from .valuation import PiecewiseAffineConcave, chi_on_face, eval_valuation, newton_polyhedron

__all__ = [
    "INF",
    "BlowupTree",
    "DualComplex",
    "MonomialIdeal",
    "Norm",
    "PiecewiseAffineConcave",
    "SupportSet",
    "WeightPoint",
    "alpha",
    "chi_on_face",
    "eval_valuation",
    "newton_polyhedron",
    "parse_support",
    "volume",
]
__version__ = "0.1.0"
