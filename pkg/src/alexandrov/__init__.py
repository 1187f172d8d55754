"""Sheaves on finite posets and the derived functors of the inverse limit."""

from .errors import AlexandrovError
from .exactla import GF, QQ, CochainComplex, Field, Matrix, Subspace
from .poset import MonotoneMap, Poset, Subset, check_monotone, validate_poset
from .sheafsys import Sheaf, SheafMorphism, constant_sheaf, sections, validate_morphism, validate_sheaf
from .functors import pullback, pushforward, skyscraper
from .cohomology import cohomology, derived_limit, oracle_complex

__all__ = [
    "AlexandrovError", "GF", "QQ", "CochainComplex", "Field", "Matrix", "Subspace",
    "MonotoneMap", "Poset", "Subset", "check_monotone", "validate_poset",
    "Sheaf", "SheafMorphism", "constant_sheaf", "sections", "validate_morphism", "validate_sheaf",
    "pullback", "pushforward", "skyscraper", "cohomology", "derived_limit", "oracle_complex",
]
