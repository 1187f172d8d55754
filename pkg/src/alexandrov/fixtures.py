"""Small named posets and sheaves used throughout the tests and the CLI."""

from __future__ import annotations

from .exactla import Field
from .poset import Poset, validate_poset
from .sheafsys import Sheaf, validate_sheaf


def point() -> Poset:
    return Poset.point()


def chain(n: int) -> Poset:
    """``0 < 1 < ... < n-1``."""
    return Poset.chain(n)


def anti2() -> Poset:
    return validate_poset([], ["x", "y"])


def circ4() -> Poset:
    """Two minimal and two maximal points, each minimal below each maximal: a circle."""
    return validate_poset([("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")], ["a", "b", "c", "d"])


def vee() -> Poset:
    """``a, b <= m``."""
    return validate_poset([("a", "m"), ("b", "m")], ["a", "b", "m"])


def wedge() -> Poset:
    """``a <= c`` and ``a <= d``."""
    return validate_poset([("a", "c"), ("a", "d")], ["a", "c", "d"])


POSETS = {
    "point": point,
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "chain4": lambda: chain(4),
    "anti2": anti2,
    "circ4": circ4,
    "vee": vee,
    "wedge": wedge,
}


def ml_chain4(field: Field) -> Sheaf:
    """Lines on ``0<1<2<3`` with ``ρ_{1,0}=1``, ``ρ_{2,1}=0``, ``ρ_{3,2}=1``."""
    return validate_sheaf(chain(4), field, [1, 1, 1, 1], {("1", "0"): "1", ("2", "1"): "0", ("3", "2"): "1"})
