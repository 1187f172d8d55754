"""Finite posets as Alexandrov spaces.

The open subsets of ``X(I)`` are the down-closed subsets of ``I``; the
smallest open containing ``i`` is the down-set ``Λ(i)`` and the closure of
``{i}`` is the up-set ``V(i)``.  Monotone maps are exactly the continuous
maps between such spaces.

Elements are opaque string identifiers kept in input order.  Internally
everything is indexed by position in :attr:`Poset.elements`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import (
    CycleError,
    DuplicateElement,
    EmptyPoset,
    NotDirected,
    NotMonotone,
    ShapeMismatch,
    UnknownElement,
    SizeLimitExceeded,
)

DIRECT_LIMIT = 64
ENUMERATION_LIMIT = 12


def size_limit(kind: str = "direct") -> int:
    """Element-count gate; ``ALEXANDROV_MAX_ELEMS`` overrides both kinds."""
    env = os.environ.get("ALEXANDROV_MAX_ELEMS")
    if env:
        return int(env)
    return ENUMERATION_LIMIT if kind == "enumeration" else DIRECT_LIMIT


def check_size(n: int, kind: str = "direct") -> None:
    limit = size_limit(kind)
    if n > limit:
        raise SizeLimitExceeded(f"{n} elements exceeds the {kind} gate of {limit}")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite partially ordered set with its full order relation.

    Build one with :func:`validate_poset` (or :meth:`from_relations`), which
    takes any generating relation and closes it.
    """

    __slots__ = ("elements", "_index", "_up", "_down", "__dict__")

    def __init__(self, elements: tuple[str, ...], up_masks: tuple[int, ...]):
        # trusted constructor: up_masks must already be a closed partial order
        self.elements = elements
        self._index = {e: k for k, e in enumerate(elements)}
        self._up = up_masks
        down = [0] * len(elements)
        for i, mask in enumerate(up_masks):
            for j in _bits(mask):
                down[j] |= 1 << i
        self._down = tuple(down)

    @classmethod
    def from_relations(cls, elements: Iterable, relations: Iterable[tuple] = ()) -> "Poset":
        return validate_poset(relations, elements)

    @classmethod
    def point(cls, name: str = "*") -> "Poset":
        return cls((str(name),), (1,))

    @classmethod
    def chain(cls, n: int, prefix: str = "") -> "Poset":
        ids = [f"{prefix}{k}" for k in range(n)]
        return validate_poset(list(zip(ids, ids[1:])), ids)

    @classmethod
    def antichain(cls, ids: Iterable) -> "Poset":
        return validate_poset([], ids)

    # basic queries
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.elements, self._up))

    def __repr__(self) -> str:
        rels = ", ".join(f"{self.elements[j]}<{self.elements[i]}" for i, j in self.covers)
        return f"Poset([{' '.join(self.elements)}]{'; ' + rels if rels else ''})"

    def index(self, i: str) -> int:
        try:
            return self._index[i]
        except KeyError:
            raise UnknownElement(f"unknown element {i!r}") from None

    def leq(self, i: str, j: str) -> bool:
        return bool(self._up[self.index(i)] >> self.index(j) & 1)

    def lt(self, i: str, j: str) -> bool:
        return i != j and self.leq(i, j)

    def _leq(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> b & 1)

    def down_mask(self, a: int) -> int:
        return self._down[a]

    def up_mask(self, a: int) -> int:
        return self._up[a]

    @cached_property
    def relation_matrix(self) -> tuple[tuple[bool, ...], ...]:
        """Canonical closed relation: entry (a, b) is true iff element a <= element b."""
        n = len(self)
        return tuple(tuple(bool(self._up[a] >> b & 1) for b in range(n)) for a in range(n))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``(hi, lo)`` as indices: lo < hi with nothing strictly between."""
        out = []
        for hi in range(len(self)):
            strict = self._down[hi] & ~(1 << hi)
            for lo in _bits(strict):
                between = strict & self._up[lo] & ~(1 << lo)
                if not between:
                    out.append((hi, lo))
        out.sort()
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        low: list[list[int]] = [[] for _ in self.elements]
        for hi, lo in self.covers:
            low[hi].append(lo)
        return tuple(tuple(x) for x in low)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Indices sorted so that every element comes after everything below it."""
        return tuple(sorted(range(len(self)), key=lambda a: (bin(self._down[a]).count("1"), a)))

    def maximal(self, mask: int | None = None) -> list[int]:
        """Maximal elements of the subset ``mask`` (whole poset by default)."""
        if mask is None:
            mask = (1 << len(self)) - 1
        return [a for a in _bits(mask) if not (self._up[a] & mask & ~(1 << a))]

    def minimal(self, mask: int | None = None) -> list[int]:
        if mask is None:
            mask = (1 << len(self)) - 1
        return [a for a in _bits(mask) if not (self._down[a] & mask & ~(1 << a))]

    def is_chain(self) -> bool:
        return all(self._leq(a, b) or self._leq(b, a) for a, b in combinations(range(len(self)), 2))

    @cached_property
    def chain_length(self) -> int:
        """Length (number of strict steps) of the longest chain; 0 if empty."""
        height = [0] * len(self)
        for a in self.linear_extension:
            below = self._down[a] & ~(1 << a)
            height[a] = max((height[b] + 1 for b in _bits(below)), default=0)
        return max(height, default=0)

    def strict_chains(self, n: int) -> list[tuple[int, ...]]:
        """All chains ``i_0 < ... < i_n`` as index tuples, lexicographically."""
        if n < 0:
            return []
        chains = [(a,) for a in range(len(self))]
        for _ in range(n):
            chains = [
                c + (b,) for c in chains for b in _bits(self._up[c[-1]] & ~(1 << c[-1]))
            ]
        chains.sort()
        return chains

    def mask_of(self, ids: Iterable[str]) -> int:
        mask = 0
        for i in ids:
            mask |= 1 << self.index(i)
        return mask

    def ids_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[a] for a in _bits(mask))

    def induced(self, members: "Subset | Iterable[str]") -> "Poset":
        """Sub-poset on ``members`` with the induced order, in parent order."""
        mask = members.mask if isinstance(members, Subset) else self.mask_of(members)
        keep = list(_bits(mask))
        pos = {a: k for k, a in enumerate(keep)}
        ups = tuple(
            sum(1 << pos[b] for b in _bits(self._up[a] & mask)) for a in keep
        )
        return Poset(tuple(self.elements[a] for a in keep), ups)

    def subset(self, ids: Iterable[str]) -> "Subset":
        return Subset(self, self.mask_of(ids))

    def open_masks(self) -> list[int]:
        """Every open (down-closed) subset as a bitmask, smallest first."""
        check_size(len(self), "enumeration")
        full = (1 << len(self)) - 1
        return sorted(
            (m for m in range(full + 1) if all(self._down[a] & ~m == 0 for a in _bits(m))),
            key=lambda m: (bin(m).count("1"), m),
        )

    def subset_masks(self) -> list[int]:
        """Every subset as a bitmask, smallest first."""
        check_size(len(self), "enumeration")
        return sorted(range(1 << len(self)), key=lambda m: (bin(m).count("1"), m))


@dataclass(frozen=True)
class Subset:
    """A subset of a poset, stored as a bitmask over its elements."""

    parent: Poset
    mask: int

    def __post_init__(self):
        if self.mask >> len(self.parent):
            raise UnknownElement("subset has members outside the parent poset")

    @property
    def members(self) -> frozenset[str]:
        return frozenset(self.ids)

    @property
    def ids(self) -> tuple[str, ...]:
        return self.parent.ids_of(self.mask)

    def __iter__(self) -> Iterator[str]:
        return iter(self.ids)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, item) -> bool:
        return item in self.parent and bool(self.mask >> self.parent.index(item) & 1)

    def complement(self) -> "Subset":
        return Subset(self.parent, ((1 << len(self.parent)) - 1) & ~self.mask)

    def __le__(self, other: "Subset") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return "{" + ", ".join(self.ids) + "}"


def _as_mask(P: Poset, S: Subset | Iterable[str]) -> int:
    if isinstance(S, Subset):
        if S.parent != P:
            raise ShapeMismatch("subset belongs to a different poset")
        return S.mask
    return P.mask_of(S)


def validate_poset(raw_relation: Iterable[tuple], elements: Iterable) -> Poset:
    """Close a generating relation reflexively and transitively.

    ``raw_relation`` holds pairs ``(a, b)`` meaning ``a <= b``.

    Raises:
        DuplicateElement: an identifier is repeated.
        UnknownElement: a relation mentions an undeclared element.
        CycleError: the closure is not antisymmetric.
    """
    ids = tuple(str(e) for e in elements)
    index: dict[str, int] = {}
    for k, e in enumerate(ids):
        if e in index:
            raise DuplicateElement(f"duplicate element {e!r}")
        if not e or any(ch.isspace() for ch in e):
            raise UnknownElement(f"invalid element identifier {e!r}")
        index[e] = k
    up = [1 << k for k in range(len(ids))]
    for a, b in raw_relation:
        a, b = str(a), str(b)
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"relation mentions unknown element {x!r}")
        up[index[a]] |= 1 << index[b]
    for k in range(len(ids)):
        bit = 1 << k
        for i in range(len(ids)):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(len(ids)):
        for j in _bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise CycleError(ids[i], ids[j])
    return Poset(ids, tuple(up))


def down_set(P: Poset, i: str) -> Subset:
    """``Λ(i)``: the elements below ``i``; the smallest open containing ``i``."""
    return Subset(P, P.down_mask(P.index(i)))


def up_set(P: Poset, i: str) -> Subset:
    """``V(i)``: the elements above ``i``; the closure of ``{i}``."""
    return Subset(P, P.up_mask(P.index(i)))


def is_open_mask(P: Poset, mask: int) -> bool:
    return all(P.down_mask(a) & ~mask == 0 for a in _bits(mask))


def is_open(P: Poset, S: Subset | Iterable[str]) -> bool:
    return is_open_mask(P, _as_mask(P, S))


def min_open_mask(P: Poset, mask: int) -> int:
    out = 0
    for a in _bits(mask):
        out |= P.down_mask(a)
    return out


def min_open(P: Poset, S: Subset | Iterable[str]) -> Subset:
    """``O(S)``, the union of the down-sets of members of ``S``."""
    return Subset(P, min_open_mask(P, _as_mask(P, S)))


def maximum_of_mask(P: Poset, mask: int) -> int | None:
    for a in _bits(mask):
        if P.down_mask(a) & mask == mask:
            return a
    return None


def is_directed_mask(P: Poset, mask: int) -> bool:
    # finite: every pair bounded within the subset iff a maximum exists
    # (the empty subset is vacuously directed)
    return mask == 0 or maximum_of_mask(P, mask) is not None


def is_directed(P: Poset, S: Subset | Iterable[str] | None = None) -> bool:
    """True iff every pair of members has an upper bound among the members."""
    mask = (1 << len(P)) - 1 if S is None else _as_mask(P, S)
    return is_directed_mask(P, mask)


def directed_maximum(P: Poset, S: Subset | Iterable[str] | None = None) -> str | None:
    """The maximum witnessing directedness of a nonempty ``S``, else ``None``."""
    mask = (1 << len(P)) - 1 if S is None else _as_mask(P, S)
    top = maximum_of_mask(P, mask)
    return None if top is None else P.elements[top]


def is_cofinal_mask(P: Poset, mask: int) -> bool:
    return min_open_mask(P, mask) == (1 << len(P)) - 1


def is_cofinal(P: Poset, S: Subset | Iterable[str]) -> bool:
    """Every element of the directed poset ``P`` lies below some member of ``S``.

    Raises:
        NotDirected: ``P`` is not directed.
    """
    if not is_directed(P):
        raise NotDirected("cofinality is defined for directed posets only")
    return is_cofinal_mask(P, _as_mask(P, S))


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map; ``values[a]`` is the target index of source index ``a``."""

    source: Poset
    target: Poset
    values: tuple[int, ...]

    def __call__(self, i: str) -> str:
        return self.target.elements[self.values[self.source.index(i)]]

    @property
    def mapping(self) -> dict[str, str]:
        return {e: self.target.elements[v] for e, v in zip(self.source.elements, self.values)}

    def preimage_mask(self, target_mask: int) -> int:
        out = 0
        for a, v in enumerate(self.values):
            if target_mask >> v & 1:
                out |= 1 << a
        return out

    def image_mask(self) -> int:
        out = 0
        for v in self.values:
            out |= 1 << v
        return out

    def fiber_of_down_set(self, j: str) -> Subset:
        """``f^{-1}(Λ(j))``, an open subset of the source."""
        return Subset(self.source, self.preimage_mask(self.target.down_mask(self.target.index(j))))

    def is_surjective(self) -> bool:
        return self.image_mask() == (1 << len(self.target)) - 1

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ShapeMismatch("maps are not composable")
        return MonotoneMap(other.source, self.target, tuple(self.values[v] for v in other.values))

    @classmethod
    def identity(cls, P: Poset) -> "MonotoneMap":
        return cls(P, P, tuple(range(len(P))))

    @classmethod
    def constant(cls, source: Poset, target: Poset, value: str) -> "MonotoneMap":
        return cls(source, target, (target.index(value),) * len(source))

    @classmethod
    def inclusion(cls, P: Poset, S: Subset | Iterable[str]) -> "MonotoneMap":
        sub = P.induced(S)
        return cls(sub, P, tuple(P.index(e) for e in sub.elements))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}->{v}" for k, v in self.mapping.items())
        return f"MonotoneMap({body})"


def check_monotone(f: Mapping[str, str], source: Poset, target: Poset) -> MonotoneMap:
    """Validate a raw assignment as an order-preserving (continuous) map.

    Raises:
        UnknownElement: ``f`` is not total on the source or hits a non-element.
        NotMonotone: names a pair ``i <= j`` with ``f(i)`` not below ``f(j)``.
    """
    raw = {str(k): str(v) for k, v in f.items()}
    extra = set(raw) - set(source.elements)
    if extra:
        raise UnknownElement(f"map defined on non-elements {sorted(extra)}")
    values = []
    for e in source.elements:
        if e not in raw:
            raise UnknownElement(f"map undefined at {e!r}")
        values.append(target.index(raw[e]))
    for a in range(len(source)):
        for b in _bits(source.up_mask(a)):
            if not target._leq(values[a], values[b]):
                s, t = source.elements, target.elements
                raise NotMonotone(s[a], s[b], t[values[a]], t[values[b]])
    return MonotoneMap(source, target, tuple(values))


def cofinal_chain(P: Poset, chain: Subset | Iterable[str] | None = None) -> tuple[Subset, MonotoneMap]:
    """A totally ordered cofinal subset ``N`` and its retraction ``g: P -> N``.

    ``g(j)`` is the least element of ``N`` above ``j``; ``g`` restricted to
    ``N`` is the identity and the inclusion pulls ``V(j)`` back to
    ``V(g(j))``, so ``g`` is left adjoint to the inclusion.  Without ``chain`` the singleton maximum is used.

    Raises:
        EmptyPoset, NotDirected, ValueError (supplied chain not a cofinal chain).
    """
    if len(P) == 0:
        raise EmptyPoset("cofinal chain of the empty poset")
    top = maximum_of_mask(P, (1 << len(P)) - 1)
    if top is None:
        raise NotDirected("poset has no maximum")
    mask = 1 << top if chain is None else _as_mask(P, chain)
    members = list(_bits(mask))
    for a, b in combinations(members, 2):
        if not (P._leq(a, b) or P._leq(b, a)):
            raise NotDirected(f"{P.elements[a]} and {P.elements[b]} are incomparable in the chain")
    if not is_cofinal_mask(P, mask):
        raise NotDirected("supplied chain is not cofinal")
    N = P.induced(Subset(P, mask))
    values = []
    for j in range(len(P)):
        above = [a for a in members if P._leq(j, a)]
        least = min(above, key=lambda a: bin(P.down_mask(a)).count("1"))
        values.append(N.index(P.elements[least]))
    g = MonotoneMap(P, N, tuple(values))
    return Subset(P, mask), g


def galois_right_adjoint(f: MonotoneMap) -> MonotoneMap | None:
    """The right adjoint ``g`` with ``f^{-1}(Λ(j)) = Λ(g(j))``, or ``None``."""
    values = []
    for j in range(len(f.target)):
        fiber = f.preimage_mask(f.target.down_mask(j))
        top = maximum_of_mask(f.source, fiber) if fiber else None
        if top is None:
            return None
        values.append(top)
    return MonotoneMap(f.target, f.source, tuple(values))


def is_galois_pair(f: MonotoneMap, g: MonotoneMap) -> bool:
    """Whether ``f`` is left adjoint to ``g``.

    Checks ``f(g(j)) <= j`` and ``g(f(i)) >= i`` together with the
    equivalent ``f(i) <= j  <=>  i <= g(j)``; the two must agree.
    """
    if f.source != g.target or f.target != g.source:
        raise ShapeMismatch("f: I -> J and g: J -> I required")
    I, J = f.source, f.target
    unit_counit = all(J._leq(f.values[g.values[j]], j) for j in range(len(J))) and all(
        I._leq(i, g.values[f.values[i]]) for i in range(len(I))
    )
    hom_bijection = all(
        J._leq(f.values[i], j) == I._leq(i, g.values[j])
        for i in range(len(I))
        for j in range(len(J))
    )
    if unit_counit != hom_bijection:
        raise AssertionError("unit-counit and hom-set forms of adjointness disagree")
    return unit_counit
