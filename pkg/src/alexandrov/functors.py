"""Pull-back, push-forward, restriction and skyscraper sheaves.

``pullback(f, T)`` relabels stalks along ``f``; ``pushforward(f, S)`` has
stalk ``Γ(f^{-1}(Λ(k)), S)`` at ``k``.  The two are adjoint, and when ``f``
has a Galois right adjoint ``g`` the push-forward is the pull-back along
``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BaseMismatch, NotGalois
from .exactla import Field, Matrix, vstack
from .poset import MonotoneMap, Poset, Subset, _bits, is_galois_pair
from .sheafsys import (
    SectionSpace,
    Sheaf,
    SheafMorphism,
    hom_dimension,
    limit,
    restriction_between,
)


def pullback(f: MonotoneMap, T: Sheaf) -> Sheaf:
    """``(f^{-1}T)_i = T_{f(i)}`` with transitions ``ρ^T_{f(i), f(j)}``."""
    if T.base != f.target:
        raise BaseMismatch("sheaf does not live on the target of the map")
    v = f.values
    rho = {}
    for a in range(len(f.source)):
        for b in _bits(f.source.down_mask(a)):
            rho[a, b] = T.r(v[a], v[b])
    return Sheaf(f.source, T.field, [T.dims[x] for x in v], rho)


def pullback_morphism(f: MonotoneMap, phi: SheafMorphism) -> SheafMorphism:
    return SheafMorphism(
        pullback(f, phi.source), pullback(f, phi.target), tuple(phi.components[x] for x in f.values)
    )


def restrict(F: Sheaf, S: Subset | Iterable[str]) -> Sheaf:
    """``F`` on ``S`` with the order induced from the base."""
    return pullback(MonotoneMap.inclusion(F.base, S), F)


@dataclass(eq=False)
class Pushforward:
    """``f_*S`` together with the section spaces that realise its stalks."""

    sheaf: Sheaf
    spaces: tuple[SectionSpace, ...]


def pushforward_data(f: MonotoneMap, S: Sheaf) -> Pushforward:
    if S.base != f.source:
        raise BaseMismatch("sheaf does not live on the source of the map")
    J = f.target
    spaces = tuple(limit(S, f.preimage_mask(J.down_mask(k))) for k in range(len(J)))
    rho = {}
    for k in range(len(J)):
        for l in _bits(J.down_mask(k)):
            if k == l:
                rho[k, l] = Matrix.identity(S.field, spaces[k].dim)
            else:
                rho[k, l] = restriction_between(spaces[k], spaces[l])
    return Pushforward(Sheaf(J, S.field, [s.dim for s in spaces], rho), spaces)


def pushforward(f: MonotoneMap, S: Sheaf) -> Sheaf:
    """``(f_*S)_k = Γ(f^{-1}(Λ(k)), S)``; transitions are restriction maps."""
    return pushforward_data(f, S).sheaf


def section_map(phi: SheafMorphism, src: SectionSpace, dst: SectionSpace) -> Matrix:
    """``Γ(U, φ)`` between section spaces of ``φ``'s source and target over one subset."""
    if not src.members:
        return Matrix.zeros(phi.field, dst.dim, src.dim)
    family = vstack([phi.components[a] @ src.block(a) for a in src.members])
    return dst.coordinates(family, check=False)


def pushforward_morphism(f: MonotoneMap, phi: SheafMorphism, src: Pushforward | None = None,
                         dst: Pushforward | None = None) -> SheafMorphism:
    src = src or pushforward_data(f, phi.source)
    dst = dst or pushforward_data(f, phi.target)
    comps = tuple(section_map(phi, a, b) for a, b in zip(src.spaces, dst.spaces))
    return SheafMorphism(src.sheaf, dst.sheaf, comps)


def skyscraper(P: Poset, j: str, field: Field, d: int) -> Sheaf:
    """Stalk ``field**d`` on ``V(j)`` and zero elsewhere."""
    up = P.up_mask(P.index(j))
    dims = [d if up >> a & 1 else 0 for a in range(len(P))]
    rho = {}
    eye = Matrix.identity(field, d)
    for a in range(len(P)):
        for b in _bits(P.down_mask(a)):
            rho[a, b] = eye if dims[a] and dims[b] else Matrix.zeros(field, dims[b], dims[a])
    return Sheaf(P, field, dims, rho)


def point_sheaf(field: Field, d: int, name: str = "*") -> Sheaf:
    """A ``d``-dimensional space viewed as a sheaf on the one-point poset."""
    P = Poset.point(name)
    return Sheaf(P, field, [d], {(0, 0): Matrix.identity(field, d)})


def unit(f: MonotoneMap, T: Sheaf, pulled: Sheaf | None = None, pushed: Pushforward | None = None) -> SheafMorphism:
    """``η: T -> f_* f^{-1} T``, sending ``x in T_k`` to ``(ρ^T_{k, f(i)} x)_i``."""
    pulled = pulled or pullback(f, T)
    pushed = pushed or pushforward_data(f, pulled)
    comps = []
    for k, space in enumerate(pushed.spaces):
        if space.members:
            family = vstack([T.r(k, f.values[i]) for i in space.members])
        else:
            family = Matrix.zeros(T.field, 0, T.dims[k])
        comps.append(space.coordinates(family, check=False))
    return SheafMorphism(T, pushed.sheaf, tuple(comps))


def counit(f: MonotoneMap, S: Sheaf, pushed: Pushforward | None = None) -> SheafMorphism:
    """``ε: f^{-1} f_* S -> S``, projecting a section over ``f^{-1}Λ(f(i))`` to coordinate ``i``."""
    pushed = pushed or pushforward_data(f, S)
    source = pullback(f, pushed.sheaf)
    comps = tuple(pushed.spaces[f.values[i]].block(i) for i in range(len(f.source)))
    return SheafMorphism(source, S, comps)


@dataclass(eq=False)
class AdjunctionWitness:
    unit: SheafMorphism
    counit: SheafMorphism
    hom_pullback_side: int | None
    hom_pushforward_side: int | None
    triangle_pushforward: bool
    triangle_pullback: bool

    @property
    def holds(self) -> bool:
        dims_ok = self.hom_pullback_side == self.hom_pushforward_side
        return dims_ok and self.triangle_pushforward and self.triangle_pullback


def adjunction(f: MonotoneMap, S: Sheaf, T: Sheaf, hom_dims: bool = True) -> AdjunctionWitness:
    """Unit ``T -> f_*f^{-1}T`` and counit ``f^{-1}f_*S -> S`` with their checks.

    Both triangle identities are verified as matrix identities, one for
    ``f_*S`` and one for ``f^{-1}T``.  With ``hom_dims`` the dimensions of
    ``Hom(f^{-1}T, S)`` and ``Hom(T, f_*S)`` are computed by solving the
    naturality constraints.
    """
    if S.base != f.source or T.base != f.target:
        raise BaseMismatch("S must live on the source and T on the target")
    pulled_T = pullback(f, T)
    eta = unit(f, T, pulled_T)
    pushed_S = pushforward_data(f, S)
    eps = counit(f, S, pushed_S)

    # f_* ε ∘ η_{f_* S} = id
    fS = pushed_S.sheaf
    pulled_fS = eps.source
    pushed_pulled = pushforward_data(f, pulled_fS)
    eta_fS = unit(f, fS, pulled_fS, pushed_pulled)
    f_eps = pushforward_morphism(f, eps, pushed_pulled, pushed_S)
    tri1 = f_eps.compose(eta_fS) == SheafMorphism.identity(fS)

    # ε_{f^{-1} T} ∘ f^{-1} η = id
    f_eta = pullback_morphism(f, eta)
    eps_T = counit(f, pulled_T)
    tri2 = all(
        x == y for x, y in zip(
            (a @ b for a, b in zip(eps_T.components, f_eta.components)),
            SheafMorphism.identity(pulled_T).components,
        )
    )

    h1 = h2 = None
    if hom_dims:
        h1 = hom_dimension(pulled_T, S)
        h2 = hom_dimension(T, fS)
    return AdjunctionWitness(eta, eps, h1, h2, tri1, tri2)


def pushforward_equals_pullback(f: MonotoneMap, g: MonotoneMap, F: Sheaf) -> bool:
    """Whether ``f_*F`` and ``g^{-1}F`` coincide for a Galois pair ``(f, g)``.

    Each push-forward stalk is sections over ``Λ(g(k))``; it is compared to
    ``F_{g(k)}`` after transport along the projection onto that coordinate.

    Raises:
        NotGalois: ``(f, g)`` is not a Galois connection.
    """
    if not is_galois_pair(f, g):
        raise NotGalois("f is not left adjoint to g")
    if F.base != f.source:
        raise BaseMismatch("sheaf does not live on the source of f")
    pushed = pushforward_data(f, F)
    pulled = pullback(g, F)
    if pushed.sheaf.dims != pulled.dims:
        return False
    iso = [space.block(g.values[k]) for k, space in enumerate(pushed.spaces)]
    if not all(m.is_invertible() for m in iso):
        return False
    J = f.target
    for k in range(len(J)):
        for l in _bits(J.down_mask(k)):
            if iso[l] @ pushed.sheaf.r(k, l) != pulled.r(k, l) @ iso[k]:
                return False
    return True


def is_isomorphic_via(phi: SheafMorphism) -> bool:
    """Whether a given morphism is an isomorphism of sheaves (natural and invertible)."""
    return phi.naturality_failure() is None and phi.is_iso()
