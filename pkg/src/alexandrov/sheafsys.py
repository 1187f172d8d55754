"""Sheaves on ``X(I)``, i.e. inverse systems of finite-dimensional spaces.

A :class:`Sheaf` stores a stalk dimension per element and the full table of
transition matrices ``rho[i, j]: F_i -> F_j`` for ``i >= j``.  Sections over
an open ``U`` are the compatible families in ``⊕_{i in U} F_i``; each
:class:`SectionSpace` carries an inclusion matrix into that product whose
columns form the reduced echelon basis, so two section spaces of the same
open are comparable by plain matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BaseMismatch,
    NaturalitySquareFails,
    NotComposable,
    NotNested,
    NotOpen,
    PathInconsistency,
    ShapeMismatch,
)
from .exactla import (
    Field,
    Matrix,
    Subspace,
    block_diag,
    image_basis,
    kernel_basis,
    kron,
    vstack,
)
from .poset import Poset, Subset, _as_mask, _bits, is_open_mask, maximum_of_mask


class Sheaf:
    """An inverse system of vector spaces indexed by a finite poset.

    Use :func:`validate_sheaf` to build one from cover matrices; the
    constructor trusts its inputs and expects the full transition table
    keyed by index pairs ``(a, b)`` with ``a >= b``.
    """

    def __init__(self, base: Poset, field: Field, dims: Sequence[int], rho: dict[tuple[int, int], Matrix]):
        self.base = base
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        self._rho = rho
        self._sections: dict[int, SectionSpace] = {}

    def dim(self, i: str) -> int:
        return self.dims[self.base.index(i)]

    def rho(self, i: str, j: str) -> Matrix:
        """Transition ``F_i -> F_j`` for ``i >= j``."""
        a, b = self.base.index(i), self.base.index(j)
        if (a, b) not in self._rho:
            raise NotNested(f"{j} is not below {i}")
        return self._rho[a, b]

    def r(self, a: int, b: int) -> Matrix:
        return self._rho[a, b]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sheaf):
            return NotImplemented
        if self is other:
            return True
        return (
            self.base == other.base
            and self.field == other.field
            and self.dims == other.dims
            and all(self._rho[k] == other._rho[k] for k in self._rho)
        )

    __hash__ = None

    def __repr__(self) -> str:
        dims = " ".join(f"{e}:{d}" for e, d in zip(self.base.elements, self.dims))
        return f"Sheaf({self.field}; {dims})"

    def cover_matrices(self) -> dict[tuple[str, str], Matrix]:
        el = self.base.elements
        return {(el[a], el[b]): self._rho[a, b] for a, b in self.base.covers}

    def sections(self, U: Subset | Iterable[str] | None = None) -> "SectionSpace":
        return sections(self, U)


def _full_table(base: Poset, field: Field, dims: Sequence[int], covers: Mapping[tuple[int, int], Matrix],
                extra: Mapping[tuple[int, int], Matrix] | None = None) -> dict[tuple[int, int], Matrix]:
    rho: dict[tuple[int, int], Matrix] = {}
    lower = base.lower_covers
    el = base.elements
    for a in base.linear_extension:
        rho[a, a] = Matrix.identity(field, dims[a])
        for b in _bits(base.down_mask(a) & ~(1 << a)):
            value = None
            for c in lower[a]:
                if not base._leq(b, c):
                    continue
                cand = rho[c, b] @ covers[a, c]
                if value is None:
                    value = cand
                elif cand != value:
                    raise PathInconsistency(el[a], el[b])
            if extra and (a, b) in extra and extra[a, b] != value:
                raise PathInconsistency(el[a], el[b])
            rho[a, b] = value
    return rho


def validate_sheaf(base: Poset, field: Field, dims, rho_generators: Mapping) -> Sheaf:
    """Build a sheaf from one matrix per covering pair.

    ``dims`` maps element ids to stalk dimensions (or is a sequence in
    element order).  ``rho_generators`` maps ``(i, j)`` with ``i`` covering
    ``j`` to the matrix of ``F_i -> F_j`` (a :class:`Matrix`, nested list
    or literal string).  Matrices for non-covering pairs are optional and,
    when present, must equal the composite along covers.  Maps with a zero
    dimension on either side may be omitted.

    Raises:
        ShapeMismatch: a matrix has the wrong shape or a cover map is missing.
        PathInconsistency: two cover paths compose differently.
    """
    if isinstance(dims, Mapping):
        missing = [e for e in base.elements if e not in dims]
        if missing:
            raise ShapeMismatch(f"no dimension given for {missing}")
        dims = [int(dims[e]) for e in base.elements]
    dims = [int(d) for d in dims]
    if len(dims) != len(base) or any(d < 0 for d in dims):
        raise ShapeMismatch("one nonnegative dimension per element required")
    given: dict[tuple[int, int], Matrix] = {}
    for (i, j), m in rho_generators.items():
        a, b = base.index(str(i)), base.index(str(j))
        if not base._leq(b, a) or a == b:
            raise NotNested(f"map {i} -> {j} requires {j} < {i}")
        if isinstance(m, Matrix):
            if m.field != field:
                raise ShapeMismatch(f"map {i} -> {j} is over {m.field}, sheaf over {field}")
            if m.shape != (dims[b], dims[a]):
                raise ShapeMismatch(f"map {i} -> {j} has shape {m.shape}, expected {(dims[b], dims[a])}")
        elif isinstance(m, str):
            m = Matrix.parse(m, field, dims[b], dims[a])
        else:
            m = Matrix(field, m, dims[b], dims[a])
        given[a, b] = m
    covers = {}
    el = base.elements
    for a, b in base.covers:
        if (a, b) in given:
            covers[a, b] = given[a, b]
        elif dims[a] == 0 or dims[b] == 0:
            covers[a, b] = Matrix.zeros(field, dims[b], dims[a])
        else:
            raise ShapeMismatch(f"no matrix for covering pair ({el[a]}, {el[b]})")
    extra = {k: v for k, v in given.items() if k not in covers}
    return Sheaf(base, field, dims, _full_table(base, field, dims, covers, extra))


def sheaf_from_covers(base: Poset, field: Field, dims: Sequence[int], covers: Mapping[tuple[int, int], Matrix]) -> Sheaf:
    """Index-keyed variant of :func:`validate_sheaf` for internal builders."""
    return Sheaf(base, field, dims, _full_table(base, field, dims, covers))


def zero_sheaf(base: Poset, field: Field) -> Sheaf:
    return constant_sheaf(base, field, 0)


def constant_sheaf(P: Poset, field: Field, d: int) -> Sheaf:
    """Every stalk ``field**d``, every transition the identity."""
    eye = Matrix.identity(field, d)
    rho = {(a, b): eye for a in range(len(P)) for b in _bits(P.down_mask(a))}
    return Sheaf(P, field, [d] * len(P), rho)


def direct_sum(F: Sheaf, G: Sheaf) -> Sheaf:
    if F.base != G.base or F.field != G.field:
        raise BaseMismatch("direct sum needs a common base and field")
    rho = {k: block_diag([F._rho[k], G._rho[k]], F.field) for k in F._rho}
    return Sheaf(F.base, F.field, [x + y for x, y in zip(F.dims, G.dims)], rho)


@dataclass(eq=False)
class SectionSpace:
    """``Γ(S, F)`` embedded in ``⊕_{i in S} F_i``.

    ``inclusion`` has one column per basis section; its transpose is in
    reduced echelon form with pivot positions ``pivots``.
    """

    sheaf: Sheaf
    mask: int
    members: tuple[int, ...]
    offsets: dict[int, tuple[int, int]]
    inclusion: Matrix
    pivots: tuple[int, ...]

    @property
    def open(self) -> Subset:
        return Subset(self.sheaf.base, self.mask)

    @property
    def dim(self) -> int:
        return self.inclusion.cols

    @property
    def product_dim(self) -> int:
        return self.inclusion.rows

    def block(self, a: int) -> Matrix:
        """The component at element index ``a``: a map ``Γ -> F_a``."""
        lo, hi = self.offsets[a]
        return self.inclusion.row_block(lo, hi)

    def coordinates(self, family: Matrix, check: bool = True) -> Matrix:
        """Coordinates (``dim x k``) of ``k`` compatible families given as columns."""
        C = family.take_rows(self.pivots)
        if check and self.inclusion @ C != family:
            raise ShapeMismatch("family is not a compatible section")
        return C


def limit(F: Sheaf, S: Subset | Iterable[str] | int | None = None) -> SectionSpace:
    """Inverse limit of ``F`` over an arbitrary subset with the induced order."""
    P = F.base
    if S is None:
        mask = (1 << len(P)) - 1
    elif isinstance(S, int):
        mask = S
    else:
        mask = _as_mask(P, S)
    cached = F._sections.get(mask)
    if cached is not None:
        return cached
    members = tuple(_bits(mask))
    offsets = {}
    pos = 0
    for a in members:
        offsets[a] = (pos, pos + F.dims[a])
        pos += F.dims[a]
    product_dim = pos
    field = F.field
    maxima = P.maximal(mask)
    # parametrise families by their values at maximal elements
    moff = {}
    mpos = 0
    for m in maxima:
        moff[m] = (mpos, mpos + F.dims[m])
        mpos += F.dims[m]
    rows = []
    anchor = {}
    for a in members:
        above = [m for m in maxima if P._leq(a, m)]
        anchor[a] = above[0]
        if F.dims[a] == 0:
            continue
        first = above[0]
        for m in above[1:]:
            row = field.zeros(F.dims[a], mpos)
            lo, hi = moff[first]
            row[:, lo:hi] = F.r(first, a)._a
            lo, hi = moff[m]
            row[:, lo:hi] = (-F.r(m, a))._a
            rows.append(row)
    if rows:
        K = kernel_basis(Matrix._wrap(field, np.vstack(rows))).basis
    else:
        K = Matrix.identity(field, mpos)
    # expand each kernel vector to the whole family
    blocks = []
    for a in members:
        lo, hi = moff[anchor[a]]
        blocks.append(F.r(anchor[a], a) @ K.take_cols(range(lo, hi)).T)
    E = vstack(blocks, field, cols=K.rows) if blocks else Matrix.zeros(field, 0, K.rows)
    basis = Subspace.span(E.T) if E.cols else Subspace.zero(field, product_dim)
    space = SectionSpace(F, mask, members, offsets, basis.columns(), basis.pivots)
    F._sections[mask] = space
    return space


def sections(F: Sheaf, U: Subset | Iterable[str] | None = None) -> SectionSpace:
    """``Γ(U, F)`` for an open ``U`` (the whole space by default).

    Raises:
        NotOpen: ``U`` is not down-closed.
    """
    P = F.base
    mask = (1 << len(P)) - 1 if U is None else _as_mask(P, U)
    if not is_open_mask(P, mask):
        raise NotOpen(f"{P.ids_of(mask)} is not open")
    return limit(F, mask)


def _restrict_family(src: SectionSpace, dst: SectionSpace) -> Matrix:
    parts = [src.block(a) for a in dst.members]
    if not parts:
        return Matrix.zeros(src.sheaf.field, 0, src.dim)
    return vstack(parts)


def restriction_between(src: SectionSpace, dst: SectionSpace, check: bool = False) -> Matrix:
    """Induced map ``Γ(U) -> Γ(V)`` between two section spaces of one sheaf, ``V ⊆ U``."""
    return dst.coordinates(_restrict_family(src, dst), check=check)


def restriction_map(F: Sheaf, U: Subset | Iterable[str], V: Subset | Iterable[str]) -> Matrix:
    """``Γ(U, F) -> Γ(V, F)`` in the canonical section bases.

    Raises:
        NotOpen: either subset is not open.
        NotNested: ``V`` is not contained in ``U``.
    """
    P = F.base
    mu, mv = _as_mask(P, U), _as_mask(P, V)
    if mv & ~mu:
        raise NotNested("V must be contained in U")
    return restriction_between(sections(F, Subset(P, mu)), sections(F, Subset(P, mv)), check=True)


def stalk(F: Sheaf, i: str) -> tuple[int, Matrix]:
    """``dim F_i`` and the projection ``Γ(Λ(i), F) -> F_i`` (an isomorphism)."""
    a = F.base.index(i)
    space = limit(F, F.base.down_mask(a))
    return F.dims[a], space.block(a)


def is_flabby(F: Sheaf) -> bool:
    """All restrictions from global sections to open subsets are surjective."""
    return flabby_counterexample(F) is None


def flabby_counterexample(F: Sheaf) -> Subset | None:
    """An open ``U`` with ``Γ(X) -> Γ(U)`` not surjective, or ``None``."""
    P = F.base
    glob = limit(F)
    for mask in P.open_masks():
        target = limit(F, mask)
        if target.dim and restriction_between(glob, target).rank() < target.dim:
            return Subset(P, mask)
    return None


_WF_MODES = {"opens-only": "open", "open": "open", "all-directed-subsets": "all", "all": "all", "directed": "all"}


def is_weakly_flabby(F: Sheaf, mode: str = "opens-only") -> bool:
    """Surjectivity of ``Γ(X) -> lim_J F`` for every directed ``J``.

    ``mode="opens-only"`` ranges over open directed ``J``;
    ``mode="all-directed-subsets"`` over every directed subset with its
    induced order (enumerative, gated by the enumeration size limit).
    """
    kind = _WF_MODES.get(mode)
    if kind is None:
        raise ValueError(f"unknown mode {mode!r}")
    P = F.base
    glob = limit(F)
    if kind == "open":
        # a nonempty finite open is directed iff it is some Λ(m)
        candidates = [P.down_mask(a) for a in range(len(P))]
    else:
        candidates = [m for m in P.subset_masks() if m and maximum_of_mask(P, m) is not None]
    for mask in candidates:
        target = limit(F, mask)
        if target.dim and restriction_between(glob, target).rank() < target.dim:
            return False
    return True


@dataclass(eq=False)
class SheafMorphism:
    """Natural transformation given by one matrix per element (index order)."""

    source: Sheaf
    target: Sheaf
    components: tuple[Matrix, ...]

    def component(self, i: str) -> Matrix:
        return self.components[self.source.base.index(i)]

    @property
    def base(self) -> Poset:
        return self.source.base

    @property
    def field(self) -> Field:
        return self.source.field

    @classmethod
    def identity(cls, F: Sheaf) -> "SheafMorphism":
        return cls(F, F, tuple(Matrix.identity(F.field, d) for d in F.dims))

    @classmethod
    def zero(cls, F: Sheaf, G: Sheaf) -> "SheafMorphism":
        return cls(F, G, tuple(Matrix.zeros(F.field, g, f) for f, g in zip(F.dims, G.dims)))

    def compose(self, other: "SheafMorphism") -> "SheafMorphism":
        """``self ∘ other``."""
        if other.target is not self.source and other.target != self.source:
            raise NotComposable("target of the first map is not the source of the second")
        return SheafMorphism(other.source, self.target, tuple(a @ b for a, b in zip(self.components, other.components)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SheafMorphism):
            return NotImplemented
        return self.components == other.components and self.source == other.source and self.target == other.target

    __hash__ = None

    def is_mono(self) -> bool:
        return all(c.is_injective() for c in self.components)

    def is_epi(self) -> bool:
        return all(c.is_surjective() for c in self.components)

    def is_iso(self) -> bool:
        return all(c.is_invertible() for c in self.components)

    def naturality_failure(self) -> tuple[str, str] | None:
        # covering squares commuting implies every square commutes
        F, G = self.source, self.target
        el = F.base.elements
        for a, b in F.base.covers:
            if G.r(a, b) @ self.components[a] != self.components[b] @ F.r(a, b):
                return el[a], el[b]
        return None


def validate_morphism(g: Mapping | Sequence, F: Sheaf, G: Sheaf) -> SheafMorphism:
    """Check shapes and naturality of raw component matrices ``F -> G``.

    Raises:
        BaseMismatch: the sheaves live on different bases or fields.
        ShapeMismatch: a component has the wrong shape.
        NaturalitySquareFails: names the first failing pair ``i >= j``.
    """
    if F.base != G.base or F.field != G.field:
        raise BaseMismatch("morphism between sheaves on different bases")
    if isinstance(g, SheafMorphism):
        g = g.components
    if isinstance(g, Mapping):
        comps = [g[e] for e in F.base.elements]
    else:
        comps = list(g)
    if len(comps) != len(F.base):
        raise ShapeMismatch("one component per element required")
    out = []
    for a, c in enumerate(comps):
        if not isinstance(c, Matrix):
            c = Matrix(F.field, c, G.dims[a], F.dims[a])
        if c.shape != (G.dims[a], F.dims[a]) or c.field != F.field:
            raise ShapeMismatch(f"component at {F.base.elements[a]} has shape {c.shape}")
        out.append(c)
    phi = SheafMorphism(F, G, tuple(out))
    bad = phi.naturality_failure()
    if bad is not None:
        raise NaturalitySquareFails(*bad)
    return phi


def _subsheaf(G: Sheaf, spaces: list[Subspace]) -> tuple[Sheaf, SheafMorphism]:
    P = G.base
    rho = {}
    for (a, b), m in G._rho.items():
        rho[a, b] = spaces[b].coordinates((m @ spaces[a].columns()).T).T
    S = Sheaf(P, G.field, [s.dim for s in spaces], rho)
    return S, SheafMorphism(S, G, tuple(s.columns() for s in spaces))


def kernel_sheaf(g: SheafMorphism) -> tuple[Sheaf, SheafMorphism]:
    """Stalkwise kernel with its inclusion into the source."""
    return _subsheaf(g.source, [kernel_basis(c) for c in g.components])


def image_sheaf(g: SheafMorphism) -> tuple[Sheaf, SheafMorphism]:
    """Stalkwise image with its inclusion into the target."""
    return _subsheaf(g.target, [image_basis(c) for c in g.components])


def _quotient_data(W: Subspace) -> tuple[Matrix, Matrix]:
    """Projection ``G -> G/W`` and a section of it, in the non-pivot coordinates."""
    f = W.field
    n = W.ambient_dim
    piv = list(W.pivots)
    non = [c for c in range(n) if c not in set(piv)]
    eye = Matrix.identity(f, n)
    q = eye.take_rows(non)
    if piv:
        q = q - W.basis.take_cols(non).T @ eye.take_rows(piv)
    s = eye.take_cols(non)
    return q, s


def cokernel_sheaf(g: SheafMorphism) -> tuple[Sheaf, SheafMorphism]:
    """Stalkwise cokernel with the projection from the target.

    Each quotient stalk uses the coordinates of the target that are not
    pivots of the echelon image basis.
    """
    G = g.target
    data = [_quotient_data(image_basis(c)) for c in g.components]
    rho = {(a, b): data[b][0] @ m @ data[a][1] for (a, b), m in G._rho.items()}
    Q = Sheaf(G.base, G.field, [q.rows for q, _ in data], rho)
    return Q, SheafMorphism(G, Q, tuple(q for q, _ in data))


def is_exact_sequence(gs: Sequence[SheafMorphism], augmented: bool = False) -> bool:
    """Stalkwise exactness at every interior position of ``gs``.

    With ``augmented=True`` the sequence is read as ``0 -> ... -> 0``, so
    the first map must also be injective and the last surjective.

    Raises:
        NotComposable: consecutive maps do not match up.
    """
    for g, h in zip(gs, gs[1:]):
        if g.target is not h.source and g.target != h.source:
            raise NotComposable("consecutive morphisms are not composable")
    for g, h in zip(gs, gs[1:]):
        for a in range(len(g.base)):
            if image_basis(g.components[a]) != kernel_basis(h.components[a]):
                return False
    if augmented and gs:
        if not gs[0].is_mono() or not gs[-1].is_epi():
            return False
    return True


def hom_space(F: Sheaf, G: Sheaf) -> list[SheafMorphism]:
    """A basis of ``Hom(F, G)``, solved from the naturality constraints on covers."""
    if F.base != G.base or F.field != G.field:
        raise BaseMismatch("Hom between sheaves on different bases")
    field = F.field
    sizes = [g * f for f, g in zip(F.dims, G.dims)]
    offs = np.cumsum([0] + sizes).tolist()
    total = offs[-1]
    blocks = []
    for a, b in F.base.covers:
        h, w = G.dims[b], F.dims[a]
        if h * w == 0:
            continue
        arr = field.zeros(h * w, total)
        arr[:, offs[a]:offs[a + 1]] = kron(G.r(a, b), Matrix.identity(field, F.dims[a]))._a
        arr[:, offs[b]:offs[b + 1]] = (-kron(Matrix.identity(field, G.dims[b]), F.r(a, b).T))._a
        blocks.append(Matrix._wrap(field, arr))
    constraints = vstack(blocks) if blocks else Matrix.zeros(field, 0, total)
    basis = kernel_basis(constraints).basis
    out = []
    for k in range(basis.rows):
        vec = basis._a[k]
        comps = tuple(
            Matrix._wrap(field, vec[offs[a]:offs[a + 1]].reshape(G.dims[a], F.dims[a]).copy())
            for a in range(len(F.base))
        )
        out.append(SheafMorphism(F, G, comps))
    return out


def hom_dimension(F: Sheaf, G: Sheaf) -> int:
    return len(hom_space(F, G))
