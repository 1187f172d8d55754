"""Derived limits ``lim^(n) F = H^n(X(I), F)``.

Two independent pipelines are provided:

* the Godement pipeline builds a flabby resolution by iterating
  ``G = Gode(Q)``, ``Q' = G / Q`` and takes cohomology of its global
  sections;
* the oracle complex sums ``F_{i_0}`` over strict chains ``i_0 < ... < i_n``.

:func:`derived_limit` runs both and insists they agree.  Also here: long
exact sequences of cohomology and the Mittag-Leffler window check on
finite chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .errors import DegreeBoundTooSmall, NotAChain, NotExact, OracleMismatch
from .exactla import CochainComplex, Matrix, Subspace, complement_basis, image_basis, solve, vstack
from .functors import section_map
from .poset import _bits
from .sheafsys import Sheaf, SheafMorphism, cokernel_sheaf, is_exact_sequence, limit


def godement_sheaf(F: Sheaf) -> tuple[Sheaf, SheafMorphism]:
    """``G_j = ⊕_{k <= j} F_k`` with projections, and the mono ``F -> G``.

    Summands are ordered by element index; the mono at ``j`` stacks
    ``ρ_{j,k}`` for ``k <= j``.
    """
    P = F.base
    field = F.field
    downs = [list(_bits(P.down_mask(a))) for a in range(len(P))]
    offsets = []
    for a in range(len(P)):
        pos, off = 0, {}
        for k in downs[a]:
            off[k] = pos
            pos += F.dims[k]
        offsets.append((off, pos))
    dims = [pos for _, pos in offsets]
    rho = {}
    for a in range(len(P)):
        off_a = offsets[a][0]
        for b in downs[a]:
            if a == b:
                rho[a, b] = Matrix.identity(field, dims[a])
                continue
            cols = []
            for k in downs[b]:
                cols.extend(range(off_a[k], off_a[k] + F.dims[k]))
            rho[a, b] = Matrix.identity(field, dims[a]).take_rows(cols)
    G = Sheaf(P, field, dims, rho)
    mono = tuple(
        vstack([F.r(a, k) for k in downs[a]], field, cols=F.dims[a]) for a in range(len(P))
    )
    return G, SheafMorphism(F, G, mono)


@dataclass(eq=False)
class Resolution:
    """``0 -> F -> G^0 -> ... -> G^N`` with augmentation and differentials."""

    target: Sheaf
    terms: list[Sheaf]
    augmentation: SheafMorphism
    differentials: list[SheafMorphism]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def is_exact(self) -> bool:
        """Stalkwise exactness of the augmented sequence through degree ``N - 1``."""
        maps = [self.augmentation] + self.differentials
        return self.augmentation.is_mono() and is_exact_sequence(maps)


def godement_resolution(F: Sheaf, N: int, check: bool = True) -> Resolution:
    """Terms ``G^0..G^N`` of the Godement resolution of ``F``.

    Raises:
        NotExact: ``check`` is on and the sequence fails to be exact
            (an internal error; it is exact by construction).
    """
    if N < 0:
        raise ValueError("degree bound must be nonnegative")
    G, aug = godement_sheaf(F)
    terms, diffs = [G], []
    mono = aug
    for _ in range(N):
        Q, q = cokernel_sheaf(mono)
        G_next, mono = godement_sheaf(Q)
        diffs.append(mono.compose(q))
        terms.append(G_next)
    res = Resolution(F, terms, aug, diffs)
    if check and not res.is_exact():
        raise NotExact("Godement resolution is not exact")
    return res


def global_sections_complex(res: Resolution) -> CochainComplex:
    """``Γ(X, G^0) -> Γ(X, G^1) -> ...`` in canonical section bases."""
    spaces = [limit(G) for G in res.terms]
    d = [section_map(phi, spaces[n], spaces[n + 1]) for n, phi in enumerate(res.differentials)]
    return CochainComplex(res.target.field, [s.dim for s in spaces], d)


@dataclass
class CohomologyReport:
    degrees: dict[int, int]
    method: str
    base_chain_length: int
    witnesses: dict[int, Matrix] | None = dc_field(default=None, compare=False)

    def __getitem__(self, n: int) -> int:
        return self.degrees.get(n, 0)

    def vector(self, top: int | None = None) -> list[int]:
        top = max(self.degrees, default=-1) if top is None else top
        return [self[n] for n in range(top + 1)]

    def to_json(self) -> dict:
        return {
            "degrees": {str(n): d for n, d in sorted(self.degrees.items())},
            "method": self.method,
            "base_chain_length": self.base_chain_length,
        }


def cohomology_via_godement(F: Sheaf, N: int | None = None, degrees: Iterable[int] | None = None,
                            check: bool = False) -> CohomologyReport:
    """Cohomology from the Godement resolution truncated at degree ``N``.

    Degrees ``0..N-1`` are reported by default (``N`` defaults to the
    chain length plus one).

    Raises:
        DegreeBoundTooSmall: a requested degree is ``>= N``.
    """
    L = F.base.chain_length
    N = L + 1 if N is None else N
    wanted = list(range(N)) if degrees is None else sorted(set(degrees))
    bad = [n for n in wanted if n >= N or n < 0]
    if bad:
        raise DegreeBoundTooSmall(f"degrees {bad} need a resolution longer than {N}")
    C = global_sections_complex(godement_resolution(F, N, check=check))
    dims = C.cohomology_dims()
    return CohomologyReport({n: dims[n] for n in wanted}, "godement", L)


def oracle_complex(F: Sheaf) -> CochainComplex:
    """The strict-chain complex ``C^n = ⊕_{i_0 < ... < i_n} F_{i_0}``.

    ``(df)(i_0 < ... < i_{n+1}) = ρ_{i_1,i_0} f(i_1 < ...) + Σ_{k>=1} (-1)^k f(... î_k ...)``.
    """
    P = F.base
    field = F.field
    L = P.chain_length if len(P) else -1
    chains = [P.strict_chains(n) for n in range(L + 1)]
    offsets = []
    for cs in chains:
        pos, off = 0, {}
        for c in cs:
            off[c] = pos
            pos += F.dims[c[0]]
        offsets.append((off, pos))
    dims = [pos for _, pos in offsets]
    d = []
    for n in range(L):
        arr = field.zeros(dims[n + 1], dims[n])
        src_off = offsets[n][0]
        for c, row in offsets[n + 1][0].items():
            h = F.dims[c[0]]
            if h == 0:
                continue
            face = c[1:]
            w = F.dims[face[0]]
            if w:
                col = src_off[face]
                arr[row:row + h, col:col + w] += F.r(c[1], c[0])._a
            for k in range(1, n + 2):
                face = c[:k] + c[k + 1:]
                col = src_off[face]
                sign = 1 if k % 2 == 0 else -1
                for t in range(h):
                    arr[row + t, col + t] += sign
        if field.is_prime:
            arr %= field.p
        d.append(Matrix._wrap(field, arr))
    return CochainComplex(field, dims, d)


def cohomology_via_oracle(F: Sheaf, degrees: Iterable[int] | None = None) -> CohomologyReport:
    L = F.base.chain_length
    dims = oracle_complex(F).cohomology_dims()
    wanted = range(L + 1) if degrees is None else sorted(set(degrees))
    return CohomologyReport({n: dims[n] if n < len(dims) else 0 for n in wanted}, "oracle", L)


def cohomology(F: Sheaf, method: str = "both", max_degree: int | None = None) -> CohomologyReport:
    """Dimensions of ``H^0..H^max_degree`` (default: up to the chain length).

    Raises:
        OracleMismatch: ``method="both"`` and the pipelines disagree.
    """
    L = F.base.chain_length
    top = L if max_degree is None else max_degree
    degrees = range(top + 1)
    if method == "oracle":
        return cohomology_via_oracle(F, degrees)
    if method == "godement":
        return cohomology_via_godement(F, max(L, top) + 1, degrees)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    g = cohomology_via_godement(F, max(L, top) + 1, degrees)
    o = cohomology_via_oracle(F, degrees)
    if g.degrees != o.degrees:
        raise OracleMismatch(g.vector(top), o.vector(top))
    return CohomologyReport(g.degrees, "both", L)


def derived_limit(F: Sheaf, n: int) -> CohomologyReport:
    """``lim^(n) F`` by both pipelines; the report covers degrees ``0..max(L, n)``.

    Raises:
        OracleMismatch: the pipelines disagree in some degree.
    """
    return cohomology(F, "both", max(F.base.chain_length, n))


# long exact sequences

def chain_map(phi: SheafMorphism, src: CochainComplex | None = None) -> list[Matrix]:
    """The induced map of oracle complexes, one block-diagonal matrix per degree."""
    F, G = phi.source, phi.target
    P = F.base
    L = P.chain_length if len(P) else -1
    out = []
    for n in range(L + 1):
        cs = P.strict_chains(n)
        rows = sum(G.dims[c[0]] for c in cs)
        cols = sum(F.dims[c[0]] for c in cs)
        arr = F.field.zeros(rows, cols)
        r = s = 0
        for c in cs:
            m = phi.components[c[0]]
            arr[r:r + m.rows, s:s + m.cols] = m._a
            r += m.rows
            s += m.cols
        out.append(Matrix._wrap(F.field, arr))
    return out


@dataclass
class _Cohom:
    reps: Matrix       # rows: cocycle representatives of a basis of H^n
    B: Subspace        # coboundaries

    def classes(self, vectors: Matrix) -> Matrix:
        """Coordinates (one row per vector) of cocycle classes in the ``reps`` basis."""
        k = self.reps.rows
        if vectors.rows == 0 or k == 0:
            return Matrix.zeros(vectors.field, vectors.rows, k)
        basis = vstack([self.reps, self.B.basis])
        combined = Subspace.span(basis)
        coords_rref = combined.coordinates(vectors)   # in the echelon basis of combined
        basis_in_rref = combined.coordinates(basis)   # square and invertible
        return (coords_rref @ basis_in_rref.inverse()).take_cols(range(k))


def _cohom(C: CochainComplex, n: int) -> _Cohom:
    Z, B = C.cocycles(n), C.coboundaries(n)
    return _Cohom(complement_basis(Z, B), B)


@dataclass
class LESReport:
    """The long exact sequence ``H^0(A) -> H^0(B) -> H^0(C) -> H^1(A) -> ...``.

    ``nodes`` lists ``(space, degree, dim)`` in sequence order; ``ranks[k]``
    is the rank of the map leaving node ``k`` (the last map goes to zero).
    """

    nodes: list[tuple[str, int, int]]
    ranks: list[int]
    connecting_ranks: list[int]
    compositions_vanish: bool
    exact_at: list[bool]
    euler: tuple[int, int, int]

    @property
    def exact(self) -> bool:
        return self.compositions_vanish and all(self.exact_at)

    @property
    def euler_additive(self) -> bool:
        a, b, c = self.euler
        return b == a + c


def long_exact_sequence(g: SheafMorphism, h: SheafMorphism) -> LESReport:
    """Cohomology LES of ``0 -> A -g-> B -h-> C -> 0`` through oracle complexes.

    Connecting maps come from the snake construction: lift a cocycle of
    ``C`` to ``B``, apply ``d``, and pull the result back along ``g``.

    Raises:
        NotExact: the input is not a short exact sequence.
    """
    if not is_exact_sequence([g, h], augmented=True):
        raise NotExact("input is not a short exact sequence")
    A, B, C = g.source, g.target, h.target
    CA, CB, CC = oracle_complex(A), oracle_complex(B), oracle_complex(C)
    G, Hm = chain_map(g), chain_map(h)
    L = CA.top
    hs = {name: [_cohom(X, n) for n in range(L + 1)] for name, X in (("A", CA), ("B", CB), ("C", CC))}
    field = A.field

    maps: list[Matrix] = []       # matrices acting on row vectors of class coordinates
    nodes: list[tuple[str, int, int]] = []
    connecting = []
    for n in range(L + 1):
        ha, hb, hc = hs["A"][n], hs["B"][n], hs["C"][n]
        nodes += [("A", n, ha.reps.rows), ("B", n, hb.reps.rows), ("C", n, hc.reps.rows)]
        maps.append(hb.classes((G[n] @ ha.reps.T).T))
        maps.append(hc.classes((Hm[n] @ hb.reps.T).T))
        if n < L:
            nxt = hs["A"][n + 1]
            images = []
            for t in range(hc.reps.rows):
                c = hc.reps.row_block(t, t + 1).T
                b = _solve_exact(Hm[n], c)
                db = CB.differential(n) @ b
                a = _solve_exact(G[n + 1], db)
                images.append(a.T)
            V = vstack(images, field, cols=CA.dims[n + 1])
            delta = nxt.classes(V)
        else:
            delta = Matrix.zeros(field, hc.reps.rows, 0)
        connecting.append(delta.rank())
        maps.append(delta)

    ranks = [m.rank() for m in maps]
    vanish = all((maps[k] @ maps[k + 1]).is_zero() for k in range(len(maps) - 1))
    exact_at = []
    for k, (_, _, dim) in enumerate(nodes):
        r_in = ranks[k - 1] if k else 0
        exact_at.append(r_in + ranks[k] == dim)
    chi = tuple(
        sum((-1) ** n * hs[name][n].reps.rows for n in range(L + 1)) for name in ("A", "B", "C")
    )
    return LESReport(nodes, ranks, connecting, vanish, exact_at, chi)


def _solve_exact(M: Matrix, v: Matrix) -> Matrix:
    x = solve(M, v)
    if x is None:
        raise NotExact("snake construction found no preimage")
    return x


# Mittag-Leffler window

@dataclass
class MLReport:
    stabilization_index: dict[str, str]
    images: dict[str, list[int]]

    def to_json(self) -> dict:
        return {"stabilization_index": self.stabilization_index, "image_dims": self.images}


def ml_check(F: Sheaf) -> MLReport:
    """For each ``i`` the least ``j >= i`` after which ``ρ_{r,i}(F_r)`` stops changing.

    Images are compared as echelon subspaces, not just by dimension.

    Raises:
        NotAChain: the base is not totally ordered.
    """
    P = F.base
    if not P.is_chain():
        raise NotAChain("Mittag-Leffler check needs a totally ordered base")
    order = list(P.linear_extension)
    index, images = {}, {}
    for pos, i in enumerate(order):
        subs = [image_basis(F.r(r, i)) for r in order[pos:]]
        k = len(subs) - 1
        while k > 0 and subs[k - 1] == subs[-1]:
            k -= 1
        index[P.elements[i]] = P.elements[order[pos + k]]
        images[P.elements[i]] = [s.dim for s in subs]
    return MLReport(index, images)
