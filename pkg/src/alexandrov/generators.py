"""Seeded random posets, sheaves, maps and exact sequences.

Every generator takes an explicit :class:`random.Random`; nothing here
touches global state.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import RecipeInfeasible
from .exactla import GF, QQ, Field, Matrix, Subspace, hstack, image_basis
from .poset import MonotoneMap, Poset, _bits, validate_poset
from .sheafsys import Sheaf, _subsheaf, cokernel_sheaf, limit

FIELDS = (GF(2), GF(3), GF(5), QQ)


def random_field(rng: random.Random) -> Field:
    return rng.choice(FIELDS)


def random_matrix(rng: random.Random, field: Field, rows: int, cols: int) -> Matrix:
    if field.is_prime:
        data = [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
    return Matrix(field, data, rows, cols)


def random_invertible(rng: random.Random, field: Field, n: int) -> Matrix:
    while True:
        M = random_matrix(rng, field, n, n)
        if M.is_invertible():
            return M


def relations(P: Poset) -> list[tuple[str, str]]:
    """Covering relations ``lo <= hi`` of ``P`` as id pairs."""
    el = P.elements
    return [(el[lo], el[hi]) for hi, lo in P.covers]


def random_poset(rng: random.Random, n: int, density: float | None = None, prefix: str = "e") -> Poset:
    """Transitive closure of a random DAG whose edges go from lower to higher index."""
    density = rng.choice((0.2, 0.35, 0.5)) if density is None else density
    ids = [f"{prefix}{k}" for k in range(n)]
    rel = [(ids[a], ids[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    return validate_poset(rel, ids)


def random_directed_poset(rng: random.Random, n: int, prefix: str = "e") -> Poset:
    """A random poset of ``n >= 1`` elements whose last element is a maximum."""
    base = random_poset(rng, n - 1, prefix=prefix)
    top = f"{prefix}{n - 1}"
    rel = relations(base) + [(e, top) for e in base.elements]
    return validate_poset(rel, list(base.elements) + [top])


def extend_below(rng: random.Random, P: Poset, extra: int, prefix: str = "x") -> Poset:
    """Add ``extra`` elements, each placed below a random nonempty set of existing ones.

    Maxima and cofinal subsets of ``P`` stay maxima and cofinal.
    """
    rel = relations(P)
    ids = list(P.elements)
    for k in range(extra):
        new = f"{prefix}{k}"
        above = rng.sample(ids, rng.randint(1, min(2, len(ids))))
        rel += [(new, b) for b in above]
        ids.append(new)
    return validate_poset(rel, ids)


def random_sheaf(rng: random.Random, P: Poset, field: Field, max_dim: int = 3,
                 dims: Sequence[int] | None = None) -> Sheaf:
    """Free construction: each stalk maps at random into the sections of its strict down-set."""
    d = [0] * len(P)
    rho: dict[tuple[int, int], Matrix] = {}
    for a in P.linear_extension:
        d[a] = rng.randint(0, max_dim) if dims is None else dims[a]
        rho[a, a] = Matrix.identity(field, d[a])
        below = P.down_mask(a) & ~(1 << a)
        if not below:
            continue
        space = limit(Sheaf(P, field, d, rho), below)
        M = random_matrix(rng, field, space.dim, d[a])
        for b in _bits(below):
            rho[a, b] = space.block(b) @ M
    return Sheaf(P, field, d, rho)


def vanishing_on(rng: random.Random, P: Poset, mask: int, field: Field, max_dim: int = 2) -> Sheaf:
    """A random sheaf whose stalks vanish on ``mask``."""
    dims = [0 if mask >> a & 1 else rng.randint(0, max_dim) for a in range(len(P))]
    return random_sheaf(rng, P, field, max_dim, dims)


def transport(rng: random.Random, F: Sheaf) -> tuple[Sheaf, list[Matrix]]:
    """A copy of ``F`` in random stalk bases, with the isomorphisms ``F_i -> F'_i``."""
    Ms = [random_invertible(rng, F.field, d) for d in F.dims]
    inv = [M.inverse() for M in Ms]
    rho = {(a, b): Ms[b] @ m @ inv[a] for (a, b), m in F._rho.items()}
    return Sheaf(F.base, F.field, F.dims, rho), Ms


def random_monotone(rng: random.Random, I: Poset, J: Poset, fixed: dict[int, int] | None = None) -> MonotoneMap:
    """Greedy bottom-up assignment; each value is drawn among common upper bounds so far.

    Raises:
        RecipeInfeasible: some element has no admissible value.
    """
    fixed = fixed or {}
    values = [None] * len(I)
    for a in I.linear_extension:
        allowed = (1 << len(J)) - 1
        for b in _bits(I.down_mask(a) & ~(1 << a)):
            allowed &= J.up_mask(values[b])
        if a in fixed:
            if not allowed >> fixed[a] & 1:
                raise RecipeInfeasible("fixed value violates monotonicity")
            values[a] = fixed[a]
            continue
        choices = list(_bits(allowed))
        if not choices:
            raise RecipeInfeasible("no monotone extension")
        values[a] = rng.choice(choices)
    return MonotoneMap(I, J, tuple(values))


def copies_over(rng: random.Random, J: Poset, max_copies: int = 2, prefix: str = "c") -> tuple[Poset, MonotoneMap]:
    """A poset ``I`` with a surjective monotone ``p: I -> J``.

    Each ``j`` gets a chain of copies; ``(j, s) <= (j', t)`` when ``j < j'``
    or ``j = j'`` and ``s <= t``.
    """
    counts = [rng.randint(1, max_copies) for _ in range(len(J))]
    ids, owner = [], []
    for j, c in enumerate(counts):
        for s in range(c):
            ids.append(f"{prefix}{j}_{s}")
            owner.append((j, s))
    rel = []
    for x, (j, s) in enumerate(owner):
        for y, (k, t) in enumerate(owner):
            if (j == k and s + 1 == t) or (j != k and J._leq(j, k) and s == counts[j] - 1 and t == 0):
                rel.append((ids[x], ids[y]))
    I = validate_poset(rel, ids)
    return I, MonotoneMap(I, J, tuple(j for j, _ in owner))


def random_subsheaf_ses(rng: random.Random, B: Sheaf, generators: int = 2):
    """``0 -> A -> B -> B/A -> 0`` with ``A`` generated by random vectors at random points."""
    P = B.base
    field = B.field
    gens = []
    for _ in range(generators):
        j = rng.randrange(len(P))
        if B.dims[j]:
            gens.append((j, random_matrix(rng, field, B.dims[j], 1)))
    spaces = []
    for i in range(len(P)):
        cols = [B.r(j, i) @ x for j, x in gens if P._leq(i, j)]
        if cols:
            spaces.append(image_basis(hstack(cols)))
        else:
            spaces.append(Subspace.zero(field, B.dims[i]))
    _, g = _subsheaf(B, spaces)
    _, h = cokernel_sheaf(g)
    return g, h
