import random

import pytest
from hypothesis import given, settings, strategies as st

from alexandrov.cohomology import godement_sheaf
from alexandrov.errors import BaseMismatch, NotGalois, RecipeInfeasible
from alexandrov.exactla import GF, QQ, vstack
from alexandrov.fixtures import chain, circ4, vee
from alexandrov.functors import (
    adjunction, is_isomorphic_via, point_sheaf, pullback, pullback_morphism, pushforward, pushforward_data,
    pushforward_equals_pullback, pushforward_morphism, restrict, skyscraper,
)
from alexandrov.generators import (
    FIELDS, random_directed_poset, random_monotone, random_poset, random_sheaf, random_subsheaf_ses, transport,
)
from alexandrov.poset import MonotoneMap, Poset, galois_right_adjoint, is_cofinal_mask, validate_poset
from alexandrov.sheafsys import (
    SheafMorphism, constant_sheaf, is_exact_sequence, is_flabby, is_weakly_flabby, limit, restriction_between,
    validate_sheaf, zero_sheaf,
)
from alexandrov.verify import random_galois_map


def collapse():
    return MonotoneMap(chain(3), chain(2), (0, 0, 1))


def test_pullback_examples():
    T = constant_sheaf(circ4(), QQ, 2)
    assert pullback(MonotoneMap.identity(circ4()), T) == T
    pi = MonotoneMap.constant(circ4(), Poset.point(), "*")
    assert pullback(pi, point_sheaf(GF(2), 1)) == constant_sheaf(circ4(), GF(2), 1)
    T = validate_sheaf(chain(2), QQ, [1, 2], {("1", "0"): "1 1"})
    assert pullback(collapse(), T).dims == (1, 1, 2)
    with pytest.raises(BaseMismatch):
        pullback(collapse(), constant_sheaf(chain(3), QQ, 1))


def test_restrict_examples():
    F = constant_sheaf(circ4(), QQ, 1)
    assert restrict(F, circ4().elements) == F
    R = restrict(F, ["a", "c", "d"])
    assert R == constant_sheaf(circ4().induced(["a", "c", "d"]), QQ, 1)
    S = skyscraper(circ4(), "a", QQ, 2)
    assert restrict(S, ["b"]).is_zero()


def test_pushforward_examples():
    F = constant_sheaf(circ4(), QQ, 1)
    same = pushforward(MonotoneMap.identity(circ4()), F)
    assert same.dims == F.dims and is_isomorphic_via(SheafMorphism.identity(F)) and same == F
    P = chain(2)
    sigma = MonotoneMap(Poset.point(), P, (1,))
    assert pushforward(sigma, point_sheaf(QQ, 3)) == skyscraper(P, "1", QQ, 3)
    pi = MonotoneMap.constant(circ4(), Poset.point(), "*")
    assert pushforward(pi, constant_sheaf(circ4(), GF(2), 1)).dims == (1,)


def test_skyscraper_examples():
    S = skyscraper(chain(3), "0", GF(2), 1)
    assert S == constant_sheaf(chain(3), GF(2), 1)
    assert skyscraper(chain(3), "2", GF(2), 1).dims == (0, 0, 1)
    assert skyscraper(circ4(), "a", QQ, 1).dims == (1, 0, 1, 1)
    assert is_flabby(skyscraper(circ4(), "c", QQ, 2))


def test_adjunction_examples():
    P = circ4()
    F = constant_sheaf(P, QQ, 1)
    w = adjunction(MonotoneMap.identity(P), F, F)
    assert w.holds
    assert w.unit == SheafMorphism.identity(F) and w.counit == SheafMorphism.identity(F)
    pi = MonotoneMap.constant(chain(2), Poset.point(), "*")
    w = adjunction(pi, constant_sheaf(chain(2), QQ, 1), point_sheaf(QQ, 1))
    assert w.holds and w.hom_pullback_side == w.hom_pushforward_side == 1
    sigma = MonotoneMap(Poset.point(), chain(2), (1,))
    w = adjunction(sigma, point_sheaf(QQ, 2), skyscraper(chain(2), "1", QQ, 2))
    assert w.holds and w.counit.components[0].is_invertible()


def test_galois_coincidence_examples():
    c = collapse()
    g = galois_right_adjoint(c)
    assert pushforward_equals_pullback(c, g, constant_sheaf(chain(3), QQ, 1))
    S = skyscraper(chain(3), "2", QQ, 1)
    assert pushforward_equals_pullback(c, g, S)
    assert pushforward(c, S).dims == skyscraper(chain(2), "1", QQ, 1).dims
    P = circ4()
    idP = MonotoneMap.identity(P)
    assert pushforward_equals_pullback(idP, idP, constant_sheaf(P, GF(3), 2))
    with pytest.raises(NotGalois):
        pushforward_equals_pullback(c, MonotoneMap.constant(chain(2), chain(3), "0"), S)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_pullback_is_exact(seed, field):
    rng = random.Random(seed)
    J = random_poset(rng, rng.randint(1, 5), prefix="j")
    I = random_poset(rng, rng.randint(1, 5), prefix="i")
    try:
        f = random_monotone(rng, I, J)
    except RecipeInfeasible:
        return
    g, h = random_subsheaf_ses(rng, random_sheaf(rng, J, field))
    pg, ph = pullback_morphism(f, g), pullback_morphism(f, h)
    Z = zero_sheaf(I, field)
    seq = [SheafMorphism.zero(Z, pg.source), pg, ph, SheafMorphism.zero(ph.target, Z)]
    assert is_exact_sequence(seq)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_pushforward_is_left_exact_and_keeps_flabbiness(seed, field):
    rng = random.Random(seed)
    I = random_poset(rng, rng.randint(1, 5), prefix="i")
    J = random_poset(rng, rng.randint(1, 4), prefix="j")
    try:
        f = random_monotone(rng, I, J)
    except RecipeInfeasible:
        return
    B = random_sheaf(rng, I, field)
    g, h = random_subsheaf_ses(rng, B)
    src, mid, tgt = (pushforward_data(f, X) for X in (g.source, g.target, h.target))
    fg = pushforward_morphism(f, g, src, mid)
    fh = pushforward_morphism(f, h, mid, tgt)
    Z = zero_sheaf(J, field)
    assert is_exact_sequence([SheafMorphism.zero(Z, fg.source), fg, fh])
    G, _ = godement_sheaf(B)
    assert is_flabby(pushforward(f, G))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_adjunction_triangles_and_hom_dims(seed, field):
    rng = random.Random(seed)
    I = random_poset(rng, rng.randint(1, 4), prefix="i")
    J = random_poset(rng, rng.randint(1, 4), prefix="j")
    try:
        f = random_monotone(rng, I, J)
    except RecipeInfeasible:
        return
    S = random_sheaf(rng, I, field, max_dim=2)
    T = random_sheaf(rng, J, field, max_dim=2)
    w = adjunction(f, S, T)
    assert w.triangle_pushforward and w.triangle_pullback
    assert w.hom_pullback_side == w.hom_pushforward_side
    assert w.unit.naturality_failure() is None and w.counit.naturality_failure() is None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_cofinal_pullback_is_iso_on_sections(seed, field):
    rng = random.Random(seed)
    J = random_directed_poset(rng, rng.randint(1, 6), prefix="j")
    top = len(J) - 1
    # I: a directed poset mapping onto a cofinal part of J
    I = random_directed_poset(rng, rng.randint(1, 4), prefix="i")
    try:
        f = random_monotone(rng, I, J, fixed={len(I) - 1: top})
    except RecipeInfeasible:
        return
    assert is_cofinal_mask(J, f.image_mask())
    T = random_sheaf(rng, J, field)
    pulled = pullback(f, T)
    glob_T, glob_I = limit(T), limit(pulled)
    assert glob_T.dim == glob_I.dim
    # the comparison map x -> (ρ_{top, f(i)} x_top)_i is invertible
    family = vstack([T.r(top, f.values[i]) @ glob_T.block(top) for i in glob_I.members])
    M = glob_I.coordinates(family, check=True)
    assert M.is_invertible() or M.shape == (0, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_pullback_keeps_weak_flabbiness_on_directed_bases(seed, field):
    rng = random.Random(seed)
    J = random_directed_poset(rng, rng.randint(1, 5), prefix="j")
    I = random_directed_poset(rng, rng.randint(1, 5), prefix="i")
    try:
        f = random_monotone(rng, I, J)
    except RecipeInfeasible:
        return
    W = random_sheaf(rng, J, field, max_dim=2)
    if is_weakly_flabby(W):
        assert is_weakly_flabby(pullback(f, W))
    j = rng.choice(J.elements)
    assert is_weakly_flabby(pullback(f, skyscraper(J, j, field, 1)))


def test_galois_coincidence_on_random_maps():
    rng = random.Random(3)
    hits = 0
    for _ in range(40):
        f = random_galois_map(rng)
        g = galois_right_adjoint(f)
        if g is None:
            continue
        hits += 1
        for field in FIELDS:
            F = random_sheaf(rng, f.source, field, max_dim=2)
            assert pushforward_equals_pullback(f, g, F)
            F2, _ = transport(rng, F)
            assert pushforward_equals_pullback(f, g, F2)
    assert hits > 10


def test_vee_pushforward_to_chain_matches_sections():
    f = MonotoneMap(vee(), chain(2), (0, 0, 1))
    F = constant_sheaf(vee(), QQ, 1)
    data = pushforward_data(f, F)
    assert data.sheaf.dims == (2, 1)
    assert restriction_between(data.spaces[1], data.spaces[0]).rank() == 1
    assert validate_poset([("a", "m")], ["a", "m"]) == vee().induced(["a", "m"])
