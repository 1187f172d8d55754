import json

import pytest

from alexandrov.exactla import GF, QQ, Matrix
from alexandrov.fixtures import chain, circ4, vee
from alexandrov.functors import pullback, pushforward, skyscraper
from alexandrov.poset import MonotoneMap, Poset
from alexandrov.sheafsys import SheafMorphism, constant_sheaf
from alexandrov.verify import (
    FIXTURE_CASES, RECIPES, classify_fiber, random_instance, run_fixture, run_recipe, verify_countable_chain_cor,
    verify_pullback_theorem, verify_pushforward_prop, verify_thm2, verify_thm3,
)


def test_pullback_examples():
    case = run_fixture("pullback-max-chain3")
    assert case.hypotheses_hold and case.conclusion_holds
    assert case.conclusion["lhs"] == case.conclusion["rhs"] == [1, 0, 0]
    case = run_fixture("pullback-not-cofinal")
    assert case.label == "negative" and not case.hypotheses["image_cofinal"]
    assert case.conclusion["lhs"][0] == 0 and case.conclusion["rhs"][0] == 1
    P = circ4()
    case = verify_pullback_theorem(MonotoneMap.identity(P), constant_sheaf(P, QQ, 1))
    assert case.conclusion_holds


def test_thm2_examples():
    P = chain(3)
    F = constant_sheaf(P, GF(3), 1)
    Ip = P.induced(["2"])
    p = MonotoneMap.identity(Ip)
    case = verify_thm2(p, F, F, ["2"], ["2"], [Matrix.identity(GF(3), 1)])
    assert case.hypotheses_hold and case.conclusion_holds
    case = run_fixture("thm2-vee-point")
    assert case.hypotheses_hold and case.conclusion["lhs"] == [1, 0]
    case = verify_thm2(p, F, F, ["2"], ["2"], [Matrix.zeros(GF(3), 1, 1)])
    assert case.label == "negative" and not case.hypotheses["psi_invertible"]


def test_thm3_examples():
    P = circ4().induced(["a", "c"])
    T = constant_sheaf(P, QQ, 2)
    idP = MonotoneMap.identity(P)
    case = verify_thm3(idP, T, T, P.elements, P.elements, SheafMorphism.identity(T))
    assert case.hypotheses_hold and case.conclusion_holds
    case = run_fixture("thm3-chain3-chain2")
    assert case.hypotheses_hold and case.conclusion_holds
    I, J = chain(3), chain(2)
    q = MonotoneMap(I, J, (0, 0, 1))
    T = constant_sheaf(I, GF(3), 1)
    A = pushforward(q, T)
    bad = [Matrix.zeros(GF(3), 1, 1), Matrix.identity(GF(3), 1)]
    case = verify_thm3(q, A, T, J.elements, I.elements, bad)
    assert case.label == "negative" and not case.hypotheses["phi_natural"]


def test_pushforward_examples():
    case = run_fixture("pushforward-wedge")
    assert case.hypotheses_hold and case.conclusion_holds
    assert case.conclusion["lhs"] == case.conclusion["rhs"] == [1, 0]
    fibers = case.witnesses["fibers"]
    assert fibers["0"]["class"] == "unique_max" and fibers["1"]["higher_cohomology"] == [0]


def test_sharpness_case():
    case = run_fixture("pushforward-circ4-point")
    assert case.label == "negative"
    assert case.witnesses["fibers"]["*"]["higher_cohomology"] == [1]
    assert case.conclusion["lhs"] == [1, 0] and case.conclusion["rhs"] == [1, 1]
    assert not case.conclusion_holds


def test_pushforward_along_galois_map_has_classified_fibers():
    f = MonotoneMap(chain(3), chain(2), (0, 0, 1))
    case = verify_pushforward_prop(f, skyscraper(chain(3), "1", QQ, 2))
    assert case.hypotheses_hold and case.conclusion_holds
    assert all(v["class"] == "unique_max" for v in case.witnesses["fibers"].values())


def test_countable_examples():
    P = chain(3)
    N = P.induced(["2"])
    case = verify_countable_chain_cor(MonotoneMap.constant(N, Poset.point(), "*"), constant_sheaf(P, QQ, 1), P)
    assert case.hypotheses_hold and case.conclusion_holds
    case = run_fixture("countable-vee")
    assert case.hypotheses_hold and case.conclusion["lhs"] == case.conclusion["rhs"] == [1, 0]
    case = verify_countable_chain_cor(MonotoneMap.identity(P), constant_sheaf(P, QQ, 1), P)
    assert case.hypotheses_hold and case.conclusion_holds


def test_classify_fiber():
    P = vee()
    assert classify_fiber(P, 0) == "empty"
    assert classify_fiber(P, P.mask_of(["a", "m"])) == "unique_max"
    assert classify_fiber(P, P.mask_of(["a", "b"])) == "unclassified"


@pytest.mark.parametrize("recipe", sorted(RECIPES))
def test_recipes_are_sound_and_deterministic(recipe):
    for seed in range(12):
        case = run_recipe(recipe, seed)
        assert case.sound, case.dumps()
        assert run_recipe(recipe, seed).dumps() == case.dumps()
        if recipe in ("thm2", "thm3", "pullback", "pushforward", "countable", "les", "galois"):
            assert case.hypotheses_hold, case.dumps()
        if recipe == "negative-pushforward":
            assert case.label == "negative"


def test_negative_recipe_seed_two_flags_a_fiber():
    case = run_recipe("negative-pushforward", 2)
    assert not case.hypotheses["fibers_acyclic"]
    assert any(any(v["higher_cohomology"]) for v in case.witnesses["fibers"].values())


def test_instances_are_seed_determined():
    a, b = random_instance(1, "thm2"), random_instance(1, "thm2")
    assert a.construction == b.construction
    assert a().dumps() == b().dumps()
    with pytest.raises(ValueError):
        random_instance(0, "nope")


def test_case_json_is_plain_and_sorted():
    case = run_recipe("thm3", 4)
    text = case.dumps()
    assert json.loads(text) == json.loads(json.dumps(case.to_json()))
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_every_fixture_runs():
    for name in FIXTURE_CASES:
        case = run_fixture(name)
        assert case.sound
        assert case.construction["fixture"] == name


def test_pullback_of_point_sheaf_is_constant():
    pi = MonotoneMap.constant(circ4(), Poset.point(), "*")
    F = pullback(pi, constant_sheaf(Poset.point(), QQ, 1))
    assert F == constant_sheaf(circ4(), QQ, 1)
