"""Replay the transfer theorems for derived limits on finite instances.

Each ``verify_*`` function checks the hypotheses of one statement, computes
both sides of its conclusion as cohomology dimension vectors and returns a
:class:`VerificationCase`.  Cases whose hypotheses all hold are *positive*
and must have a true conclusion; the others are *negative* and their
conclusions are informational.

:func:`random_instance` builds inputs for a recipe from a seed; positive
recipes satisfy their hypotheses by construction (for example ``A`` is
defined as a transported pull-back).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Iterable, Mapping

from .cohomology import cohomology, godement_resolution, godement_sheaf, long_exact_sequence, ml_check
from .errors import AlexandrovError, RecipeInfeasible
from .exactla import GF, QQ, Field
from .fixtures import chain, circ4, vee, wedge
from .functors import (
    adjunction,
    pullback,
    pushforward,
    pushforward_data,
    pushforward_equals_pullback,
    pushforward_morphism,
    restrict,
    skyscraper,
)
from .generators import (
    copies_over,
    extend_below,
    random_directed_poset,
    random_field,
    random_monotone,
    random_poset,
    random_sheaf,
    random_subsheaf_ses,
    transport,
    vanishing_on,
)
from .poset import (
    MonotoneMap,
    Poset,
    Subset,
    _as_mask,
    _bits,
    check_size,
    galois_right_adjoint,
    is_cofinal_mask,
    is_directed_mask,
    is_galois_pair,
    maximum_of_mask,
)
from .sheafsys import (
    Sheaf,
    SheafMorphism,
    cokernel_sheaf,
    constant_sheaf,
    direct_sum,
    is_exact_sequence,
    validate_morphism,
)

# pipeline used for conclusion dimension vectors; "both" cross-checks every one
METHOD = "both"


@dataclass
class VerificationCase:
    theorem: str
    construction: dict
    hypotheses: dict[str, bool]
    conclusion: dict
    witnesses: dict = dc_field(default_factory=dict)
    seed: int | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def conclusion_holds(self) -> bool:
        return bool(self.conclusion.get("holds"))

    @property
    def label(self) -> str:
        return "positive" if self.hypotheses_hold else "negative"

    @property
    def sound(self) -> bool:
        """False exactly when all hypotheses hold and the conclusion fails."""
        return not self.hypotheses_hold or self.conclusion_holds

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "seed": self.seed,
            "construction": self.construction,
            "label": self.label,
            "hypotheses": self.hypotheses,
            "conclusion": self.conclusion,
            "witnesses": self.witnesses,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _hvec(F: Sheaf, top: int, method: str | None = None) -> list[int]:
    return cohomology(F, method or METHOD, top).vector(top)


def _directed(P: Poset, mask: int | None = None) -> bool:
    return is_directed_mask(P, (1 << len(P)) - 1 if mask is None else mask)


def _cofinal(P: Poset, mask: int) -> bool:
    return _directed(P) and is_cofinal_mask(P, mask)


def _monotone(f: MonotoneMap) -> bool:
    S, T = f.source, f.target
    return all(T._leq(f.values[a], f.values[b]) for a in range(len(S)) for b in _bits(S.up_mask(a)))


def _compare(lhs: Sheaf, rhs: Sheaf, method: str | None = None) -> dict:
    top = max(lhs.base.chain_length, rhs.base.chain_length)
    a, b = _hvec(lhs, top, method), _hvec(rhs, top, method)
    return {"lhs": a, "rhs": b, "equal": a == b, "holds": a == b}


def _morphism_ok(phi, source: Sheaf, target: Sheaf) -> tuple[bool, bool, str | None]:
    """(natural, invertible, reason) for a candidate morphism ``source -> target``."""
    try:
        if isinstance(phi, SheafMorphism):
            if phi.source != source or phi.target != target:
                return False, False, "morphism has the wrong source or target"
            phi = phi.components
        m = validate_morphism(phi, source, target)
    except AlexandrovError as exc:
        return False, False, f"{type(exc).__name__}: {exc}"
    return True, m.is_iso(), None


def classify_fiber(P: Poset, mask: int) -> str:
    """``empty``, ``unique_max`` (the fiber is some ``Λ(i)``) or ``unclassified``.

    A finite nonempty directed fiber has a maximum, so the directed
    countable-chain case always lands in ``unique_max``.
    """
    if mask == 0:
        return "empty"
    if maximum_of_mask(P, mask) is not None:
        return "unique_max"
    return "unclassified"


def _fiber_report(f: MonotoneMap, F: Sheaf, method: str | None = None) -> dict[str, dict]:
    out = {}
    J = f.target
    for j in range(len(J)):
        mask = f.preimage_mask(J.down_mask(j))
        ids = f.source.ids_of(mask)
        sub = restrict(F, Subset(f.source, mask))
        L = sub.base.chain_length
        higher = _hvec(sub, L, method or "oracle")[1:] if mask else []
        out[J.elements[j]] = {
            "members": list(ids),
            "class": classify_fiber(f.source, mask),
            "higher_cohomology": higher,
        }
    return out


# statements

def verify_pullback_theorem(f: MonotoneMap, F: Sheaf) -> VerificationCase:
    """Pull-back along a cofinal map of directed posets preserves cohomology."""
    I, J = f.source, f.target
    hyp = {
        "source_directed": _directed(I),
        "target_directed": _directed(J),
        "monotone": _monotone(f),
        "image_cofinal": _cofinal(J, f.image_mask()),
        "sheaf_on_target": F.base == J,
    }
    concl = _compare(pullback(f, F), F)
    return VerificationCase("pullback", {"map": f.mapping}, hyp, concl)


def verify_thm2(p: MonotoneMap, A: Sheaf, S: Sheaf, I_prime: Subset | Iterable[str],
                J_prime: Subset | Iterable[str], psi) -> VerificationCase:
    """``A|I' ≅ p^{-1}(S|J')`` with ``p`` surjective implies ``H(I, A) = H(J, S)``."""
    I, J = A.base, S.base
    mi, mj = _as_mask(I, I_prime), _as_mask(J, J_prime)
    Ip, Jp = I.induced(Subset(I, mi)), J.induced(Subset(J, mj))
    hyp = {
        "I_directed": _directed(I),
        "J_directed": _directed(J),
        "I_prime_directed": _directed(I, mi),
        "J_prime_directed": _directed(J, mj),
        "I_prime_cofinal": _cofinal(I, mi),
        "J_prime_cofinal": _cofinal(J, mj),
        "p_domains": p.source == Ip and p.target == Jp,
    }
    wit = {}
    if hyp["p_domains"]:
        hyp["p_monotone"] = _monotone(p)
        hyp["p_surjective"] = p.is_surjective()
        natural, iso, why = _morphism_ok(psi, restrict(A, Subset(I, mi)), pullback(p, restrict(S, Subset(J, mj))))
    else:
        hyp["p_monotone"] = hyp["p_surjective"] = False
        natural, iso, why = False, False, "p does not map I' to J'"
    hyp["psi_natural"] = natural
    hyp["psi_invertible"] = iso
    if why:
        wit["psi"] = why
    concl = _compare(A, S)
    return VerificationCase("thm2", {"p": p.mapping, "I_prime": list(Ip.elements), "J_prime": list(Jp.elements)},
                            hyp, concl, wit)


def verify_thm3(q: MonotoneMap, A: Sheaf, T: Sheaf, J_prime: Subset | Iterable[str],
                I_prime: Subset | Iterable[str], phi) -> VerificationCase:
    """``A|J' ≅ q_*(T|I')`` with classified fibers implies ``H(J, A) = H(I, T)``."""
    J, I = A.base, T.base
    mj, mi = _as_mask(J, J_prime), _as_mask(I, I_prime)
    Jp, Ip = J.induced(Subset(J, mj)), I.induced(Subset(I, mi))
    hyp = {
        "J_directed": _directed(J),
        "I_directed": _directed(I),
        "J_prime_directed": _directed(J, mj),
        "I_prime_directed": _directed(I, mi),
        "J_prime_cofinal": _cofinal(J, mj),
        "I_prime_cofinal": _cofinal(I, mi),
        "q_domains": q.source == Ip and q.target == Jp,
    }
    wit: dict[str, Any] = {}
    if hyp["q_domains"]:
        hyp["q_monotone"] = _monotone(q)
        fibers = {
            Jp.elements[j]: classify_fiber(Ip, q.preimage_mask(Jp.down_mask(j))) for j in range(len(Jp))
        }
        wit["fibers"] = fibers
        hyp["fibers_classified"] = all(c != "unclassified" for c in fibers.values())
        TI = restrict(T, Subset(I, mi))
        natural, iso, why = _morphism_ok(phi, restrict(A, Subset(J, mj)), pushforward(q, TI))
    else:
        hyp["q_monotone"] = hyp["fibers_classified"] = False
        natural, iso, why = False, False, "q does not map I' to J'"
    hyp["phi_natural"] = natural
    hyp["phi_invertible"] = iso
    if why:
        wit["phi"] = why
    concl = _compare(A, T)
    return VerificationCase("thm3", {"q": q.mapping, "I_prime": list(Ip.elements), "J_prime": list(Jp.elements)},
                            hyp, concl, wit)


def pushed_resolution_exact(f: MonotoneMap, F: Sheaf) -> bool:
    """Whether ``f_*`` of the Godement resolution of ``F`` is still exact."""
    N = F.base.chain_length + 1
    res = godement_resolution(F, N, check=False)
    data = [pushforward_data(f, F)] + [pushforward_data(f, G) for G in res.terms]
    maps = [pushforward_morphism(f, res.augmentation, data[0], data[1])]
    for n, d in enumerate(res.differentials):
        maps.append(pushforward_morphism(f, d, data[n + 1], data[n + 2]))
    return maps[0].is_mono() and is_exact_sequence(maps)


def verify_pushforward_prop(f: MonotoneMap, F: Sheaf, resolution: bool = True) -> VerificationCase:
    """Acyclic fibers ``f^{-1}(Λ(j))`` make ``f_*`` preserve resolutions and cohomology."""
    fibers = _fiber_report(f, F)
    hyp = {
        "sheaf_on_source": F.base == f.source,
        "monotone": _monotone(f),
        "fibers_acyclic": all(not any(v["higher_cohomology"]) for v in fibers.values()),
    }
    concl = _compare(pushforward(f, F), F)
    if resolution:
        concl["pushed_resolution_exact"] = pushed_resolution_exact(f, F)
        concl["holds"] = concl["equal"] and concl["pushed_resolution_exact"]
    return VerificationCase("pushforward", {"map": f.mapping}, hyp, concl, {"fibers": fibers})


def verify_countable_chain_cor(f: MonotoneMap, F: Sheaf, I: Poset | None = None) -> VerificationCase:
    """``f: N -> J`` on a cofinal chain ``N`` of ``I`` gives ``H(J, f_*(F|N)) = H(I, F)``."""
    I = F.base if I is None else I
    N = f.source
    members = [e for e in N.elements if e in I]
    hyp = {"I_directed": _directed(I), "sheaf_on_I": F.base == I}
    hyp["N_induced"] = len(members) == len(N) and I.induced(members) == N
    hyp["N_chain"] = N.is_chain()
    mask = I.mask_of(members) if hyp["N_induced"] else 0
    hyp["N_cofinal"] = hyp["N_induced"] and _cofinal(I, mask)
    wit: dict[str, Any] = {}
    if hyp["N_induced"] and hyp["N_chain"]:
        FN = restrict(F, Subset(I, mask))
        whole = [
            f.target.elements[j] for j in range(len(f.target))
            if f.preimage_mask(f.target.down_mask(j)) == (1 << len(N)) - 1
        ]
        if whole:
            wit["ml_index"] = ml_check(FN).stabilization_index
        wit["fibers_equal_to_N"] = whole
        # on a finite chain the stabilisation index always exists
        hyp["ml_where_fiber_is_N"] = True
        concl = _compare(pushforward(f, FN), F)
    else:
        hyp["ml_where_fiber_is_N"] = False
        concl = {"lhs": None, "rhs": None, "equal": False, "holds": False}
    return VerificationCase("countable", {"map": f.mapping, "N": list(N.elements)}, hyp, concl, wit)


def verify_les(g: SheafMorphism, h: SheafMorphism) -> VerificationCase:
    """The cohomology sequence of a short exact sequence is exact, and χ is additive."""
    try:
        short_exact = is_exact_sequence([g, h], augmented=True)
    except AlexandrovError:
        short_exact = False
    hyp = {"short_exact": short_exact}
    if not short_exact:
        return VerificationCase("les", {}, hyp, {"holds": False})
    rep = long_exact_sequence(g, h)
    concl = {
        "nodes": [[s, n, d] for s, n, d in rep.nodes],
        "ranks": rep.ranks,
        "connecting_ranks": rep.connecting_ranks,
        "exact": rep.exact,
        "euler": list(rep.euler),
        "euler_additive": rep.euler_additive,
        "holds": rep.exact and rep.euler_additive,
    }
    return VerificationCase("les", {}, hyp, concl)


def verify_galois(f: MonotoneMap, sheaves: list[Sheaf], targets: list[Sheaf] | None = None) -> VerificationCase:
    """``f_* = g^{-1}`` for the right adjoint ``g``, plus the adjunction triangles."""
    g = galois_right_adjoint(f)
    hyp = {"has_right_adjoint": g is not None}
    if g is None:
        return VerificationCase("galois", {"map": f.mapping}, hyp, {"holds": False})
    hyp["galois_pair"] = is_galois_pair(f, g)
    coincide = [pushforward_equals_pullback(f, g, F) for F in sheaves]
    triangles, homs = [], []
    for k, F in enumerate(sheaves):
        T = targets[k] if targets else constant_sheaf(f.target, F.field, 1)
        w = adjunction(f, F, T)
        triangles.append(w.triangle_pushforward and w.triangle_pullback)
        homs.append([w.hom_pullback_side, w.hom_pushforward_side])
    concl = {
        "pushforward_equals_pullback": coincide,
        "triangles": triangles,
        "hom_dims": homs,
        "holds": all(coincide) and all(triangles) and all(a == b for a, b in homs),
    }
    return VerificationCase("galois", {"map": f.mapping, "adjoint": g.mapping}, hyp, concl)


# random recipes

@dataclass(eq=False)
class Instance:
    recipe: str
    seed: int
    run: Callable[..., VerificationCase]
    inputs: dict
    construction: dict

    def __call__(self) -> VerificationCase:
        case = self.run(**self.inputs)
        case.seed = self.seed
        case.construction = {**self.construction, **case.construction}
        return case


def _extension(rng: random.Random, P: Poset, keep: int, B: Sheaf, field: Field) -> tuple[Sheaf, list]:
    """A sheaf ``A`` on ``P`` with ``A|keep`` isomorphic to ``B`` and the isomorphism's components.

    ``A`` is the push-forward of ``B`` along the inclusion, plus a random
    summand vanishing on ``keep``, written in random stalk bases.
    """
    incl = MonotoneMap.inclusion(P, Subset(P, keep))
    ext = pushforward_data(incl, B)
    A0 = direct_sum(ext.sheaf, vanishing_on(rng, P, keep, field))
    A, Ms = transport(rng, A0)
    comps = []
    for a, ia in enumerate(incl.values):
        comps.append(ext.spaces[ia].block(a) @ Ms[ia].inverse())
    return A, comps


def _thm2(rng: random.Random) -> dict:
    field = random_field(rng)
    Jp = random_directed_poset(rng, rng.randint(1, 3), "j")
    J = extend_below(rng, Jp, rng.randint(0, 2), "y")
    Ip, p = copies_over(rng, Jp, 2, "c")
    I = extend_below(rng, Ip, rng.randint(0, min(2, 8 - len(Ip))), "x")
    S = random_sheaf(rng, J, field, 3)
    mj, mi = J.mask_of(Jp.elements), I.mask_of(Ip.elements)
    p = MonotoneMap(I.induced(Subset(I, mi)), J.induced(Subset(J, mj)), p.values)
    B = pullback(p, restrict(S, Subset(J, mj)))
    A, comps = _extension(rng, I, mi, B, field)
    return {"p": p, "A": A, "S": S, "I_prime": Subset(I, mi), "J_prime": Subset(J, mj), "psi": comps}


def _classified_map(rng: random.Random, I: Poset, J: Poset, tries: int = 30) -> MonotoneMap | None:
    for _ in range(tries):
        try:
            f = random_monotone(rng, I, J)
        except RecipeInfeasible:
            continue
        if all(classify_fiber(I, f.preimage_mask(J.down_mask(j))) != "unclassified" for j in range(len(J))):
            return f
    return None


def _thm3(rng: random.Random) -> dict:
    field = random_field(rng)
    Ip = random_directed_poset(rng, rng.randint(1, 4), "i")
    I = extend_below(rng, Ip, rng.randint(0, 2), "x")
    Jp = random_directed_poset(rng, rng.randint(1, 3), "j")
    J = extend_below(rng, Jp, rng.randint(0, 2), "y")
    mi, mj = I.mask_of(Ip.elements), J.mask_of(Jp.elements)
    Ipi, Jpi = I.induced(Subset(I, mi)), J.induced(Subset(J, mj))
    q = _classified_map(rng, Ipi, Jpi)
    if q is None:
        q = MonotoneMap.constant(Ipi, Jpi, Jpi.elements[-1])
    T = random_sheaf(rng, I, field, 3)
    B = pushforward(q, restrict(T, Subset(I, mi)))
    A, comps = _extension(rng, J, mj, B, field)
    return {"q": q, "A": A, "T": T, "J_prime": Subset(J, mj), "I_prime": Subset(I, mi), "phi": comps}


def _pullback(rng: random.Random) -> dict:
    field = random_field(rng)
    I = extend_below(rng, random_directed_poset(rng, rng.randint(1, 4), "i"), rng.randint(0, 2), "x")
    J = extend_below(rng, random_directed_poset(rng, rng.randint(1, 4), "j"), rng.randint(0, 2), "y")
    ti = maximum_of_mask(I, (1 << len(I)) - 1)
    tj = maximum_of_mask(J, (1 << len(J)) - 1)
    f = random_monotone(rng, I, J, {ti: tj})
    return {"f": f, "F": random_sheaf(rng, J, field, 3)}


def _fibers_acyclic(f: MonotoneMap, F: Sheaf) -> bool:
    return all(not any(v["higher_cohomology"]) for v in _fiber_report(f, F, "oracle").values())


def _pushforward(rng: random.Random) -> dict:
    field = random_field(rng)
    I = random_poset(rng, rng.randint(1, 6), None, "i")
    J = random_poset(rng, rng.randint(1, 4), None, "j")
    F = random_sheaf(rng, I, field, 2)
    f = None
    if rng.random() < 0.5:
        for _ in range(30):
            try:
                cand = random_monotone(rng, I, J)
            except RecipeInfeasible:
                continue
            if _fibers_acyclic(cand, F):
                f = cand
                break
    if f is None:
        f = _classified_map(rng, I, J)
    if f is None:
        f = MonotoneMap.identity(I)
    return {"f": f, "F": F}


def _countable(rng: random.Random) -> dict:
    field = random_field(rng)
    I = extend_below(rng, random_directed_poset(rng, rng.randint(1, 5), "i"), rng.randint(0, 2), "x")
    top = maximum_of_mask(I, (1 << len(I)) - 1)
    members = [top]
    while rng.random() < 0.6:
        below = list(_bits(I.down_mask(members[-1]) & ~(1 << members[-1])))
        if not below:
            break
        members.append(rng.choice(below))
    N = I.induced(Subset(I, sum(1 << a for a in members)))
    J = random_poset(rng, rng.randint(1, 4), None, "j")
    f = random_monotone(rng, N, J)
    return {"f": f, "F": random_sheaf(rng, I, field, 3), "I": I}


def _les(rng: random.Random) -> dict:
    field = random_field(rng)
    P = random_poset(rng, rng.randint(1, 6), None, "e")
    if rng.random() < 0.2:
        F = random_sheaf(rng, P, field, 2)
        G, m = godement_sheaf(F)
        Q, q = cokernel_sheaf(m)
        return {"g": m, "h": q}
    B = random_sheaf(rng, P, field, 3)
    g, h = random_subsheaf_ses(rng, B, rng.randint(1, 3))
    return {"g": g, "h": h}


def random_galois_map(rng: random.Random, tries: int = 40) -> MonotoneMap:
    """A random monotone map that has a right adjoint (identity as a fallback)."""
    I = random_poset(rng, rng.randint(1, 6), None, "i")
    for _ in range(tries):
        J = random_poset(rng, rng.randint(1, 5), None, "j")
        try:
            f = random_monotone(rng, I, J)
        except RecipeInfeasible:
            continue
        if galois_right_adjoint(f) is not None:
            return f
    return MonotoneMap.identity(I)


def _galois(rng: random.Random) -> dict:
    field = random_field(rng)
    f = random_galois_map(rng)
    sheaves = [random_sheaf(rng, f.source, field, 2) for _ in range(5)]
    targets = [random_sheaf(rng, f.target, field, 2) for _ in range(5)]
    return {"f": f, "sheaves": sheaves, "targets": targets}


def _negative_pushforward(rng: random.Random) -> dict:
    for _ in range(30):
        field = random_field(rng)
        I = random_poset(rng, rng.randint(4, 6), 0.5, "i")
        J = random_poset(rng, rng.randint(1, 3), None, "j")
        F = random_sheaf(rng, I, field, 2) if rng.random() < 0.5 else constant_sheaf(I, field, 1)
        try:
            f = random_monotone(rng, I, J)
        except RecipeInfeasible:
            continue
        if not _fibers_acyclic(f, F):
            return {"f": f, "F": F}
    P = circ4()
    return {"f": MonotoneMap.constant(P, Poset.point(), "*"), "F": constant_sheaf(P, random_field(rng), 1)}


RECIPES: dict[str, tuple[Callable[[random.Random], dict], Callable[..., VerificationCase]]] = {
    "thm2": (_thm2, verify_thm2),
    "thm3": (_thm3, verify_thm3),
    "pullback": (_pullback, verify_pullback_theorem),
    "pushforward": (_pushforward, verify_pushforward_prop),
    "countable": (_countable, verify_countable_chain_cor),
    "les": (_les, verify_les),
    "galois": (_galois, verify_galois),
    "negative-pushforward": (_negative_pushforward, verify_pushforward_prop),
}


def _sizes(inputs: Mapping) -> dict:
    out = {}
    for k, v in inputs.items():
        if isinstance(v, Sheaf):
            out[k] = {"elements": len(v.base), "dims": list(v.dims), "field": str(v.field)}
            check_size(len(v.base))
    return out


def random_instance(seed: int, recipe: str = "thm2") -> Instance:
    """Inputs for ``recipe`` drawn deterministically from ``seed``.

    Raises:
        ValueError: unknown recipe.
        RecipeInfeasible: the generator could not build an instance.
    """
    if recipe not in RECIPES:
        raise ValueError(f"unknown recipe {recipe!r}; choose from {sorted(RECIPES)}")
    build, run = RECIPES[recipe]
    rng = random.Random(f"{recipe}:{seed}")
    inputs = build(rng)
    return Instance(recipe, seed, run, inputs, {"recipe": recipe, "sizes": _sizes(inputs)})


def run_recipe(recipe: str, seed: int) -> VerificationCase:
    return random_instance(seed, recipe)()


# named fixture cases

def _fx_pullback_max() -> VerificationCase:
    P = chain(3)
    return verify_pullback_theorem(MonotoneMap.inclusion(P, ["2"]), constant_sheaf(P, Field.rational(), 1))


def _fx_pullback_not_cofinal() -> VerificationCase:
    P = chain(2)
    return verify_pullback_theorem(MonotoneMap.inclusion(P, ["0"]), skyscraper(P, "1", GF(2), 1))


def _fx_thm2_vee() -> VerificationCase:
    I, J = vee(), Poset.point()
    A = constant_sheaf(I, QQ, 1)
    S = constant_sheaf(J, QQ, 1)
    Ip = I.induced(["m"])
    p = MonotoneMap.constant(Ip, J, "*")
    return verify_thm2(p, A, S, ["m"], ["*"], [[[1]]])


def _fx_thm3_chain() -> VerificationCase:
    I, J = chain(3), chain(2)
    q = MonotoneMap(I, J, (0, 0, 1))
    T = constant_sheaf(I, GF(3), 1)
    A = pushforward(q, T)
    return verify_thm3(q, A, T, J.elements, I.elements, SheafMorphism.identity(A))


def _fx_pushforward_wedge() -> VerificationCase:
    P = wedge()
    f = MonotoneMap(P, chain(2), (0, 1, 1))
    return verify_pushforward_prop(f, constant_sheaf(P, GF(2), 1))


def _fx_pushforward_circ4() -> VerificationCase:
    P = circ4()
    return verify_pushforward_prop(MonotoneMap.constant(P, Poset.point(), "*"), constant_sheaf(P, GF(2), 1))


def _fx_countable_vee() -> VerificationCase:
    I = vee()
    N = I.induced(["m"])
    f = MonotoneMap(N, chain(2), (1,))
    return verify_countable_chain_cor(f, constant_sheaf(I, QQ, 1), I)


FIXTURE_CASES: dict[str, Callable[[], VerificationCase]] = {
    "pullback-max-chain3": _fx_pullback_max,
    "pullback-not-cofinal": _fx_pullback_not_cofinal,
    "thm2-vee-point": _fx_thm2_vee,
    "thm3-chain3-chain2": _fx_thm3_chain,
    "pushforward-wedge": _fx_pushforward_wedge,
    "pushforward-circ4-point": _fx_pushforward_circ4,
    "countable-vee": _fx_countable_vee,
}


def run_fixture(name: str) -> VerificationCase:
    if name not in FIXTURE_CASES:
        raise ValueError(f"unknown fixture case {name!r}; choose from {sorted(FIXTURE_CASES)}")
    case = FIXTURE_CASES[name]()
    case.construction = {"fixture": name, **case.construction}
    return case
