import json
import random

import pytest

from alexandrov.cli import emit_poset, emit_sheaf, main, parse_map_file, parse_poset_file, parse_sheaf_file
from alexandrov.errors import CycleError, DuplicateElement, ParseError, ShapeMismatch
from alexandrov.exactla import GF, QQ
from alexandrov.fixtures import POSETS, chain, circ4
from alexandrov.generators import FIELDS, random_poset, random_sheaf
from alexandrov.sheafsys import constant_sheaf

CIRC4 = """\
# the four-point circle
elements: a b c d
rel: a <= c   # two minima, two maxima
rel: b <= c
rel: a <= d
rel: b <= d
"""

CONST = """\
sheaf over circ4.poset field q
dim a 1
dim b 1
dim c 1
dim d 1
map c -> a : 1
map c -> b : 1
map d -> a : 1
map d -> b : 1
"""


@pytest.fixture
def files(tmp_path):
    (tmp_path / "circ4.poset").write_text(CIRC4)
    (tmp_path / "const.sheaf").write_text(CONST)
    (tmp_path / "chain3.poset").write_text("elements: 0 1 2\nrel: 0 <= 1 <= 2\n")
    (tmp_path / "chain2.poset").write_text("elements: 0 1\nrel: 0 <= 1\n")
    (tmp_path / "pt.poset").write_text("elements: *\n")
    (tmp_path / "collapse.map").write_text(
        "source: chain3.poset\ntarget: chain2.poset\nmap: 0 -> 0\nmap: 1 -> 0\nmap: 2 -> 1\n")
    (tmp_path / "squash.map").write_text(
        "source: circ4.poset\ntarget: pt.poset\n" + "".join(f"map: {e} -> *\n" for e in "abcd"))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_parse_poset_examples():
    P = parse_poset_file("elements: a b\nrel: a <= b")
    assert P.covers == ((1, 0),) and P.leq("a", "b")
    assert P.chain_length == 1 and P.elements == ("a", "b")
    with pytest.raises(DuplicateElement):
        parse_poset_file("elements: a a")
    assert parse_poset_file(CIRC4) == circ4()
    with pytest.raises(CycleError):
        parse_poset_file("elements: a b\nrel: a <= b\nrel: b <= a")
    with pytest.raises(ParseError) as err:
        parse_poset_file("elements: a\nrel: a <= z")
    assert err.value.line == 2


def test_parse_sheaf_examples():
    P = parse_poset_file("elements: 0 1\nrel: 0 <= 1")
    F = parse_sheaf_file("sheaf over c.poset field q\ndim 0 1\ndim 1 1\nmap 1 -> 0 : 1\n", P)
    assert F == constant_sheaf(chain(2), QQ, 1)
    with pytest.raises(ParseError, match="1 -> 0"):
        parse_sheaf_file("sheaf over c.poset field q\ndim 0 1\ndim 1 1\n", P)
    with pytest.raises(ShapeMismatch, match="line 4"):
        parse_sheaf_file("sheaf over c.poset field q\ndim 0 1\ndim 1 2\nmap 1 -> 0 : 1 0; 0 1\n", P)
    with pytest.raises(ParseError):
        parse_sheaf_file("sheaf over c.poset field fp:4\ndim 0 1\ndim 1 1\nmap 1 -> 0 : 1\n", P)
    G = parse_sheaf_file("sheaf over c.poset field q\ndim 0 0\ndim 1 2\nmap 1 -> 0 :\n", P)
    assert G.dims == (0, 2)
    assert parse_sheaf_file(CONST, circ4(), GF(3)).field == GF(3)


def test_parse_map_file():
    mf = parse_map_file("source: a.poset\ntarget: b.poset\nmap: x -> y\n")
    assert mf.pairs == {"x": "y"} and mf.source_ref == "a.poset"
    with pytest.raises(ParseError):
        parse_map_file("map: x -> y\nmap: x -> z\n")


def test_emit_parse_round_trip():
    rng = random.Random(11)
    for _ in range(60):
        P = random_poset(rng, rng.randint(1, 6))
        F = random_sheaf(rng, P, rng.choice(FIELDS))
        Q = parse_poset_file(emit_poset(P))
        assert Q == P
        assert parse_sheaf_file(emit_sheaf(F, "p.poset"), Q) == F
    for make in POSETS.values():
        assert parse_poset_file(emit_poset(make())) == make()


def test_cohomology_verb(files, capsys):
    code, out = run(capsys, "cohomology", files / "circ4.poset", files / "const.sheaf", "--field", "fp:2")
    assert code == 0
    assert out.startswith('{"degrees":{"0":1,"1":1},')
    assert json.loads(out)["method"] == "both"
    code, out = run(capsys, "cohomology", files / "const.sheaf", "--fast", "--max-degree", "3")
    assert json.loads(out) == {"degrees": {"0": 1, "1": 1, "2": 0, "3": 0}, "method": "godement",
                               "base_chain_length": 1}
    _, again = run(capsys, "cohomology", files / "const.sheaf", "--fast", "--max-degree", "3")
    assert again == out


def test_verify_verb(capsys):
    code, out = run(capsys, "verify", "pushforward", "--seed", "7", "--count", "100")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 100
    assert all(json.loads(x)["construction"]["recipe"] == "pushforward" for x in lines)
    code, out = run(capsys, "verify", "fixture")
    assert code == 0 and len(out.splitlines()) == 7


def test_verify_case_file(tmp_path, capsys):
    _, out = run(capsys, "verify", "thm3", "--seed", "5")
    (tmp_path / "case.json").write_text(out)
    code, again = run(capsys, "verify", "thm3", "--case", tmp_path / "case.json")
    assert code == 0 and again == out


def test_galois_verb(files, capsys):
    code, out = run(capsys, "galois", files / "collapse.map")
    assert code == 0
    assert json.loads(out) == {"map": {"0": "0", "1": "0", "2": "1"}, "adjoint": {"0": "1", "1": "2"}}
    _, out = run(capsys, "galois", files / "squash.map")
    assert json.loads(out)["adjoint"] is None


def test_pushforward_and_pullback_verbs(files, capsys):
    code, out = run(capsys, "pushforward", files / "squash.map", files / "const.sheaf")
    assert code == 0
    assert out.splitlines()[:2] == ["sheaf over pt.poset field q", "dim * 1"]
    (files / "pt.sheaf").write_text(out)
    code, out = run(capsys, "pullback", files / "squash.map", files / "pt.sheaf")
    assert code == 0 and out == CONST
    (files / "sub").mkdir()
    run(capsys, "pushforward", files / "squash.map", files / "const.sheaf", "-o", files / "sub" / "pt.sheaf")
    assert (files / "sub" / "pt.sheaf").read_text().startswith("sheaf over ../pt.poset")
    code, out = run(capsys, "cohomology", files / "sub" / "pt.sheaf")
    assert code == 0 and json.loads(out)["degrees"] == {"0": 1}


def test_godement_roos_sections_ml(files, capsys):
    code, out = run(capsys, "godement", files / "const.sheaf", "--out", files / "res")
    data = json.loads(out)
    assert code == 0 and data["dims"] == [[1, 1, 3, 3], [0, 0, 2, 2]]
    code, out = run(capsys, "cohomology", files / "res" / "G0.sheaf")
    assert json.loads(out)["degrees"] == {"0": 4, "1": 0}
    _, out = run(capsys, "roos", files / "const.sheaf")
    data = json.loads(out)
    assert data["dims"] == [4, 4] and data["cohomology"] == [1, 1]
    _, out = run(capsys, "sections", files / "const.sheaf", "--open", "a", "b", "c")
    assert json.loads(out)["dim"] == 1
    (files / "c3.sheaf").write_text(emit_sheaf(constant_sheaf(chain(3), QQ, 2), "chain3.poset"))
    _, out = run(capsys, "ml-check", files / "c3.sheaf")
    assert json.loads(out)["stabilization_index"] == {"0": "0", "1": "1", "2": "2"}


def test_restrict_skyscraper_validate(files, capsys):
    code, out = run(capsys, "restrict", files / "const.sheaf", "--to", "a", "c", "d",
                    "--poset-out", files / "acd.poset", "-o", files / "acd.sheaf")
    assert code == 0 and out == ""
    _, out = run(capsys, "validate", files / "acd.poset", files / "acd.sheaf")
    data = json.loads(out)
    assert data["valid"] and data["dims"] == {"a": 1, "c": 1, "d": 1} and data["directed"] is False
    _, out = run(capsys, "skyscraper", files / "circ4.poset", "a", "--dim", "2", "--field", "fp:5")
    assert out.splitlines()[0].endswith("field fp:5")
    assert "dim b 0" in out.splitlines()


def test_errors_are_json(files, capsys):
    (files / "bad.sheaf").write_text(CONST.replace("map d -> b : 1\n", ""))
    code, out = run(capsys, "cohomology", files / "bad.sheaf")
    err = json.loads(out)["error"]
    assert code == 2 and err["type"] == "ParseError" and "d -> b" in err["message"]
    code, out = run(capsys, "cohomology", files / "nowhere.sheaf")
    assert code == 2 and json.loads(out)["error"]["type"] == "FileNotFoundError"
    code, out = run(capsys, "verify", "nope")
    assert code == 2
    (files / "cyc.poset").write_text("elements: a b\nrel: a <= b\nrel: b <= a\n")
    code, out = run(capsys, "validate", files / "cyc.poset")
    assert code == 2 and json.loads(out)["error"]["type"] == "CycleError"
