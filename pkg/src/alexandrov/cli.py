"""Command line interface: ``alexandrov <verb> ...``.

Poset files hold ``elements:`` and ``rel: a <= b`` lines.  Sheaf files
start with ``sheaf over <poset-file> field <q|fp:P>`` followed by
``dim <id> <n>`` and ``map <i> -> <j> : <matrix>`` lines, one per
covering pair.  Map files hold ``map: <src> -> <tgt>`` lines and name
their posets with ``source:`` and ``target:`` headers.  Relative paths in
headers resolve against the directory of the file that mentions them.

Reports go to stdout as compact JSON.  Errors print
``{"error": {"type": ..., "message": ...}}`` and exit with status 2;
``verify`` exits with status 1 when a case with true hypotheses fails.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .cohomology import cohomology, godement_resolution, ml_check, oracle_complex
from .errors import AlexandrovError, ParseError, RecipeInfeasible, ShapeMismatch
from .exactla import Field, Matrix
from .functors import pullback, pushforward, restrict, skyscraper
from .poset import MonotoneMap, Poset, check_monotone, galois_right_adjoint, is_directed, validate_poset
from .sheafsys import Sheaf, sections, validate_sheaf
from .verify import FIXTURE_CASES, RECIPES, VerificationCase, run_fixture, run_recipe


def _content_lines(text: str):
    """``(line_no, column, stripped_line)`` for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        body = line.lstrip()
        if body:
            yield no, len(line) - len(body) + 1, body


def _resolve(ref: str, base_dir: Path | None) -> Path:
    p = Path(ref)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return p


# posets

def parse_poset_file(text: str) -> Poset:
    """Parse ``elements:`` and ``rel: a <= b`` lines.

    Raises:
        ParseError: malformed line or a relation naming an undeclared element.
        DuplicateElement, CycleError: passed through from validation.
    """
    elements: list[str] = []
    rel: list[tuple[str, str]] = []
    spots: list[tuple[int, int]] = []
    for no, col, line in _content_lines(text):
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "rel"):
            raise ParseError("expected 'elements:' or 'rel:'", no, col)
        if key == "elements":
            elements += rest.split()
            continue
        parts = [p.strip() for p in rest.split("<=")]
        if len(parts) < 2 or any(not p or len(p.split()) != 1 for p in parts):
            raise ParseError("expected 'rel: <id> <= <id>'", no, col + len(key) + 1)
        for a, b in zip(parts, parts[1:]):
            rel.append((a, b))
            spots.append((no, col))
    declared = set(elements)
    for (a, b), (no, col) in zip(rel, spots):
        for x in (a, b):
            if x not in declared:
                raise ParseError(f"relation mentions undeclared element {x!r}", no, col)
    return validate_poset(rel, elements)


def emit_poset(P: Poset) -> str:
    lines = ["elements: " + " ".join(P.elements)]
    el = P.elements
    lines += [f"rel: {el[lo]} <= {el[hi]}" for hi, lo in P.covers]
    return "\n".join(lines) + "\n"


def read_poset(path: str | Path) -> Poset:
    return parse_poset_file(Path(path).read_text(encoding="utf-8"))


# sheaves

_HEADER = re.compile(r"^sheaf\s+over\s+(\S(?:.*\S)?)\s+field\s+(\S+)$")
_MAP = re.compile(r"^map\s+(\S+)\s*->\s*(\S+)\s*:(.*)$")


@dataclass
class SheafHeader:
    poset_ref: str
    field: Field


def parse_sheaf_header(text: str) -> SheafHeader:
    for no, col, line in _content_lines(text):
        m = _HEADER.match(line)
        if not m:
            raise ParseError("expected 'sheaf over <poset-file> field <q|fp:P>'", no, col)
        try:
            return SheafHeader(m.group(1), Field.parse(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc), no, col + m.start(2)) from None
    raise ParseError("empty sheaf file")


def parse_sheaf_file(text: str, P: Poset, field: Field | None = None) -> Sheaf:
    """Parse a sheaf file against an already parsed base poset.

    ``field`` overrides the one named in the header.

    Raises:
        ParseError: malformed line, unknown element, duplicate entry, or a
            missing dimension or cover map (the message names it).
        ShapeMismatch: a matrix literal has the wrong shape (with location).
        PathInconsistency: cover maps compose inconsistently.
    """
    header = parse_sheaf_header(text)
    field = field or header.field
    dims: dict[str, int] = {}
    maps: dict[tuple[str, str], tuple[str, int, int]] = {}
    first = True
    for no, col, line in _content_lines(text):
        if first:
            first = False
            continue
        if line.startswith("dim ") or line.startswith("dim\t"):
            parts = line.split()
            if len(parts) != 3 or not parts[2].isdigit():
                raise ParseError("expected 'dim <id> <n>'", no, col)
            if parts[1] not in P:
                raise ParseError(f"unknown element {parts[1]!r}", no, col + 4)
            if parts[1] in dims:
                raise ParseError(f"dimension of {parts[1]!r} given twice", no, col)
            dims[parts[1]] = int(parts[2])
            continue
        m = _MAP.match(line)
        if not m:
            raise ParseError("expected 'dim <id> <n>' or 'map <i> -> <j> : <matrix>'", no, col)
        i, j = m.group(1), m.group(2)
        for x, pos in ((i, m.start(1)), (j, m.start(2))):
            if x not in P:
                raise ParseError(f"unknown element {x!r}", no, col + pos)
        if (i, j) in maps:
            raise ParseError(f"map {i} -> {j} given twice", no, col)
        maps[i, j] = (m.group(3), no, col + m.start(3))
    for e in P.elements:
        if e not in dims:
            raise ParseError(f"no 'dim' line for element {e!r}")
    el = P.elements
    cover_pairs = {(el[hi], el[lo]) for hi, lo in P.covers}
    for i, j in maps:
        if (i, j) not in cover_pairs:
            no, col = maps[i, j][1:]
            raise ParseError(f"{i} -> {j} is not a covering pair", no, col)
    rho = {}
    for hi, lo in P.covers:
        pair = (el[hi], el[lo])
        if pair not in maps:
            raise ParseError(f"missing map line for covering pair {pair[0]} -> {pair[1]}")
        literal, no, col = maps[pair]
        rows, cols = dims[pair[1]], dims[pair[0]]
        try:
            rho[pair] = Matrix.parse(literal, field, rows, cols)
        except ShapeMismatch as exc:
            raise ShapeMismatch(f"line {no}, column {col}: map {pair[0]} -> {pair[1]}: {exc}") from None
    return validate_sheaf(P, field, dims, rho)


def emit_sheaf(F: Sheaf, poset_ref: str) -> str:
    """Sheaf file text; parsing it back gives an equal sheaf."""
    el = F.base.elements
    lines = [f"sheaf over {poset_ref} field {F.field}"]
    lines += [f"dim {e} {d}" for e, d in zip(el, F.dims)]
    for hi, lo in F.base.covers:
        lit = F.r(hi, lo).to_literal()
        lines.append(f"map {el[hi]} -> {el[lo]} :" + (f" {lit}" if lit else ""))
    return "\n".join(lines) + "\n"


# maps

@dataclass
class MapFile:
    pairs: dict[str, str]
    source_ref: str | None = None
    target_ref: str | None = None
    lines: dict[str, int] = dc_field(default_factory=dict)
    source_path: str | None = None
    target_path: str | None = None


def parse_map_file(text: str) -> MapFile:
    out = MapFile({})
    for no, col, line in _content_lines(text):
        key, sep, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if sep and key in ("source", "target"):
            if not rest:
                raise ParseError(f"empty '{key}:' header", no, col)
            setattr(out, f"{key}_ref", rest)
            continue
        if not sep or key != "map":
            raise ParseError("expected 'map: <src> -> <tgt>'", no, col)
        parts = [p.strip() for p in rest.split("->")]
        if len(parts) != 2 or not all(parts) or any(len(p.split()) != 1 for p in parts):
            raise ParseError("expected 'map: <src> -> <tgt>'", no, col)
        if parts[0] in out.pairs:
            raise ParseError(f"{parts[0]!r} mapped twice", no, col)
        out.pairs[parts[0]] = parts[1]
        out.lines[parts[0]] = no
    return out


def build_map(mf: MapFile, I: Poset, J: Poset) -> MonotoneMap:
    missing = [e for e in I.elements if e not in mf.pairs]
    if missing:
        raise ParseError(f"no image given for {missing}")
    for a, b in mf.pairs.items():
        if a not in I:
            raise ParseError(f"unknown source element {a!r}", mf.lines[a])
        if b not in J:
            raise ParseError(f"unknown target element {b!r}", mf.lines[a])
    return check_monotone(mf.pairs, I, J)


# loading helpers

@dataclass
class Loaded:
    sheaf: Sheaf
    poset_ref: str
    poset_path: Path


def _field(args) -> Field | None:
    spec = getattr(args, "field", None)
    return Field.parse(spec) if spec else None


def load_sheaf(args, poset_path: str | None, sheaf_path: str) -> Loaded:
    text = Path(sheaf_path).read_text(encoding="utf-8")
    header = parse_sheaf_header(text)
    ref = poset_path or header.poset_ref
    path = Path(poset_path) if poset_path else _resolve(header.poset_ref, Path(sheaf_path).parent)
    P = read_poset(path)
    return Loaded(parse_sheaf_file(text, P, _field(args)), ref, path)


def load_map(args) -> tuple[MonotoneMap, MapFile]:
    path = Path(args.map)
    mf = parse_map_file(path.read_text(encoding="utf-8"))
    src = getattr(args, "source", None) or (mf.source_ref and str(_resolve(mf.source_ref, path.parent)))
    tgt = getattr(args, "target", None) or (mf.target_ref and str(_resolve(mf.target_ref, path.parent)))
    if not src or not tgt:
        raise ParseError("map file needs 'source:' and 'target:' headers (or --source/--target)")
    mf.source_path, mf.target_path = src, tgt
    mf.source_ref = getattr(args, "source", None) or mf.source_ref
    mf.target_ref = getattr(args, "target", None) or mf.target_ref
    return build_map(mf, read_poset(src), read_poset(tgt)), mf


def _two_files(args) -> tuple[str | None, str]:
    """``[poset] sheaf`` positional arguments."""
    files = args.files
    if len(files) == 1:
        return None, files[0]
    if len(files) == 2:
        return files[0], files[1]
    raise ParseError("expected '[poset-file] sheaf-file'")


# output

def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _ref(poset_path: str | Path, fallback: str, out: str | Path | None) -> str:
    """Header reference for an emitted sheaf file so that it resolves from ``out``."""
    if out is None:
        return fallback
    return os.path.relpath(Path(poset_path).resolve(), Path(out).resolve().parent)


def _write(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# verbs

def cmd_validate(args) -> int:
    P = read_poset(args.poset)
    report = {
        "elements": len(P),
        "covers": len(P.covers),
        "chain_length": P.chain_length,
        "directed": is_directed(P),
    }
    if args.sheaf:
        F = parse_sheaf_file(Path(args.sheaf).read_text(encoding="utf-8"), P, _field(args))
        report["field"] = str(F.field)
        report["dims"] = dict(zip(P.elements, F.dims))
    print(_dumps({"valid": True, **report}))
    return 0


def cmd_sections(args) -> int:
    poset, sheaf = _two_files(args)
    F = load_sheaf(args, poset, sheaf).sheaf
    U = F.base.elements if args.open is None else args.open
    space = sections(F, U)
    print(_dumps({
        "open": sorted(space.open.ids, key=F.base.index),
        "dim": space.dim,
        "inclusion": space.inclusion.to_json(),
    }))
    return 0


def cmd_cohomology(args) -> int:
    poset, sheaf = _two_files(args)
    F = load_sheaf(args, poset, sheaf).sheaf
    method = args.method
    if args.fast and method == "both":
        method = "godement"
    print(_dumps(cohomology(F, method, args.max_degree).to_json()))
    return 0


def cmd_godement(args) -> int:
    poset, sheaf = _two_files(args)
    loaded = load_sheaf(args, poset, sheaf)
    F = loaded.sheaf
    N = F.base.chain_length if args.degree is None else args.degree
    res = godement_resolution(F, N)
    dims = [list(G.dims) for G in res.terms]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ref = _ref(loaded.poset_path, loaded.poset_ref, out / "G0.sheaf")
        paths = []
        for n, G in enumerate(res.terms):
            p = out / f"G{n}.sheaf"
            p.write_text(emit_sheaf(G, ref), encoding="utf-8")
            paths.append(str(p))
        print(_dumps({"terms": paths, "dims": dims}))
    else:
        print(_dumps({"terms": [emit_sheaf(G, loaded.poset_ref) for G in res.terms], "dims": dims}))
    return 0


def cmd_roos(args) -> int:
    poset, sheaf = _two_files(args)
    F = load_sheaf(args, poset, sheaf).sheaf
    C = oracle_complex(F)
    P = F.base
    print(_dumps({
        "field": str(F.field),
        "chains": [[[P.elements[a] for a in c] for c in P.strict_chains(n)] for n in range(len(C.dims))],
        "dims": list(C.dims),
        "differentials": [m.to_json() for m in C.d],
        "cohomology": C.cohomology_dims(),
    }))
    return 0


def cmd_pullback(args) -> int:
    f, mf = load_map(args)
    loaded = load_sheaf(args, args.poset, args.sheaf)
    _write(args, emit_sheaf(pullback(f, loaded.sheaf), _ref(mf.source_path, mf.source_ref, args.output)))
    return 0


def cmd_pushforward(args) -> int:
    f, mf = load_map(args)
    loaded = load_sheaf(args, args.poset, args.sheaf)
    _write(args, emit_sheaf(pushforward(f, loaded.sheaf), _ref(mf.target_path, mf.target_ref, args.output)))
    return 0


def cmd_restrict(args) -> int:
    poset, sheaf = _two_files(args)
    loaded = load_sheaf(args, poset, sheaf)
    G = restrict(loaded.sheaf, args.to)
    ref = "restricted.poset"
    if args.poset_out:
        Path(args.poset_out).write_text(emit_poset(G.base), encoding="utf-8")
        ref = _ref(args.poset_out, args.poset_out, args.output)
    _write(args, emit_sheaf(G, ref))
    return 0


def cmd_skyscraper(args) -> int:
    P = read_poset(args.poset)
    field = _field(args) or Field.rational()
    ref = _ref(args.poset, args.poset, args.output)
    _write(args, emit_sheaf(skyscraper(P, args.element, field, args.dim), ref))
    return 0


def cmd_galois(args) -> int:
    f, _ = load_map(args)
    g = galois_right_adjoint(f)
    print(_dumps({"map": f.mapping, "adjoint": None if g is None else g.mapping}))
    return 0


def cmd_ml_check(args) -> int:
    poset, sheaf = _two_files(args)
    F = load_sheaf(args, poset, sheaf).sheaf
    print(_dumps(ml_check(F).to_json()))
    return 0


def _case_from_file(path: str, recipe: str | None) -> VerificationCase:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    construction = data.get("construction", {})
    fixture = data.get("fixture") or construction.get("fixture")
    if fixture:
        return run_fixture(fixture)
    seed = data.get("seed")
    name = data.get("recipe") or construction.get("recipe") or recipe
    if seed is None or name is None:
        raise ParseError("case file needs 'fixture', or 'seed' and 'recipe'")
    return run_recipe(name, int(seed))


def cmd_verify(args) -> int:
    if args.recipe not in RECIPES and args.recipe != "fixture":
        raise ValueError(f"unknown recipe {args.recipe!r}; choose from {sorted(RECIPES) + ['fixture']}")
    failures = 0
    if args.case:
        cases = [_case_from_file(args.case, args.recipe)]
    elif args.recipe == "fixture":
        cases = [run_fixture(name) for name in FIXTURE_CASES]
    else:
        cases = []
        for seed in range(args.seed, args.seed + args.count):
            try:
                cases.append(run_recipe(args.recipe, seed))
            except RecipeInfeasible as exc:
                print(_dumps({"recipe": args.recipe, "seed": seed, "skipped": str(exc)}))
    for case in cases:
        print(case.dumps())
        failures += not case.sound
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alexandrov", description="Sheaves on finite posets and derived limits.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--field", help="override the coefficient field: q or fp:P")
        return p

    p = verb("validate", cmd_validate, "check a poset file and optionally a sheaf file")
    p.add_argument("poset")
    p.add_argument("sheaf", nargs="?")

    p = verb("sections", cmd_sections, "sections over an open subset (default: everything)")
    p.add_argument("files", nargs="+", metavar="[poset] sheaf")
    p.add_argument("--open", nargs="*", metavar="ID")

    p = verb("cohomology", cmd_cohomology, "dimensions of H^n")
    p.add_argument("files", nargs="+", metavar="[poset] sheaf")
    p.add_argument("--method", choices=("godement", "oracle", "both"), default="both")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--fast", action="store_true", help="skip the oracle cross-check")

    p = verb("godement", cmd_godement, "emit the Godement resolution as sheaf files")
    p.add_argument("files", nargs="+", metavar="[poset] sheaf")
    p.add_argument("--degree", type=int, help="last term (default: chain length)")
    p.add_argument("--out", help="directory for G<n>.sheaf files")

    p = verb("roos", cmd_roos, "emit the strict-chain cochain complex")
    p.add_argument("files", nargs="+", metavar="[poset] sheaf")

    for name, func in (("pullback", cmd_pullback), ("pushforward", cmd_pushforward)):
        p = verb(name, func, f"{name} of a sheaf along a map file")
        p.add_argument("map")
        p.add_argument("sheaf")
        p.add_argument("--poset", help="poset of the input sheaf (default: from its header)")
        p.add_argument("--source")
        p.add_argument("--target")
        p.add_argument("-o", "--output")

    p = verb("restrict", cmd_restrict, "restrict a sheaf to a subset with the induced order")
    p.add_argument("files", nargs="+", metavar="[poset] sheaf")
    p.add_argument("--to", nargs="+", required=True, metavar="ID")
    p.add_argument("--poset-out", help="write the induced poset here and reference it")
    p.add_argument("-o", "--output")

    p = verb("skyscraper", cmd_skyscraper, "skyscraper sheaf at an element")
    p.add_argument("poset")
    p.add_argument("element")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("-o", "--output")

    p = verb("galois", cmd_galois, "right adjoint of a monotone map, if any")
    p.add_argument("map")
    p.add_argument("--source")
    p.add_argument("--target")

    p = verb("ml-check", cmd_ml_check, "Mittag-Leffler stabilization on a chain")
    p.add_argument("files", nargs="+", metavar="[poset] sheaf")

    p = sub.add_parser("verify", help="replay seeded verification cases")
    p.set_defaults(func=cmd_verify)
    p.add_argument("recipe", help=f"one of {', '.join(sorted(RECIPES))}, or 'fixture'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--case", help="JSON file with 'fixture' or 'seed' (a previous report works)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AlexandrovError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(_dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
