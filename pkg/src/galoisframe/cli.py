"""Command-line front end.

Exit status: 0 when every check passes, 2 when a check fails, 1 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import corpus
from .formats import ParseError, format_frame, parse_frame, parse_lattice, read, sniff
from .frame import (ImplicativeFrame, check_distributivity, check_frame_axioms, check_heyting_frame,
                    check_residuation, derive_relations, full_complex_algebra, implication_facts)
from .lattice import (FiniteLattice, LatticeError, check_An, check_distributive, check_heyting,
                      check_implicative, check_lattice_laws)
from .polarity import DEFAULT_MAX_FAMILY, FamilyTooLarge, members
from .report import Check, Report, VerificationFailure
from .representation import (CanonicalFrame, PreconditionError, canonical_frame, rep_X,
                             verify_basis, verify_heyting_canonical, verify_implicative_rep,
                             verify_lattice_rep, verify_upper_bound)
from .semantics import (FormulaSyntaxError, Model, UnboundAtom, atoms, check_clause_equivalences,
                        interpret, parse_formula, to_text, validity)

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Source:
    lattice: FiniteLattice | None = None
    expect: frozenset = frozenset()
    frame: ImplicativeFrame | None = None


def load(spec: str) -> Source:
    """A corpus name or a path to a GLATTICE / GFRAME document."""
    if spec in corpus.CORPUS_NAMES:
        return Source(lattice=corpus.get(spec))
    try:
        text = read(spec)
    except OSError as exc:
        raise UsageError(f"cannot read {spec!r}: {exc.strerror or exc}") from None
    if sniff(text) == "lattice":
        L, expect = parse_lattice(text)
        return Source(lattice=L, expect=frozenset(expect))
    return Source(frame=parse_frame(text))


def _canonical(src: Source, proper_only: bool) -> CanonicalFrame:
    if src.lattice is None:
        raise UsageError("a lattice is required here, got a frame document")
    if src.lattice.arrow is None:
        raise UsageError("the lattice has no arrow table")
    try:
        return canonical_frame(src.lattice, proper_only=proper_only)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None


def _frame(src: Source, proper_only: bool) -> ImplicativeFrame:
    return src.frame if src.frame is not None else _canonical(src, proper_only).frame


def _emit(args, reports: list[Report], extra: dict | None = None, stream=None) -> None:
    stream = stream or sys.stdout
    if args.format == "machine":
        doc = dict(extra or {})
        doc["reports"] = [r.to_dict(args.timings) for r in reports]
        doc["verdict"] = "pass" if all(r.ok for r in reports) else "fail"
        stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        for key, val in (extra or {}).items():
            if isinstance(val, dict):
                val = ", ".join(f"{k}={v}" for k, v in val.items())
            stream.write(f"{key}: {val}\n")
        for r in reports:
            stream.write(r.to_text(args.timings) + "\n")


def _status(reports: list[Report]) -> int:
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# -- subcommands -----------------------------------------------------------

def cmd_check_lattice(args) -> int:
    src = load(args.source)
    L = src.lattice
    if L is None:
        raise UsageError("check-lattice needs a lattice")
    r = Report(f"lattice {args.source}")
    r.extend(check_lattice_laws(L))
    dist = check_distributive(L)
    r.add(dist)
    if L.arrow is None:
        r.skip("implicative", "no arrow table")
    else:
        r.extend(check_implicative(L))
        r.extend(check_heyting(L))
        for n in args.an:
            r.add(check_An(L, n))
    if "distributive" in src.expect:
        r.add(Check("expect_distributive", dist.passed, dist.witness, 1))
    if "heyting" in src.expect:
        ok = L.arrow is not None and check_heyting(L).ok and dist.passed
        r.add(Check("expect_heyting", ok, None, 1))
    _emit(args, [r])
    return _status([r])


def _verify_canonical(CF: CanonicalFrame, max_family: int) -> list[Report]:
    reports = [check_frame_axioms(CF.frame), verify_lattice_rep(CF, max_family),
               verify_implicative_rep(CF), verify_basis(CF, max_family), verify_upper_bound(CF)]
    L = CF.source
    if check_heyting(L).ok and check_distributive(L).passed:
        reports.append(verify_heyting_canonical(CF))
    else:
        h = Report("Heyting canonical frame")
        h.skip("heyting", "source lattice is not Heyting")
        reports.append(h)
    return reports


def cmd_canonical(args) -> int:
    CF = _canonical(load(args.source), args.proper_only)
    text = format_frame(CF.frame)
    reports = _verify_canonical(CF, args.max_family) if args.verify else []
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, reports, {"points": f"{CF.frame.nx}x{CF.frame.ny}"})
    elif args.format == "machine":
        _emit(args, reports, {"frame": text})
    else:
        sys.stdout.write(text)
        if reports:
            _emit(args, reports, stream=sys.stderr)
    return _status(reports)


def cmd_check_frame(args) -> int:
    F = _frame(load(args.source), args.proper_only)
    axioms = check_frame_axioms(F)
    reports = [axioms]
    if axioms.ok:
        d = Report("derived relations")
        try:
            derive_relations(F)
            d.add(Check("derived_relations", True, None, 7))
        except VerificationFailure as exc:
            d.add(Check("derived_relations", False, exc.witness, 7, detail=str(exc)))
        reports += [d, check_residuation(F, args.max_family), implication_facts(F, args.max_family),
                    check_distributivity(F, args.max_family), check_heyting_frame(F)]
    _emit(args, reports, {"points": f"{F.nx}x{F.ny}", "stable_sets": len(F.stable_family(args.max_family))})
    return _status(reports)


def cmd_complex_algebra(args) -> int:
    F = _frame(load(args.source), args.proper_only)
    axioms = check_frame_axioms(F)
    if not axioms.ok:
        _emit(args, [axioms])
        return EXIT_FAIL
    A = full_complex_algebra(F, args.max_family)
    names = [_set_text(F, W, "x") for W in A.family.sets]
    cert = A.certify()
    tables = {"elements": names, "imp": A.imp, "fusion": A.overt, "left_residual": A.la}
    if args.format == "machine":
        _emit(args, [cert], {"algebra": tables})
    else:
        out = [f"elements: {len(names)}"]
        out += [f"  {i}: {nm}" for i, nm in enumerate(names)]
        for key in ("imp", "fusion", "left_residual"):
            out.append(f"{key}:")
            out += ["  " + " ".join(str(v) for v in row) for row in tables[key]]
        sys.stdout.write("\n".join(out) + "\n")
        _emit(args, [cert])
    return _status([cert])


def _set_text(F: ImplicativeFrame, W: int, side: str) -> str:
    names = F.P.xnames if side == "x" else F.P.ynames
    return "{" + ", ".join(names[i] for i in members(W)) + "}"


def _parse_set(F: ImplicativeFrame, CF: CanonicalFrame | None, atom: str, spec: str) -> int:
    spec = spec.strip()
    if spec.startswith("X_"):
        if CF is None:
            raise UsageError(f"{spec!r} needs a lattice source")
        try:
            return rep_X(CF, CF.source.index(spec[2:]))
        except KeyError:
            raise UsageError(f"unknown element in {spec!r}") from None
    if not (spec.startswith("{") and spec.endswith("}")):
        raise UsageError(f"stable set for {atom!r} must be X_<element> or {{points}}")
    names = F.P.xnames
    W = 0
    for tok in filter(None, (t.strip() for t in spec[1:-1].split(","))):
        if tok not in names:
            raise UsageError(f"unknown point {tok!r}")
        W |= 1 << names.index(tok)
    if not F.P.is_stable(W):
        stable = F.P.stabilize(W)
        print(f"warning: {atom} = {spec} is not stable; using {_set_text(F, stable, 'x')}", file=sys.stderr)
        W = stable
    return W


def cmd_model_check(args) -> int:
    src = load(args.source)
    CF = None if src.frame is not None else _canonical(src, args.proper_only)
    F = src.frame if CF is None else CF.frame
    phi = parse_formula(args.formula)
    valuation = {}
    for item in args.let:
        atom, sep, spec = item.partition("=")
        if not sep or not atom.strip():
            raise UsageError(f"--let expects atom=set, got {item!r}")
        valuation[atom.strip()] = _parse_set(F, CF, atom.strip(), spec)
    missing = sorted(atoms(phi) - set(valuation))
    if missing and args.seed is not None:
        rng = random.Random(args.seed)
        fam = F.stable_family(args.max_family).sets
        for a in missing:
            valuation[a] = rng.choice(fam)
    M = Model(F, valuation)
    val, coval = interpret(M, phi)
    report = check_clause_equivalences(M, phi)
    extra = {
        "formula": to_text(phi),
        "valuation": {a: _set_text(F, W, "x") for a, W in sorted(valuation.items())},
        "interpretation": _set_text(F, val, "x"),
        "cointerpretation": _set_text(F, coval, "y"),
        "valid": validity(M, phi),
    }
    _emit(args, [report], extra)
    return _status([report])


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--max-family", type=int, default=DEFAULT_MAX_FAMILY, metavar="N")
    common.add_argument("--seed", type=int, default=None, metavar="N")
    common.add_argument("--timings", action="store_true", help="include per-check elapsed times")
    common.add_argument("--proper-only", action=argparse.BooleanOptionalAction, default=True,
                        help="canonical frames use proper filters and ideals only (default)")

    p = argparse.ArgumentParser(prog="galoisframe", description="Implicative frames and lattices.")
    sub = p.add_subparsers(dest="command", required=True)
    src_help = f"corpus name ({', '.join(corpus.CORPUS_NAMES)}) or a GLATTICE/GFRAME file"

    s = sub.add_parser("check-lattice", parents=[common], help="lattice and implication axioms")
    s.add_argument("source", help=src_help)
    s.add_argument("--an", type=int, nargs="*", default=[1], metavar="N",
                   help="check the A_n conditions for these n (default 1)")
    s.set_defaults(run=cmd_check_lattice)

    s = sub.add_parser("canonical", parents=[common], help="emit the canonical frame of a lattice")
    s.add_argument("source", help=src_help)
    s.add_argument("--verify", action="store_true", help="verify the representation")
    s.add_argument("-o", "--output", help="write the frame here instead of stdout")
    s.set_defaults(run=cmd_canonical)

    s = sub.add_parser("check-frame", parents=[common], help="frame axioms and derived properties")
    s.add_argument("source", help=src_help)
    s.set_defaults(run=cmd_check_frame)

    s = sub.add_parser("complex-algebra", parents=[common], help="full complex algebra of a frame")
    s.add_argument("source", help=src_help)
    s.set_defaults(run=cmd_complex_algebra)

    s = sub.add_parser("model-check", parents=[common], help="evaluate a formula in a frame")
    s.add_argument("source", help=src_help)
    s.add_argument("formula")
    s.add_argument("--let", action="append", default=[], metavar="ATOM=SET",
                   help="bind an atom to X_<element> or {point, ...}")
    s.set_defaults(run=cmd_model_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except FormulaSyntaxError as exc:
        print(f"formula syntax error: {exc}", file=sys.stderr)
    except UnboundAtom as exc:
        print(f"unbound atom: {exc.args[0]}", file=sys.stderr)
    except (UsageError, LatticeError, FamilyTooLarge, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except VerificationFailure as exc:
        print(f"verification failure: {exc} witness={exc.witness}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
