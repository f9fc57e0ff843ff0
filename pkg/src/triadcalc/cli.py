"""Command-line front end.

Boolean queries exit 0 for true and 1 for false; usage, I/O, parse and
capacity problems exit 2 with a diagnostic on stderr.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import functionals as fc
from . import ludics as lx
from . import verify
from ._bits import Budget, iter_bits, popcount
from .errors import CapacityError, ConsistencyError, FuelExceeded, ParseError, TriadError
from .formats import (
    dump_triad,
    load_functional,
    load_signature,
    load_triad,
    parse_game_triad,
    parse_table,
    sniff,
)
from .games import BooleanGame, LinearMap, all_games, lift_linear_map, validate_linear_map
from .lattice import enumerate_closed_sets
from .triad import N, P, Polarity, TermRef, TermSet, Triad, closure, consequences, orthogonal_set
from .triad import sem_consequence, specializes

VERBS = (
    "closure",
    "orth",
    "closed-sets",
    "specializes",
    "consequence",
    "entailment-verify",
    "classify",
    "regular",
    "ludics-subtriad",
    "ludics-check",
    "game-lift",
    "verify-all",
)


class UsageError(Exception):
    pass


# -- rendering --------------------------------------------------------------------


def _set_text(x: TermSet) -> str:
    return ",".join(x.labels()) if x.bits else "∅"


def _witness(t: Triad, w) -> str:
    if isinstance(w, TermSet):
        return "{" + ",".join(w.labels()) + "}"
    if isinstance(w, TermRef):
        return t.label(w)
    if isinstance(w, tuple):
        return "(" + ", ".join(_witness(t, x) for x in w) + ")"
    return str(w)


def _bool(v) -> str:
    return "true" if v else "false"


# -- argument helpers -----------------------------------------------------------------


def _budget(args) -> Budget:
    if args.max_subset_exhaustive < 0 or args.sample_count < 1 or args.max_carrier < 0:
        raise UsageError("capacity flags must be non-negative (sample count at least 1)")
    return Budget(args.max_subset_exhaustive, args.sample_count, args.seed, args.max_carrier)


def _triad(args) -> Triad:
    path = args.triad or args.file
    if path is None:
        raise UsageError("a context file is required (--file or --triad)")
    if sniff(path) == "game":
        return parse_game_triad(Path(path).read_text(encoding="utf-8"), source=Path(path))
    return load_triad(path)


def _side(args) -> Polarity:
    try:
        return Polarity.parse(args.side)
    except (TriadError, ValueError):
        raise UsageError(f"--side must be P or N, not {args.side!r}") from None


def _termset(t: Triad, text: str, side: Polarity | None) -> TermSet:
    labels = [s.strip() for s in text.split(",") if s.strip()]
    return t.termset(labels, side)


def _functional(args) -> fc.Functional:
    if args.functional is None:
        raise UsageError("--functional is required")
    triad = _triad(args) if (args.triad or args.file) else None
    return load_functional(args.functional, triad)


def _signature(text: str) -> lx.Signature:
    path = Path(text)
    if path.is_file():
        return lx.Signature(load_signature(path))
    return lx.Signature.parse(text)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- verbs ------------------------------------------------------------------------------


def cmd_closure(args) -> int:
    t = _triad(args)
    _emit(_set_text(closure(t, _termset(t, args.set, _side(args)))))
    return 0


def cmd_orth(args) -> int:
    t = _triad(args)
    _emit(_set_text(orthogonal_set(t, _termset(t, args.set, _side(args)))))
    return 0


def cmd_closed_sets(args) -> int:
    t = _triad(args)
    sides = [_side(args)] if args.side else [P, N]
    rows = []
    for side in sides:
        fam = enumerate_closed_sets(t, side, max_carrier=args.max_carrier)
        masks = sorted(fam.masks, key=lambda m: (popcount(m), list(iter_bits(m))))
        rows += [(side, t.from_mask(side, m)) for m in masks]
    if args.format == "tsv":
        lines = ["side\tset\tcardinality"]
        lines += [f"{s}\t{','.join(x.labels())}\t{len(x)}" for s, x in rows]
    elif len(sides) == 1:
        lines = [_set_text(x) for _, x in rows]
    else:
        lines = [f"{s}: {_set_text(x)}" for s, x in rows]
    _emit("\n".join(lines))
    return 0


def cmd_specializes(args) -> int:
    t = _triad(args)
    verdict = specializes(t, t.ref(args.a), t.ref(args.b))
    _emit(f"specializes: {_bool(verdict)}")
    return 0 if verdict else 1


def cmd_consequence(args) -> int:
    t = _triad(args)
    side = _side(args) if args.side else None
    if args.target is None:
        if side is None and not args.set.strip():
            raise UsageError("--side is required for an empty premise set")
        _emit(_set_text(consequences(t, _termset(t, args.set, side))))
        return 0
    b = t.ref(args.target)
    verdict = sem_consequence(t, _termset(t, args.set, side or b.side), b)
    _emit(f"consequence: {_bool(verdict)}")
    return 0 if verdict else 1


def cmd_entailment_verify(args) -> int:
    t = _triad(args)
    budget = _budget(args)
    sides = [_side(args)] if args.side else [P, N]
    rows = [r for r in verify.entailment_checks(t, budget) if Polarity.parse(r.side) in sides]
    _emit(verify.render(rows, args.format))
    return 0 if all(r.passed for r in rows) else 1


def _classification_lines(f: fc.Functional, rep: fc.ClassificationReport) -> list[str]:
    t = f.triad
    names = {
        "continuous": "continuous",
        "preserves_specialization": "preserves-specialization",
        "preserves_sem_consequence": "preserves-consequence",
        "semiregular": "semiregular",
        "forward_backward": "forward-backward",
        "backward_forward": "backward-forward",
        "good": "good",
    }
    lines = [f"functional: {f.name}", f"regime: {rep.regime}"]
    for key in fc.SIDE_FLAGS:
        for side in (P, N):
            v = rep.sides[side][key]
            line = f"{names[key]}({side}): {_bool(v.holds)}"
            if not v.holds and v.witness is not None:
                w = _witness(t, v.witness)
                line += f"  witness: {w}⊥⊥" if key == "continuous" else f"  witness: {w}"
            lines.append(line)
    line = f"regular: {_bool(rep.regular.holds)}"
    if not rep.regular.holds:
        line += f"  witness: {_witness(t, rep.regular.witness)}"
    lines.append(line)
    lines += [f"note: {n}" for n in rep.notes]
    return lines


def cmd_classify(args) -> int:
    f = _functional(args)
    rep = fc.classify(f, _budget(args))
    if args.format == "tsv":
        lines = ["property\tside\tvalue\twitness"]
        for key in fc.SIDE_FLAGS:
            for side in (P, N):
                v = rep.sides[side][key]
                w = "" if v.holds or v.witness is None else _witness(f.triad, v.witness)
                lines.append(f"{key}\t{side}\t{_bool(v.holds)}\t{w}")
        w = "" if rep.regular.holds else _witness(f.triad, rep.regular.witness)
        lines.append(f"regular\t\t{_bool(rep.regular.holds)}\t{w}")
    else:
        lines = _classification_lines(f, rep)
    _emit("\n".join(lines))
    return 0


def cmd_regular(args) -> int:
    f = _functional(args)
    v = fc.is_regular(f)
    line = f"regular: {_bool(v.holds)}"
    if not v.holds:
        line += f"  witness: {_witness(f.triad, v.witness)}"
    _emit(line)
    return 0 if v else 1


def _max_nodes(args) -> int:
    if args.max_nodes is None or args.max_nodes < 1:
        raise UsageError("--max-nodes must be a positive integer")
    return args.max_nodes


def cmd_ludics_subtriad(args) -> int:
    if args.sig is None:
        raise UsageError("--sig is required")
    t = lx.build_subtriad(_signature(args.sig), _max_nodes(args))
    text = dump_triad(t)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _emit(f"wrote {args.out}: {t.size(P)} positives, {t.size(N)} negatives")
    else:
        _emit(text)
    return 0


def _load_ludics_functional(path: str, sig: lx.Signature) -> lx.LudicsFunctional:
    p = Path(path)
    text = p.read_text(encoding="utf-8") if p.is_file() else path
    d = lx.parse_design(text.strip(), sig)
    if lx.is_positive(d):
        raise UsageError(f"{path}: a functional must be a negative design")
    return lx.LudicsFunctional(d)


def cmd_ludics_check(args) -> int:
    if args.sig is None:
        raise UsageError("--sig is required")
    sig = _signature(args.sig)
    funcs = None
    if args.functional:
        funcs = [_load_ludics_functional(args.functional, sig)]
    rows = verify.ludics_checks(sig, _max_nodes(args), funcs, _budget(args))
    _emit(verify.render(rows, args.format))
    return 0 if all(r.passed for r in rows) else 1


def _load_game(path) -> BooleanGame:
    path = Path(path)
    return BooleanGame.from_triad(parse_game_triad(path.read_text(encoding="utf-8"), source=path))


def _load_map(path) -> tuple[BooleanGame, LinearMap, str]:
    path = Path(path)
    table = parse_table(path.read_text(encoding="utf-8"), "map", source=path)
    g = _load_game(path.parent / table.over)
    try:
        return g, LinearMap.from_mapping(g, table.mapping), table.name
    except TriadError as exc:
        raise ParseError(str(exc), source=path) from None


def cmd_game_lift(args) -> int:
    if args.map is None:
        raise UsageError("--map is required")
    g, m, name = _load_map(args.map)
    if args.game:
        g = _load_game(args.game)
    t = Triad(g.strategies, g.costrategies, [list(r) for r in g.relation])
    v = validate_linear_map(g, m)
    if not v:
        _emit(f"linear: false  witness: {_witness(t, v.witness)}")
        return 1
    f = lift_linear_map(g, m, name)
    reg = fc.is_regular(f)
    lines = ["linear: true", f"regular: {_bool(reg.holds)}"]
    lines += [f"{a} -> {b}" for a, b in f.mapping().items()]
    _emit("\n".join(lines))
    return 0 if reg else 1


def _guarded(title, thunk) -> list[verify.Check]:
    try:
        return thunk()
    except CapacityError as exc:
        return [verify.Check(f"{title}: capacity", False, verify.SAMPLED, 0, str(exc))]


def cmd_verify_all(args) -> int:
    budget = _budget(args)
    if not args.paths and args.sig is None and args.games is None:
        raise UsageError("nothing to verify: give files, --sig or --games")
    sections: list[tuple[str, list[verify.Check]]] = []
    for path in args.paths:
        kind = sniff(path)
        if kind in ("triad", "game"):
            t = _triad(argparse.Namespace(triad=path, file=None))
            rows = _guarded("triad", lambda: verify.triad_checks(t, budget))
            rows += _guarded("entailment", lambda: verify.entailment_checks(t, budget))
            rows += _guarded("closed sets", lambda: verify.lattice_checks(t, budget))
            if kind == "game":
                rows += verify.game_checks([BooleanGame.from_triad(t)])
        elif kind == "functional":
            f = load_functional(path)
            rows = _guarded("functional", lambda: verify.functional_checks(f, budget))
        elif kind == "map":
            g, m, name = _load_map(path)
            v = validate_linear_map(g, m)
            rows = [verify.Check("games: map satisfies the adjunction", v.holds, checked=len(g.strategies) * len(g.costrategies))]
            if v:
                reg = fc.is_regular(lift_linear_map(g, m, name))
                rows.append(verify.Check("games: lifted map is regular", reg.holds, checked=len(g.strategies) * len(g.costrategies)))
        else:
            sig = lx.Signature(load_signature(path))
            rows = _guarded("ludics", lambda: verify.ludics_checks(sig, args.max_nodes or 3, None, budget))
        sections.append((f"{path} ({kind})", rows))
    if args.sig is not None:
        sig = _signature(args.sig)
        n = _max_nodes(argparse.Namespace(max_nodes=args.max_nodes or 3))
        sections.append((f"ludics {sig} max-nodes {n}", _guarded("ludics", lambda: verify.ludics_checks(sig, n, None, budget))))
    if args.games is not None:
        k = args.games
        sections.append((f"games up to {k}x{k}", verify.game_checks(all_games(k, k))))

    all_rows = [r for _, rows in sections for r in rows]
    if args.format == "tsv":
        _emit(verify.render(all_rows, "tsv"))
    else:
        out = []
        for title, rows in sections:
            out.append(f"== {title}")
            out.append(verify.render(rows).rstrip("\n"))
        passed = sum(r.passed for r in all_rows)
        out.append(f"{passed}/{len(all_rows)} checks passed")
        _emit("\n".join(out))
    return 0 if all(r.passed for r in all_rows) else 1


# -- parser -------------------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "tsv"), default=d("text"))
    p.add_argument("--max-subset-exhaustive", type=int, default=d(16), metavar="N",
                   help="largest side quantified over every subset (default 16)")
    p.add_argument("--sample-count", type=int, default=d(10_000), metavar="N",
                   help="subsets drawn above the exhaustive limit (default 10000)")
    p.add_argument("--max-carrier", type=int, default=d(30), metavar="N",
                   help="largest side whose closed sets are enumerated (default 30)")
    p.add_argument("--seed", type=int, default=d(0), help="sampling seed (default 0)")
    p.add_argument("--jobs", type=int, default=d(1), metavar="N",
                   help="accepted for scripting; suites run in-process")
    p.add_argument("--timing", action="store_true", default=d(False),
                   help="print elapsed time on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triadcalc", description="Orthogonality calculus on finite triads.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    def verb(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    def ctx(p, side_required=True):
        p.add_argument("--file", help="context file (.triad or .game)")
        p.add_argument("--triad", help="alias of --file")
        p.add_argument("--side", required=side_required, help="P or N")

    p = verb("closure", cmd_closure, "double orthogonal of a set")
    ctx(p)
    p.add_argument("--set", required=True, help="comma-separated labels")
    p = verb("orth", cmd_orth, "orthogonal of a set")
    ctx(p)
    p.add_argument("--set", required=True)
    p = verb("closed-sets", cmd_closed_sets, "every closed set, one per line")
    ctx(p, side_required=False)
    p = verb("specializes", cmd_specializes, "does A specialize to B")
    ctx(p, side_required=False)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = verb("consequence", cmd_consequence, "semantical consequence test, or all consequences")
    ctx(p, side_required=False)
    p.add_argument("--set", required=True)
    p.add_argument("--target", help="term to test; omit to list every consequence")
    p = verb("entailment-verify", cmd_entailment_verify, "check the entailment-system laws")
    ctx(p, side_required=False)
    for name, fn, h in (("classify", cmd_classify, "every property of a functional"),
                        ("regular", cmd_regular, "regularity of a functional")):
        p = verb(name, fn, h)
        p.add_argument("--triad")
        p.add_argument("--file")
        p.add_argument("--functional", required=True)
    for name, fn, h in (("ludics-subtriad", cmd_ludics_subtriad, "bounded design triad as a .triad file"),
                        ("ludics-check", cmd_ludics_check, "associativity and regularity suite")):
        p = verb(name, fn, h)
        p.add_argument("--sig", required=True, help="signature file or inline 'a/0,b/1'")
        p.add_argument("--max-nodes", type=int, required=True)
        if name == "ludics-subtriad":
            p.add_argument("--out")
        else:
            p.add_argument("--functional", help="design file holding one functional")
    p = verb("game-lift", cmd_game_lift, "validate a map on a game and lift it")
    p.add_argument("--game", help="game file (defaults to the map's 'over' target)")
    p.add_argument("--map", required=True)
    p = verb("verify-all", cmd_verify_all, "run every law suite on the given inputs")
    p.add_argument("paths", nargs="*")
    p.add_argument("--sig")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--games", type=int, metavar="K", help="also check every game up to KxK")
    return parser


def _rewrite(argv: list[str]) -> list[str]:
    # `ludics subtriad ...` and `ludics check ...` spell the hyphenated verbs
    for i, tok in enumerate(argv):
        if not tok.startswith("-"):
            if tok == "ludics" and i + 1 < len(argv) and argv[i + 1] in ("subtriad", "check"):
                return argv[:i] + [f"ludics-{argv[i + 1]}"] + argv[i + 2:]
            break
    return argv


def main(argv: list[str] | None = None) -> int:
    argv = _rewrite(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    start = time.perf_counter()
    try:
        status = args.fn(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ParseError as exc:
        print(f"triadcalc: parse error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"triadcalc: capacity: {exc}", file=sys.stderr)
        return 2
    except FuelExceeded as exc:
        print(f"triadcalc: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"triadcalc: internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except (TriadError, OSError) as exc:
        print(f"triadcalc: error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
