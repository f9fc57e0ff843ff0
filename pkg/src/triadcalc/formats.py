"""Readers and writers for the text formats.

``.triad``::

    triad
    positives: 0P 1P 2P
    negatives: 0N 1N 2N
    orthogonal:
    0P 0N
    end

``.game`` is the same with header ``game`` and sections ``strategies:``,
``costrategies:`` and ``related:``.  ``.fnl`` (and game ``.map`` files) list
one ``label -> label`` mapping per line between a ``functional NAME over
PATH`` (or ``map NAME over PATH``) header and ``end``.  A signature file has
one ``name arity`` pair per line.  ``#`` starts a comment everywhere.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, TriadError
from .functionals import Functional
from .triad import Triad

_TRIAD_KEYS = {"triad": ("positives", "negatives", "orthogonal")}
_GAME_KEYS = {"game": ("strategies", "costrategies", "related")}


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse_context(text: str, header: str, keys: tuple[str, str, str], source=None):
    pos_key, neg_key, rel_key = keys
    lines = list(_lines(text))
    if not lines or lines[0][1] != header:
        no = lines[0][0] if lines else 1
        raise ParseError(f"expected header {header!r}", no, source=source)
    sides: dict[str, list[str]] = {}
    pairs: list[tuple[str, str]] = []
    seen_pairs: set[frozenset] = set()
    state = "head"
    ended = False
    for no, line in lines[1:]:
        if ended:
            raise ParseError("content after 'end'", no, source=source)
        if line == "end":
            ended = True
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key in (pos_key, neg_key) and state == "head":
            if key in sides:
                raise ParseError(f"section {key!r} given twice", no, source=source)
            sides[key] = rest.split()
            continue
        if sep and key == rel_key and not rest.strip():
            if pos_key not in sides or neg_key not in sides:
                raise ParseError(
                    f"{rel_key!r} must follow {pos_key!r} and {neg_key!r}", no, source=source
                )
            state = "pairs"
            continue
        if state != "pairs":
            raise ParseError(f"unexpected line {line!r}", no, source=source)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("a related pair needs exactly two labels", no, source=source)
        key_pair = frozenset(parts)
        if key_pair in seen_pairs:
            raise ParseError(f"duplicate pair {parts[0]} {parts[1]}", no, source=source)
        seen_pairs.add(key_pair)
        pairs.append((parts[0], parts[1]))
    if not ended:
        raise ParseError("missing 'end'", lines[-1][0], source=source)
    if state != "pairs":
        raise ParseError(f"missing {rel_key!r} section", source=source)
    try:
        return Triad.from_pairs(sides[pos_key], sides[neg_key], pairs)
    except TriadError as exc:
        raise ParseError(str(exc), source=source) from None


def parse_triad(text: str, source=None) -> Triad:
    return _parse_context(text, "triad", _TRIAD_KEYS["triad"], source)


def parse_game_triad(text: str, source=None) -> Triad:
    return _parse_context(text, "game", _GAME_KEYS["game"], source)


def _dump_context(t: Triad, header: str, keys) -> str:
    pos_key, neg_key, rel_key = keys
    out = [header, f"{pos_key}: " + " ".join(t.positives), f"{neg_key}: " + " ".join(t.negatives)]
    out[1] = out[1].rstrip()
    out[2] = out[2].rstrip()
    out.append(f"{rel_key}:")
    out.extend(f"{p} {n}" for p, n in t.pairs())
    out.append("end")
    return "\n".join(out) + "\n"


def dump_triad(t: Triad) -> str:
    for lab in (*t.positives, *t.negatives):
        if not lab or any(c.isspace() for c in lab) or "#" in lab or ":" in lab:
            raise TriadError(f"label {lab!r} cannot be written to a .triad file")
    return _dump_context(t, "triad", _TRIAD_KEYS["triad"])


def dump_game_triad(t: Triad) -> str:
    return _dump_context(t, "game", _GAME_KEYS["game"])


def load_triad(path) -> Triad:
    path = Path(path)
    return parse_triad(_read(path), source=path)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TriadError(f"{path}: {exc.strerror or exc}") from None


@dataclass(frozen=True)
class TableFile:
    kind: str
    name: str
    over: str
    mapping: dict[str, str]


def parse_table(text: str, kind: str = "functional", source=None) -> TableFile:
    lines = list(_lines(text))
    if not lines:
        raise ParseError(f"empty {kind} file", source=source)
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 4 or parts[0] != kind or parts[2] != "over":
        raise ParseError(f"expected '{kind} NAME over FILE'", no, source=source)
    mapping: dict[str, str] = {}
    ended = False
    for no, line in lines[1:]:
        if ended:
            raise ParseError("content after 'end'", no, source=source)
        if line == "end":
            ended = True
            continue
        src, arrow, dst = line.partition("->")
        src, dst = src.strip(), dst.strip()
        if not arrow or not src or not dst or len(src.split()) != 1 or len(dst.split()) != 1:
            raise ParseError("expected 'LABEL -> LABEL'", no, source=source)
        if src in mapping:
            raise ParseError(f"{src} mapped twice", no, source=source)
        mapping[src] = dst
    if not ended:
        raise ParseError("missing 'end'", lines[-1][0], source=source)
    return TableFile(kind, parts[1], parts[3], mapping)


def functional_from_table(table: TableFile, triad: Triad, source=None) -> Functional:
    try:
        return Functional.from_mapping(table.name, triad, table.mapping)
    except TriadError as exc:
        raise ParseError(str(exc), source=source) from None


def load_functional(path, triad: Triad | None = None) -> Functional:
    """Load a ``.fnl`` file; without ``triad`` the file's ``over`` target is
    loaded relative to the functional file."""
    path = Path(path)
    table = parse_table(_read(path), "functional", source=path)
    if triad is None:
        triad = load_triad(path.parent / table.over)
    return functional_from_table(table, triad, source=path)


def dump_functional(f: Functional, over: str) -> str:
    lines = [f"functional {f.name} over {over}"]
    lines += [f"{a} -> {b}" for a, b in f.mapping().items()]
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_signature(text: str, source=None) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    seen = set()
    for no, line in _lines(text):
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise ParseError("expected 'name arity'", no, source=source)
        name = parts[0]
        if name in seen:
            raise ParseError(f"name {name!r} declared twice", no, source=source)
        seen.add(name)
        out.append((name, int(parts[1])))
    return out


def load_signature(path) -> list[tuple[str, int]]:
    path = Path(path)
    return parse_signature(_read(path), source=path)


def sniff(path) -> str:
    """Kind of a context/table file from its header: triad, game,
    functional, map or signature."""
    path = Path(path)
    for _, line in _lines(_read(path)):
        word = line.split()[0]
        if word in ("triad", "game", "functional", "map"):
            return word
        return "signature"
    raise TriadError(f"{path}: empty file")


def relpath(target, start) -> str:
    return os.path.relpath(Path(target).resolve(), Path(start).resolve().parent)
