"""A small calculus of linear, cut-free designs.

Positive designs are ``omega``, ``daimon`` or an action ``x|a<N1,...,Nk>``
whose head ``x`` is a variable.  Negative designs are a finite set of
branches ``a(y1,...,yk).P``, at most one per name; an action that meets a
missing branch diverges to ``omega``.  Every variable is bound at most once
and used at most once in the whole tree (linearity).  During normalization
the head of an action may also be a negative design: that is a cut.

Concrete syntax::

    P ::= "omega" | "daimon" | VAR "|" NAME "<" N ("," N)* ">" | VAR "|" NAME "<>"
    N ::= "{" (NAME "(" [VAR ("," VAR)*] ")" "." P)* "}"

Branches inside braces are separated by commas or whitespace; a lone branch
may drop its braces.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import CapacityError, DesignError, FuelExceeded, ParseError
from .triad import N as NEG
from .triad import P as POS
from .triad import Polarity, Triad

FREE = "x0"


class Signature:
    """Action names with their arities."""

    def __init__(self, names: Iterable[tuple[str, int]]):
        names = [(str(a), int(k)) for a, k in names]
        arity: dict[str, int] = {}
        for a, k in names:
            if a in arity:
                raise DesignError(f"name {a!r} declared twice")
            if k < 0:
                raise DesignError(f"name {a!r} has negative arity")
            if not _IDENT.fullmatch(a) or a in _KEYWORDS:
                raise DesignError(f"invalid action name {a!r}")
            arity[a] = k
        self.names = tuple(names)
        self.arity = arity

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """``"a/0, b/1"`` shorthand."""
        out = []
        for item in text.replace(",", " ").split():
            name, _, k = item.partition("/")
            out.append((name, int(k)))
        return cls(out)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.arity

    def __repr__(self):
        return "Signature(" + ", ".join(f"{a}/{k}" for a, k in self.names) + ")"

    def __eq__(self, other):
        return isinstance(other, Signature) and self.names == other.names

    def __hash__(self):
        return hash(self.names)


# -- terms ---------------------------------------------------------------------


@dataclass(frozen=True)
class Omega:
    def __str__(self):
        return "omega"


@dataclass(frozen=True)
class Daimon:
    def __str__(self):
        return "daimon"


OMEGA = Omega()
DAIMON = Daimon()


@dataclass(frozen=True)
class Branch:
    name: str
    params: tuple[str, ...]
    body: "Positive"


@dataclass(frozen=True)
class Negative:
    branches: tuple[Branch, ...] = ()

    def branch(self, name: str) -> Branch | None:
        for b in self.branches:
            if b.name == name:
                return b
        return None

    def __str__(self):
        return "{" + ",".join(
            f"{b.name}({','.join(b.params)}).{b.body}" for b in self.branches
        ) + "}"


@dataclass(frozen=True)
class Action:
    """``head|name<args>``; a :class:`Negative` head is a cut."""

    head: Union[str, Negative]
    name: str
    args: tuple[Negative, ...] = ()

    @property
    def is_cut(self) -> bool:
        return isinstance(self.head, Negative)

    def __str__(self):
        head = str(self.head)
        return f"{head}|{self.name}<{','.join(str(a) for a in self.args)}>"


Positive = Union[Omega, Daimon, Action]
Design = Union[Omega, Daimon, Action, Negative]


@dataclass(frozen=True)
class LudicsFunctional:
    """A negative design with at most ``x0`` free."""

    body: Negative

    def __str__(self):
        return str(self.body)


def is_positive(d: Design) -> bool:
    return isinstance(d, (Omega, Daimon, Action))


def size(d: Design) -> int:
    """Node count: one per omega/daimon/action/negative, plus subterms."""
    if isinstance(d, (Omega, Daimon)):
        return 1
    if isinstance(d, Action):
        head = size(d.head) if isinstance(d.head, Negative) else 0
        return 1 + head + sum(size(a) for a in d.args)
    return 1 + sum(size(b.body) for b in d.branches)


def free_variables(d: Design) -> set[str]:
    if isinstance(d, (Omega, Daimon)):
        return set()
    if isinstance(d, Action):
        out = free_variables(d.head) if isinstance(d.head, Negative) else {d.head}
        for a in d.args:
            out |= free_variables(a)
        return out
    out: set[str] = set()
    for b in d.branches:
        out |= free_variables(b.body) - set(b.params)
    return out


# -- validation ------------------------------------------------------------------


def validate(d: Design, sig: Signature, free: Iterable[str] = (FREE,), allow_cuts: bool = False) -> Design:
    """Check arities, names, scoping, linearity and (unless ``allow_cuts``)
    cut-freeness.  Returns ``d`` unchanged."""
    free = set(free)
    bound: set[str] = set()
    used: set[str] = set()

    def var(x: str, scope: frozenset):
        if x not in scope:
            raise DesignError(f"variable {x} is not in scope")
        if x in used:
            raise DesignError(f"linearity violation: {x} used twice")
        used.add(x)

    def pos(p, scope):
        if isinstance(p, (Omega, Daimon)):
            return
        if not isinstance(p, Action):
            raise DesignError(f"expected a positive design, got {type(p).__name__}")
        if p.name not in sig:
            raise DesignError(f"unknown name {p.name!r}")
        if len(p.args) != sig.arity[p.name]:
            raise DesignError(
                f"arity mismatch: {p.name} expects {sig.arity[p.name]} arguments, got {len(p.args)}"
            )
        if isinstance(p.head, Negative):
            if not allow_cuts:
                raise DesignError("cut in a design that must be cut-free")
            neg(p.head, scope)
        else:
            var(p.head, scope)
        for a in p.args:
            neg(a, scope)

    def neg(n, scope):
        if not isinstance(n, Negative):
            raise DesignError(f"expected a negative design, got {type(n).__name__}")
        names = [b.name for b in n.branches]
        if len(set(names)) != len(names):
            raise DesignError("two branches with the same name")
        for b in n.branches:
            if b.name not in sig:
                raise DesignError(f"unknown name {b.name!r}")
            if len(b.params) != sig.arity[b.name]:
                raise DesignError(
                    f"arity mismatch: branch {b.name} binds {len(b.params)}, expected {sig.arity[b.name]}"
                )
            for y in b.params:
                if y in bound or y in free or y in scope:
                    raise DesignError(f"linearity violation: {y} bound twice")
                bound.add(y)
            pos(b.body, scope | set(b.params))

    scope = frozenset(free)
    if is_positive(d):
        pos(d, scope)
    else:
        neg(d, scope)
    return d


# -- printing / parsing ------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_KEYWORDS = {"omega", "daimon"}
_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[|<>{}(),.]))")


def to_text(d: Design) -> str:
    return str(d)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
            kind = "ident" if m.group("ident") else "punct"
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "", len(self.text))

    def error(self, msg):
        return ParseError(msg, 1, self.peek()[2] + 1)

    def expect(self, value):
        kind, v, _ = self.peek()
        if v != value or kind == "eof":
            raise self.error(f"expected {value!r}, found {v or 'end of input'!r}")
        self.i += 1

    def ident(self):
        kind, v, _ = self.peek()
        if kind != "ident":
            raise self.error(f"expected a name, found {v or 'end of input'!r}")
        self.i += 1
        return v

    def positive(self):
        kind, v, _ = self.peek()
        if v == "omega":
            self.i += 1
            return OMEGA
        if v == "daimon":
            self.i += 1
            return DAIMON
        if v == "{":
            head = self.negative()
        else:
            head = self.ident()
            if head in _KEYWORDS:
                raise self.error(f"{head!r} cannot be a variable")
        self.expect("|")
        name = self.ident()
        self.expect("<")
        args = []
        if self.peek()[1] != ">":
            args.append(self.negative())
            while self.peek()[1] == ",":
                self.i += 1
                args.append(self.negative())
        self.expect(">")
        return Action(head, name, tuple(args))

    def branch(self):
        name = self.ident()
        self.expect("(")
        params = []
        if self.peek()[1] != ")":
            params.append(self.ident())
            while self.peek()[1] == ",":
                self.i += 1
                params.append(self.ident())
        self.expect(")")
        self.expect(".")
        return Branch(name, tuple(params), self.positive())

    def negative(self):
        if self.peek()[1] != "{":
            return Negative((self.branch(),))
        self.expect("{")
        branches = []
        while self.peek()[1] != "}":
            if self.peek()[0] == "eof":
                raise self.error("unterminated '{'")
            if branches and self.peek()[1] == ",":
                self.i += 1
            branches.append(self.branch())
        self.expect("}")
        return Negative(tuple(sorted(branches, key=lambda b: b.name)))

    def design(self):
        kind, v, _ = self.peek()
        if v == "{" or (kind == "ident" and self.peek(1)[1] == "("):
            d = self.negative()
        else:
            d = self.positive()
        if self.peek()[0] != "eof":
            raise self.error(f"trailing input {self.peek()[1]!r}")
        return d


def parse_design(text: str, sig: Signature, free: Iterable[str] = (FREE,)) -> Design:
    """Parse and validate a cut-free design with at most ``free`` free."""
    d = _Parser(text).design()
    return validate(d, sig, free)


# -- renaming ----------------------------------------------------------------------


def _rename(d: Design, fresh, env: dict[str, str]) -> Design:
    if isinstance(d, (Omega, Daimon)):
        return d
    if isinstance(d, Action):
        head = _rename(d.head, fresh, env) if isinstance(d.head, Negative) else env.get(d.head, d.head)
        return Action(head, d.name, tuple(_rename(a, fresh, env) for a in d.args))
    branches = []
    for b in d.branches:
        inner = dict(env)
        params = []
        for y in b.params:
            params.append(fresh())
            inner[y] = params[-1]
        branches.append(Branch(b.name, tuple(params), _rename(b.body, fresh, inner)))
    return Negative(tuple(branches))


_fresh_counter = itertools.count()


def _global_fresh() -> str:
    return f"_v{next(_fresh_counter)}"


def freshen(d: Design) -> Design:
    """Rename every bound variable to a globally unique name."""
    return _rename(d, _global_fresh, {})


def canonical(d: Design) -> Design:
    """Rename bound variables ``y1, y2, ...`` in pre-order; branches sorted."""
    counter = itertools.count(1)

    def fresh():
        return f"y{next(counter)}"

    return _sort(_rename(d, fresh, {}))


def _sort(d: Design) -> Design:
    if isinstance(d, (Omega, Daimon)):
        return d
    if isinstance(d, Action):
        head = _sort(d.head) if isinstance(d.head, Negative) else d.head
        return Action(head, d.name, tuple(_sort(a) for a in d.args))
    return Negative(
        tuple(
            Branch(b.name, b.params, _sort(b.body))
            for b in sorted(d.branches, key=lambda b: b.name)
        )
    )


# -- substitution and normalization -----------------------------------------------


def _subst(d: Design, env: dict[str, Negative]) -> Design:
    # Bound names are assumed globally distinct, so no capture can occur.
    if isinstance(d, (Omega, Daimon)):
        return d
    if isinstance(d, Action):
        if isinstance(d.head, Negative):
            head = _subst(d.head, env)
        else:
            head = env.get(d.head, d.head)
        return Action(head, d.name, tuple(_subst(a, env) for a in d.args))
    return Negative(tuple(Branch(b.name, b.params, _subst(b.body, env)) for b in d.branches))


def substitute(host: Design, n: Negative, x: str = FREE) -> Design:
    """``host[n/x]``: replace the (unique) occurrence of ``x`` by ``n``.

    Both designs are freshened first so their bound names are disjoint.
    """
    return _subst(freshen(host), {x: freshen(n)})


def normalize(d: Design, fuel: int | None = None, closed: bool = False) -> Design:
    """Head-reduce ``d`` and then normalize under every binder.

    A cut ``{...}|a<N1..Nk>`` steps to the body of branch ``a`` with its
    parameters replaced by ``N1..Nk``, or to ``omega`` if there is no such
    branch.  Linear designs shrink at every step, so exhausting ``fuel``
    (default four times the node count) raises :class:`FuelExceeded`.
    """
    if closed and free_variables(d):
        raise DesignError(
            "open design where a closed one is required: free " + ", ".join(sorted(free_variables(d)))
        )
    return normalize_with_steps(d, fuel)[0]


def normalize_with_steps(d: Design, fuel: int | None = None) -> tuple[Design, int]:
    """Like :func:`normalize`, also returning the number of cut steps."""
    budget = [4 * size(d) if fuel is None else fuel, 0]
    out = _norm(d, budget)
    return out, budget[1]


def _norm(d: Design, budget: list[int]) -> Design:
    if isinstance(d, Negative):
        return Negative(tuple(Branch(b.name, b.params, _norm(b.body, budget)) for b in d.branches))
    while isinstance(d, Action) and d.is_cut:
        budget[1] += 1
        if budget[1] > budget[0]:
            raise FuelExceeded(budget[0])
        br = d.head.branch(d.name)
        if br is None:
            return OMEGA
        if len(br.params) != len(d.args):
            raise DesignError(f"arity mismatch in cut on {d.name}")
        d = _subst(br.body, dict(zip(br.params, d.args)))
    if isinstance(d, Action):
        return Action(d.head, d.name, tuple(_norm(a, budget) for a in d.args))
    return d


def normal_form(d: Design, fuel: int | None = None) -> Design:
    """Canonical normal form of a design built by substitution."""
    return canonical(normalize(d, fuel))


def orthogonal_designs(p: Positive, n: Negative, fuel: int | None = None) -> bool:
    """``p ⊥ n`` iff ``p[n/x0]`` normalizes to daimon."""
    if not isinstance(n, Negative) or not is_positive(p):
        raise DesignError("orthogonality needs a positive and a negative design")
    raw = substitute(p, n, FREE)
    result = normalize(raw, fuel, closed=True)
    if not isinstance(result, (Omega, Daimon)):  # pragma: no cover - closed normal forms
        raise DesignError(f"closed design normalized to {result}")
    return isinstance(result, Daimon)


def apply_functional(g: "LudicsFunctional | Negative", a: Design, fuel: int | None = None) -> Design:
    """``[[a[g/x0]]]`` for positive ``a`` and ``[[g[a/x0]]]`` for negative ``a``."""
    body = g.body if isinstance(g, LudicsFunctional) else g
    if is_positive(a):
        return normal_form(substitute(a, body, FREE), fuel)
    if free_variables(a):
        raise DesignError("negative carrier designs must be closed")
    return normal_form(substitute(body, a, FREE), fuel)


def check_associativity(p: Positive, g: "LudicsFunctional | Negative", n: Negative) -> bool:
    """``g(p) ⊥ n`` iff ``p ⊥ g(n)``."""
    return orthogonal_designs(apply_functional(g, p), n) == orthogonal_designs(
        p, apply_functional(g, n)
    )


# -- enumeration ----------------------------------------------------------------------

DEFAULT_LIMIT = 200_000


class _Enumerator:
    def __init__(self, sig: Signature, limit: int):
        self.sig = sig
        self.limit = limit
        self.count = 0
        self._pos: dict = {}
        self._neg: dict = {}

    def tick(self, k=1):
        self.count += k
        if self.count > self.limit:
            raise CapacityError(f"design enumeration exceeded {self.limit} terms")

    def _splits(self, avail: tuple[str, ...], k: int):
        # assign each variable to one of k slots or to none
        for choice in itertools.product(range(k + 1), repeat=len(avail)):
            yield tuple(
                tuple(v for v, c in zip(avail, choice) if c == slot) for slot in range(k)
            )

    def _sizes(self, total: int, k: int):
        if k == 0:
            if total == 0:
                yield ()
            return
        for first in range(1, total - k + 2):
            for rest in self._sizes(total - first, k - 1):
                yield (first, *rest)

    def positives(self, s: int, avail: tuple[str, ...], depth: int) -> list[Positive]:
        key = (s, avail, depth)
        if key in self._pos:
            return self._pos[key]
        out: list[Positive] = []
        if s == 1:
            out += [OMEGA, DAIMON]
        for x in avail:
            rest = tuple(v for v in avail if v != x)
            for name, k in self.sig:
                if k == 0:
                    if s == 1:
                        out.append(Action(x, name, ()))
                    continue
                for sizes in self._sizes(s - 1, k):
                    for split in self._splits(rest, k):
                        choices = [self.negatives(sz, vs, depth) for sz, vs in zip(sizes, split)]
                        for args in itertools.product(*choices):
                            out.append(Action(x, name, tuple(args)))
                            self.tick()
        self._pos[key] = out
        return out

    def negatives(self, s: int, avail: tuple[str, ...], depth: int) -> list[Negative]:
        key = (s, avail, depth)
        if key in self._neg:
            return self._neg[key]
        out: list[Negative] = []
        names = list(self.sig)
        for r in range(len(names) + 1):
            for subset in itertools.combinations(names, r):
                if 1 + r > s:
                    continue
                for sizes in self._sizes(s - 1, r):
                    for split in self._splits(avail, r):
                        per_branch = []
                        for (name, k), sz, vs in zip(subset, sizes, split):
                            params = tuple(f"v{depth}_{name}_{i}" for i in range(k))
                            bodies = self.positives(sz, vs + params, depth + 1)
                            per_branch.append(
                                [Branch(name, params, body) for body in bodies]
                            )
                        for branches in itertools.product(*per_branch):
                            out.append(Negative(tuple(branches)))
                            self.tick()
        self._neg[key] = out
        return out


def enumerate_designs(
    sig: Signature,
    max_nodes: int,
    polarity,
    free: tuple[str, ...] | None = None,
    limit: int = DEFAULT_LIMIT,
) -> list[Design]:
    """Every canonical design of the given polarity with at most
    ``max_nodes`` nodes, smallest first, without duplicates.

    Positives may use ``x0``; negatives are closed unless ``free`` says
    otherwise (pass ``("x0",)`` to enumerate functionals).
    """
    if max_nodes < 1:
        raise CapacityError("max_nodes must be at least 1")
    polarity = Polarity.parse(polarity)
    if free is None:
        free = (FREE,) if polarity is POS else ()
    gen = _Enumerator(sig, limit)
    seen: set = set()
    out: list[Design] = []
    for s in range(1, max_nodes + 1):
        batch = gen.positives(s, tuple(free), 0) if polarity is POS else gen.negatives(s, tuple(free), 0)
        for d in batch:
            c = canonical(d)
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def enumerate_functionals(sig: Signature, max_nodes: int, limit: int = DEFAULT_LIMIT) -> list[LudicsFunctional]:
    return [
        LudicsFunctional(d)
        for d in enumerate_designs(sig, max_nodes, NEG, free=(FREE,), limit=limit)
    ]


# -- sub-triads ----------------------------------------------------------------------


@dataclass
class LudicsWorld:
    """A bounded sub-triad together with the designs behind its labels."""

    sig: Signature
    max_nodes: int
    positives: list[Positive]
    negatives: list[Negative]
    triad: Triad

    def design(self, label: str) -> Design:
        ref = self.triad.ref(label)
        return (self.positives if ref.side is POS else self.negatives)[ref.index]

    def index_of(self, d: Design) -> int:
        """Carrier index of ``d`` on its own side, or -1 outside the carrier."""
        table = self.__dict__.get("_lookup")
        if table is None:
            table = {p: i for i, p in enumerate(self.positives)}
            table.update({n: i for i, n in enumerate(self.negatives)})
            self.__dict__["_lookup"] = table
        return table.get(d, -1)


def build_world(sig: Signature, max_nodes: int, limit: int = DEFAULT_LIMIT) -> LudicsWorld:
    pos = enumerate_designs(sig, max_nodes, POS, limit=limit)
    neg = enumerate_designs(sig, max_nodes, NEG, limit=limit)
    matrix = [[orthogonal_designs(p, n) for n in neg] for p in pos]
    triad = Triad([str(p) for p in pos], [str(n) for n in neg], matrix)
    return LudicsWorld(sig, max_nodes, pos, neg, triad)


def build_subtriad(sig: Signature, max_nodes: int, limit: int = DEFAULT_LIMIT) -> Triad:
    return build_world(sig, max_nodes, limit).triad


@dataclass
class LiftedFunctional:
    """A ludics functional tabulated over a bounded sub-triad; ``-1`` marks an
    input whose image escapes the carrier."""

    functional: LudicsFunctional
    pos_map: tuple[int, ...]
    neg_map: tuple[int, ...]

    @property
    def excluded(self) -> int:
        return sum(1 for v in self.pos_map + self.neg_map if v < 0)

    @property
    def total(self) -> bool:
        return self.excluded == 0


def lift_functional(world: LudicsWorld, g: LudicsFunctional) -> LiftedFunctional:
    pos_map = tuple(world.index_of(apply_functional(g, p)) for p in world.positives)
    neg_map = tuple(world.index_of(apply_functional(g, n)) for n in world.negatives)
    return LiftedFunctional(g, pos_map, neg_map)


def iter_triples(world: LudicsWorld, functionals) -> Iterator[tuple]:
    for g in functionals:
        for p in world.positives:
            for n in world.negatives:
                yield p, g, n
