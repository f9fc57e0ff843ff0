"""Functionals over a triad: interpretation tables, images, pre-images and
the continuity / regularity classification."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from ._bits import (
    DEFAULT_BUDGET,
    EXHAUSTIVE,
    SAMPLED,
    Budget,
    iter_bits,
    subset_scan,
)
from .errors import ConsistencyError, PolarityClash, TriadError
from .lattice import ClosedSetFamily, enumerate_closed_sets
from .triad import (
    N,
    P,
    Polarity,
    TermRef,
    TermSet,
    Triad,
    closure_mask,
    consequence_mask,
    orth_mask,
)


@dataclass(frozen=True)
class Functional:
    """A polarity-preserving total table on the domain of ``triad``.

    ``pos_map[i]`` is the index of the image of positive ``i`` and likewise
    for ``neg_map``.
    """

    name: str
    triad: Triad
    pos_map: tuple[int, ...]
    neg_map: tuple[int, ...]

    def __post_init__(self):
        t = self.triad
        object.__setattr__(self, "pos_map", tuple(int(v) for v in self.pos_map))
        object.__setattr__(self, "neg_map", tuple(int(v) for v in self.neg_map))
        for side, table in ((P, self.pos_map), (N, self.neg_map)):
            if len(table) != t.size(side):
                raise TriadError(f"functional {self.name}: table on {side} is not total")
            if any(not 0 <= v < t.size(side) for v in table):
                raise TriadError(f"functional {self.name}: image outside the {side} carrier")

    @classmethod
    def from_mapping(cls, name: str, triad: Triad, mapping: Mapping[str, str]) -> "Functional":
        pos = [-1] * len(triad.positives)
        neg = [-1] * len(triad.negatives)
        for src, dst in mapping.items():
            a, b = triad.ref(src), triad.ref(dst)
            if a.side is not b.side:
                raise PolarityClash(f"functional {name}: {src} -> {dst} breaks polarity")
            (pos if a.side is P else neg)[a.index] = b.index
        missing = [triad.positives[i] for i, v in enumerate(pos) if v < 0]
        missing += [triad.negatives[i] for i, v in enumerate(neg) if v < 0]
        if missing:
            raise TriadError(f"functional {name}: no image for {', '.join(missing)}")
        return cls(name, triad, tuple(pos), tuple(neg))

    @classmethod
    def identity(cls, triad: Triad, name: str = "identity") -> "Functional":
        return cls(name, triad, tuple(range(len(triad.positives))), tuple(range(len(triad.negatives))))

    def table(self, side: Polarity) -> tuple[int, ...]:
        return self.pos_map if side is P else self.neg_map

    def __call__(self, a: TermRef) -> TermRef:
        self.triad.check_ref(a)
        return TermRef(a.side, self.table(a.side)[a.index])

    def mapping(self) -> dict[str, str]:
        t = self.triad
        out = {t.positives[i]: t.positives[j] for i, j in enumerate(self.pos_map)}
        out.update({t.negatives[i]: t.negatives[j] for i, j in enumerate(self.neg_map)})
        return out


@dataclass
class FunctionalCollection:
    triad: Triad
    functionals: list[Functional] = field(default_factory=list)

    def __post_init__(self):
        names = [f.name for f in self.functionals]
        if len(set(names)) != len(names):
            raise TriadError("functional names in a collection must be distinct")
        for f in self.functionals:
            if f.triad != self.triad:
                raise TriadError(f"functional {f.name} is over a different triad")

    def __getitem__(self, name: str) -> Functional:
        for f in self.functionals:
            if f.name == name:
                return f
        raise KeyError(name)

    def __iter__(self):
        return iter(self.functionals)

    def __len__(self):
        return len(self.functionals)


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional counterexample.

    ``holds`` is definite when ``regime`` is exhaustive or when it is False
    (a witness was found); a sampled True is only "no counterexample seen".
    """

    holds: bool
    witness: Any = None
    regime: str = EXHAUSTIVE

    def __bool__(self):
        return self.holds

    @property
    def definite(self) -> bool:
        return self.regime == EXHAUSTIVE or not self.holds


# -- image / pre-image ---------------------------------------------------------


def image_mask(f: Functional, side: Polarity, bits: int) -> int:
    table = f.table(side)
    out = 0
    for i in iter_bits(bits):
        out |= 1 << table[i]
    return out


def preimage_mask(f: Functional, side: Polarity, bits: int) -> int:
    out = 0
    for i, j in enumerate(f.table(side)):
        if bits >> j & 1:
            out |= 1 << i
    return out


def _own(f: Functional, x: TermSet) -> None:
    if x.triad is not f.triad and x.triad != f.triad:
        raise TriadError("term set is not over the functional's triad")


def image(f: Functional, x: TermSet) -> TermSet:
    _own(f, x)
    return TermSet(f.triad, x.side, image_mask(f, x.side, x.bits))


def preimage(f: Functional, x: TermSet) -> TermSet:
    _own(f, x)
    return TermSet(f.triad, x.side, preimage_mask(f, x.side, x.bits))


# -- continuity ----------------------------------------------------------------


def is_continuous(f: Functional, side, family: ClosedSetFamily | None = None) -> Verdict:
    """Pre-images of closed sets are closed.

    Only the closed sets need checking, since X⊥⊥ ranges exactly over them.
    The witness is the first offending closed set in lectic order.
    """
    side = Polarity.parse(side)
    t = f.triad
    if family is None:
        family = enumerate_closed_sets(t, side)
    for m in family.masks:
        pre = preimage_mask(f, side, m)
        if closure_mask(t, side, pre) != pre:
            return Verdict(False, t.from_mask(side, m))
    return Verdict(True)


def is_continuous_naive(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Continuity straight from the definition, quantifying over every X."""
    side = Polarity.parse(side)
    t = f.triad
    masks, regime = subset_scan(t.size(side), budget, salt=101)
    for X in masks:
        pre = preimage_mask(f, side, closure_mask(t, side, X))
        if closure_mask(t, side, pre) != pre:
            return Verdict(False, t.from_mask(side, X), regime)
    return Verdict(True, None, regime)


def preimage_closure_inclusion(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """For every X: closure of f←(X) is inside f←(closure of X)."""
    side = Polarity.parse(side)
    t = f.triad
    masks, regime = subset_scan(t.size(side), budget, salt=103)
    for X in masks:
        lhs = closure_mask(t, side, preimage_mask(f, side, X))
        rhs = preimage_mask(f, side, closure_mask(t, side, X))
        if lhs & ~rhs:
            return Verdict(False, t.from_mask(side, X), regime)
    return Verdict(True, None, regime)


def image_closure_inclusion(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """For every X: f→(closure of X) is inside the closure of f→(X)."""
    side = Polarity.parse(side)
    t = f.triad
    masks, regime = subset_scan(t.size(side), budget, salt=107)
    for X in masks:
        lhs = image_mask(f, side, closure_mask(t, side, X))
        rhs = closure_mask(t, side, image_mask(f, side, X))
        if lhs & ~rhs:
            return Verdict(False, t.from_mask(side, X), regime)
    return Verdict(True, None, regime)


def preserves_specialization(f: Functional, side) -> Verdict:
    side = Polarity.parse(side)
    t = f.triad
    singles = t.orth_masks(side)
    table = f.table(side)
    n = t.size(side)
    for a in range(n):
        for b in range(n):
            if singles[a] & ~singles[b] == 0:
                fa, fb = table[a], table[b]
                if singles[fa] & ~singles[fb]:
                    return Verdict(False, (TermRef(side, a), TermRef(side, b)))
    return Verdict(True)


def preserves_sem_consequence(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """X ⊴ b implies f→(X) ⊴ f(b), for all X and b on ``side``."""
    side = Polarity.parse(side)
    t = f.triad
    table = f.table(side)
    masks, regime = subset_scan(t.size(side), budget, salt=109)
    for X in masks:
        cx = consequence_mask(t, side, X)
        cfx = consequence_mask(t, side, image_mask(f, side, X))
        for b in iter_bits(cx):
            if not cfx >> table[b] & 1:
                return Verdict(False, (t.from_mask(side, X), TermRef(side, b)), regime)
    return Verdict(True, None, regime)


# -- regularity ----------------------------------------------------------------


def _orth(t: Triad, p: int, n: int) -> bool:
    return bool(t.orth_masks(P)[p] >> n & 1)


def is_semiregular(f: Functional, side) -> Verdict:
    """f(a) ⊥ b implies a ⊥ f(b), for a on ``side`` and b opposite."""
    side = Polarity.parse(side)
    t = f.triad
    ta, tb = f.table(side), f.table(side.opposite)
    for a in range(t.size(side)):
        for b in range(t.size(side.opposite)):
            if side is P:
                lhs, rhs = _orth(t, ta[a], b), _orth(t, a, tb[b])
            else:
                lhs, rhs = _orth(t, b, ta[a]), _orth(t, tb[b], a)
            if lhs and not rhs:
                return Verdict(False, (TermRef(side, a), TermRef(side.opposite, b)))
    return Verdict(True)


def is_forward_backward(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """For every X on ``side``: (f→X)⊥ is inside f←(X⊥)."""
    side = Polarity.parse(side)
    t = f.triad
    masks, regime = subset_scan(t.size(side), budget, salt=113)
    for X in masks:
        lhs = orth_mask(t, side, image_mask(f, side, X))
        rhs = preimage_mask(f, side.opposite, orth_mask(t, side, X))
        if lhs & ~rhs:
            return Verdict(False, t.from_mask(side, X), regime)
    return Verdict(True, None, regime)


def is_backward_forward(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """For every X on ``side``: f←(X⊥) is inside (f→X)⊥."""
    side = Polarity.parse(side)
    t = f.triad
    masks, regime = subset_scan(t.size(side), budget, salt=127)
    for X in masks:
        lhs = preimage_mask(f, side.opposite, orth_mask(t, side, X))
        rhs = orth_mask(t, side, image_mask(f, side, X))
        if lhs & ~rhs:
            return Verdict(False, t.from_mask(side, X), regime)
    return Verdict(True, None, regime)


def is_good(f: Functional, side, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    fb = is_forward_backward(f, side, budget)
    if not fb:
        return fb
    bf = is_backward_forward(f, side, budget)
    if not bf:
        return bf
    return Verdict(True, None, SAMPLED if SAMPLED in (fb.regime, bf.regime) else EXHAUSTIVE)


def check_regular_tables(
    t: Triad, pos_map: Sequence[int], neg_map: Sequence[int]
) -> Verdict:
    """The regularity biconditional over every (p, n) whose images are known.

    A negative entry in either table marks an input without an image; pairs
    touching it are skipped.  The witness is ``(p, n, direction)`` where
    ``"→"`` means f(p) ⊥ n but not p ⊥ f(n) and ``"←"`` the converse.
    """
    rows = t.orth_masks(P)
    for p, fp in enumerate(pos_map):
        if fp < 0:
            continue
        for n, fn in enumerate(neg_map):
            if fn < 0:
                continue
            lhs = bool(rows[fp] >> n & 1)
            rhs = bool(rows[p] >> fn & 1)
            if lhs != rhs:
                return Verdict(False, (TermRef(P, p), TermRef(N, n), "→" if lhs else "←"))
    return Verdict(True)


def is_regular(f: Functional) -> Verdict:
    return check_regular_tables(f.triad, f.pos_map, f.neg_map)


# -- classification ------------------------------------------------------------

SIDE_FLAGS = (
    "continuous",
    "preserves_specialization",
    "preserves_sem_consequence",
    "semiregular",
    "forward_backward",
    "backward_forward",
    "good",
)


@dataclass
class ClassificationReport:
    name: str
    sides: dict[Polarity, dict[str, Verdict]]
    regular: Verdict
    regime: str
    notes: list[str] = field(default_factory=list)

    def flag(self, side, name: str) -> bool:
        return self.sides[Polarity.parse(side)][name].holds

    def witness(self, side, name: str):
        return self.sides[Polarity.parse(side)][name].witness


def _equivalent(theorem: str, verdicts: Sequence[Verdict], notes: list[str]) -> None:
    if any(v.definite and v.holds for v in verdicts) and any(not v.holds for v in verdicts):
        raise ConsistencyError(f"violated: {theorem}")
    if len({v.holds for v in verdicts}) > 1:
        notes.append(f"{theorem}: consistent on sampled inputs only")


def _implies(theorem: str, premise: Verdict, conclusion: Verdict, notes: list[str]) -> None:
    if premise.holds and not conclusion.holds:
        if premise.definite:
            raise ConsistencyError(f"violated: {theorem}")
        notes.append(f"{theorem}: consistent on sampled inputs only")


def classify(f: Functional, budget: Budget = DEFAULT_BUDGET) -> ClassificationReport:
    """Fill every flag of ``f`` on both sides and cross-check the known
    equivalences between them; a disagreement raises ConsistencyError."""
    t = f.triad
    sides: dict[Polarity, dict[str, Verdict]] = {}
    extra: dict[Polarity, list[Verdict]] = {}
    for side in (P, N):
        fam = enumerate_closed_sets(t, side, max_carrier=budget.max_carrier)
        cont = is_continuous(f, side, fam)
        fb = is_forward_backward(f, side, budget)
        bf = is_backward_forward(f, side, budget)
        if fb and bf:
            good = Verdict(True, None, SAMPLED if SAMPLED in (fb.regime, bf.regime) else EXHAUSTIVE)
        else:
            good = fb if not fb else bf
        sides[side] = {
            "continuous": cont,
            "preserves_specialization": preserves_specialization(f, side),
            "preserves_sem_consequence": preserves_sem_consequence(f, side, budget),
            "semiregular": is_semiregular(f, side),
            "forward_backward": fb,
            "backward_forward": bf,
            "good": good,
        }
        extra[side] = [
            preimage_closure_inclusion(f, side, budget),
            image_closure_inclusion(f, side, budget),
        ]
    regular = is_regular(f)
    notes: list[str] = []
    for side in (P, N):
        s, o = sides[side], sides[side.opposite]
        _equivalent(
            f"equivalent characterizations of continuity in {side}",
            [s["continuous"], *extra[side], s["preserves_sem_consequence"]],
            notes,
        )
        _equivalent(
            f"semiregular in {side} iff →← in {side} iff ←→ in {side.opposite}",
            [s["semiregular"], s["forward_backward"], o["backward_forward"]],
            notes,
        )
        _implies(
            f"continuity in {side} implies preservation of specialization",
            s["continuous"],
            s["preserves_specialization"],
            notes,
        )
        _implies(f"regularity implies continuity in {side}", regular, s["continuous"], notes)
        _implies(
            f"regularity implies preservation of semantical consequence in {side}",
            regular,
            s["preserves_sem_consequence"],
            notes,
        )
    _equivalent(
        "regular iff good in P iff good in N",
        [regular, sides[P]["good"], sides[N]["good"]],
        notes,
    )
    semi_both = sides[P]["semiregular"].holds and sides[N]["semiregular"].holds
    if semi_both != regular.holds:
        raise ConsistencyError("violated: regular iff semiregular on both sides")
    regimes = {v.regime for d in sides.values() for v in d.values()}
    regime = SAMPLED if SAMPLED in regimes else EXHAUSTIVE
    return ClassificationReport(f.name, sides, regular, regime, notes)
