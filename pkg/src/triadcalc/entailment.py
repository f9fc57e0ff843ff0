"""Semantical consequence as an entailment system, and exhaustive checks of
its structural rules."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PolarityClash
from ._bits import (
    DEFAULT_BUDGET,
    EXHAUSTIVE,
    Budget,
    iter_bits,
    lowest_index,
    subset_scan,
    submasks,
)
from .triad import (
    Polarity,
    TermRef,
    TermSet,
    Triad,
    closure_mask,
    consequence_mask,
    orthogonal_terms,
)

LAWS = ("Axiom", "Cut", "Axiom0", "Weakening", "Cut0", "Transitivity")

# Below this carrier size, Weakening and Cut enumerate every (U, V) pair.
# Above it they are checked through equivalent reductions (see _check_cut).
FULL_PAIR_LIMIT = 8


@dataclass(frozen=True)
class EntailmentInstance:
    """The pair (side of a triad, semantical consequence)."""

    triad: Triad
    side: Polarity

    def entails(self, premises: TermSet, token: TermRef) -> bool:
        if premises.side is not self.side or token.side is not self.side:
            raise PolarityClash("premises and token must lie on the instance side")
        return bool(consequence_mask(self.triad, self.side, premises.bits) >> token.index & 1)

    def consequences(self, premises: TermSet) -> TermSet:
        return TermSet(self.triad, self.side, consequence_mask(self.triad, self.side, premises.bits))


@dataclass
class Violation:
    law: str
    U: tuple[str, ...]
    V: tuple[str, ...] = ()
    u: str | None = None
    v: str | None = None


@dataclass
class EntailmentReport:
    side: Polarity
    regime: str
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed_laws(self) -> set[str]:
        return {v.law for v in self.violations}


class _ConsequenceTable:
    """Lazily memoized ``U -> mask of consequences of U``."""

    def __init__(self, t: Triad, side: Polarity):
        self.t, self.side = t, side
        self._memo: dict[int, int] = {}

    def __call__(self, bits: int) -> int:
        c = self._memo.get(bits)
        if c is None:
            c = self._memo[bits] = consequence_mask(self.t, self.side, bits)
        return c


def verify_entailment_laws(
    t: Triad, side, budget: Budget = DEFAULT_BUDGET, max_violations: int = 20
) -> EntailmentReport:
    """Check Axiom, Cut, Axiom0, Weakening, Cut0 and Transitivity for
    semantical consequence on one side of ``t``.

    Subsets are exhausted when the side has at most ``budget.max_exhaustive``
    terms and sampled otherwise; the report records which regime ran.
    """
    side = Polarity.parse(side)
    n = t.size(side)
    masks, regime = subset_scan(n, budget, salt=17)
    cons = _ConsequenceTable(t, side)
    labels = t.labels(side)
    rep = EntailmentReport(side=side, regime=regime, checked={law: 0 for law in LAWS})

    def names(bits):
        return tuple(labels[i] for i in iter_bits(bits))

    def violate(law, U, V=0, u=None, v=None):
        if len(rep.violations) < max_violations:
            rep.violations.append(
                Violation(
                    law,
                    names(U),
                    names(V),
                    labels[u] if u is not None else None,
                    labels[v] if v is not None else None,
                )
            )

    for i in range(n):
        rep.checked["Axiom0"] += 1
        if not cons(1 << i) >> i & 1:
            violate("Axiom0", 1 << i, u=i)

    full_pairs = regime == EXHAUSTIVE and n <= FULL_PAIR_LIMIT
    rng = budget.rng(23)
    for U in masks:
        cu = cons(U)
        # Axiom: every member of U is a consequence of U
        rep.checked["Axiom"] += 1
        if U & ~cu:
            violate("Axiom", U, u=lowest_index(U & ~cu))

        # Weakening: V ⊆ U and V ⊨ u imply U ⊨ u
        if full_pairs:
            vs = submasks(U)
        else:
            vs = [U & ~(1 << i) for i in iter_bits(U)]
            if regime != EXHAUSTIVE:
                vs.append(U & rng.getrandbits(max(n, 1)))
        for V in vs:
            rep.checked["Weakening"] += 1
            bad = cons(V) & ~cu
            if bad:
                violate("Weakening", U, V, u=lowest_index(bad))

        # Cut: (U ⊨ v for all v in V) and V ⊨ u imply U ⊨ u
        if full_pairs:
            cut_vs = submasks(cu)
        else:
            # with Weakening (monotonicity) checked above, the largest
            # admissible V = cons(U) dominates every smaller one
            cut_vs = [cu]
            if regime != EXHAUSTIVE:
                cut_vs.append(cu & rng.getrandbits(max(n, 1)))
        for V in cut_vs:
            rep.checked["Cut"] += 1
            bad = cons(V) & ~cu
            if bad:
                violate("Cut", U, V, u=lowest_index(bad))

        # Cut0 and Transitivity quantify over v in cons(U)
        for v in iter_bits(cu):
            rep.checked["Cut0"] += 1
            bad = cons(U | 1 << v) & ~cu
            if bad:
                violate("Cut0", U, u=lowest_index(bad), v=v)
            rep.checked["Transitivity"] += 1
            bad = cons(1 << v) & ~cu
            if bad:
                violate("Transitivity", U, u=lowest_index(bad), v=v)
    return rep


def check_universal_consequences(t: Triad, side, budget: Budget = DEFAULT_BUDGET):
    """Every member of closure(∅) is a consequence of every X.

    Returns ``(ok, regime, witness)`` with witness ``(X mask, b index)``.
    """
    side = Polarity.parse(side)
    bottom = closure_mask(t, side, 0)
    masks, regime = subset_scan(t.size(side), budget, salt=29)
    for X in masks:
        bad = bottom & ~consequence_mask(t, side, X)
        if bad:
            return False, regime, (X, lowest_index(bad))
    return True, regime, None


def check_propagation_all(t: Triad, side) -> tuple[bool, tuple | None]:
    """Orthogonality propagation over every quadruple (a, a', b, b')."""
    from .triad import check_orthogonality_propagation

    side = Polarity.parse(side)
    A = t.refs(side)
    B = t.refs(side.opposite)
    for a in A:
        for b in B:
            if not orthogonal_terms(t, a, b):
                continue
            for a2 in A:
                for b2 in B:
                    if not check_orthogonality_propagation(t, a, a2, b, b2):
                        return False, (a, a2, b, b2)
    return True, None
