"""Brute-force law suites over triads, functionals, ludics sub-triads and games.

Every suite returns a list of :class:`Check` rows; nothing here raises on a
failed law, so callers can render a full pass/fail table.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import (
    DEFAULT_BUDGET,
    EXHAUSTIVE,
    SAMPLED,
    Budget,
    iter_bits,
    lectic_subsets,
    subset_scan,
    submasks,
)
from . import functionals as fc
from . import ludics as lx
from .entailment import (
    FULL_PAIR_LIMIT,
    check_propagation_all,
    check_universal_consequences,
    verify_entailment_laws,
)
from .games import BooleanGame, all_map_pairs, game_to_triad, validate_linear_map
from .lattice import enumerate_closed_sets
from .triad import (
    N,
    P,
    Polarity,
    Triad,
    closure_mask,
    consequence_mask,
    intersection_of_orthogonals,
    orth_mask,
)


@dataclass
class Check:
    name: str
    passed: bool
    regime: str = EXHAUSTIVE
    checked: int = 0
    detail: str = ""
    side: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = f" [{self.side}]" if self.side else ""
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name}{where}  ({self.regime}, {self.checked} cases){extra}"


def _fmt(t: Triad, side: Polarity, bits: int) -> str:
    labels = t.labels(side)
    return "{" + ",".join(labels[i] for i in iter_bits(bits)) + "}"


class _Counter:
    """Accumulates case counts and the first failure for one law."""

    def __init__(self, name, side, regime):
        self.name, self.side, self.regime = name, side, regime
        self.checked = 0
        self.detail = None

    def case(self, ok: bool, detail=None):
        self.checked += 1
        if not ok and self.detail is None:
            self.detail = detail() if callable(detail) else (detail or "counterexample")

    def result(self) -> Check:
        return Check(self.name, self.detail is None, self.regime, self.checked, self.detail or "", str(self.side))


# -- triad laws -------------------------------------------------------------------


def _pairs_subset(masks, n, regime):
    """(X, Y) with X ⊆ Y: every pair for small exhaustive carriers, else
    one-element extensions (monotonicity along them implies it everywhere)."""
    full = regime == EXHAUSTIVE and n <= FULL_PAIR_LIMIT
    for Y in masks:
        if full:
            for X in submasks(Y):
                yield X, Y
        else:
            for i in iter_bits(Y):
                yield Y & ~(1 << i), Y


def triad_checks(t: Triad, budget: Budget = DEFAULT_BUDGET) -> list[Check]:
    rows: list[Check] = []
    for side in (P, N):
        rows.extend(_side_checks(t, side, budget))
    return rows


def _side_checks(t: Triad, side: Polarity, budget: Budget) -> list[Check]:
    n = t.size(side)
    opp = side.opposite
    masks, regime = subset_scan(n, budget, salt=3)
    cl = {X: closure_mask(t, side, X) for X in masks}

    def close(X):
        c = cl.get(X)
        if c is None:
            c = cl[X] = closure_mask(t, side, X)
        return c

    def orth(X):
        return orth_mask(t, side, X)

    def f(X):
        return _fmt(t, side, X)

    c = {k: _Counter(name, side, regime) for k, name in (
        (1, "closure: extensive, X ⊆ X⊥⊥"),
        (2, "closure: ⊥ antitone, X ⊆ Y implies Y⊥ ⊆ X⊥"),
        (3, "closure: monotone, X ⊆ Y implies X⊥⊥ ⊆ Y⊥⊥"),
        (4, "closure: triple ⊥, X⊥ = X⊥⊥⊥"),
        (5, "closure: idempotent, X⊥⊥ = X⊥⊥⊥⊥"),
        (6, "closure: X⊥ is closed"),
        (7, "closure: X⊥⊥ is closed"),
        (8, "closure: X closed iff X = Z⊥⊥ for some Z"),
        ("lemma", "orthogonal set: X⊥ = ∩ {a}⊥"),
        ("cons", "consequences(X) = X⊥⊥"),
    )}
    for X in masks:
        cx = close(X)
        ox = orth(X)
        c[1].case(X & ~cx == 0, lambda: f(X))
        c[4].case(ox == orth(cx), lambda: f(X))
        c[5].case(cx == close(cx), lambda: f(X))
        c[6].case(closure_mask(t, opp, ox) == ox, lambda: f(X))
        c[7].case(close(cx) == cx, lambda: f(X))
        # constructive witness Z = X⊥⊥
        c[8].case((close(X) == X) == (close(cx) == X), lambda: f(X))
        c["lemma"].case(ox == intersection_of_orthogonals(t, side, X), lambda: f(X))
        c["cons"].case(consequence_mask(t, side, X) == cx, lambda: f(X))
    for X, Y in _pairs_subset(masks, n, regime):
        c[2].case(orth(Y) & ~orth(X) == 0, lambda: f"{f(X)} ⊆ {f(Y)}")
        c[3].case(close(X) & ~close(Y) == 0, lambda: f"{f(X)} ⊆ {f(Y)}")
    if regime == EXHAUSTIVE:
        # the brute-force image of closure must be exactly the closed sets
        images = set(cl.values())
        for X in masks:
            c[8].case((close(X) == X) == (X in images), lambda: f(X))
    rows = [c[k].result() for k in (1, 2, 3, 4, 5, 6, 7, 8)]

    # pointwise orthogonality over every (a, b)
    c910 = _Counter("closure: a ⊥ b iff a ∈ {b}⊥ iff b ∈ {a}⊥", side, EXHAUSTIVE)
    rows_p = t.orth_masks(P)
    for a in range(n):
        for b in range(t.size(opp)):
            p, q = (a, b) if side is P else (b, a)
            direct = bool(rows_p[p] >> q & 1)
            in_b = bool(orth_mask(t, opp, 1 << b) >> a & 1)
            in_a = bool(orth_mask(t, side, 1 << a) >> b & 1)
            c910.case(direct == in_b == in_a, lambda: f"({t.labels(side)[a]}, {t.labels(opp)[b]})")
    rows.append(c910.result())
    rows.append(c["lemma"].result())

    # specialization: three-way equivalence, singleton ⊴, preorder
    spec3 = _Counter("specialization: a ◁ b iff b ∈ {a}⊥⊥ iff ∀X (a ∈ X⊥⊥ ⇒ b ∈ X⊥⊥)", side, regime)
    spec_sc = _Counter("specialization: a ◁ b iff {a} ⊴ b", side, EXHAUSTIVE)
    pre = _Counter("specialization is a preorder", side, EXHAUSTIVE)
    singles = t.orth_masks(side)
    closures = [close(X) for X in masks]
    spc = [[singles[a] & ~singles[b] == 0 for b in range(n)] for a in range(n)]
    for a in range(n):
        abit = 1 << a
        # X = {a} is the decisive instance; keep it even when X is sampled
        with_a = [cx for cx in closures if cx & abit] + [close(abit)]
        for b in range(n):
            bbit = 1 << b
            ii = bool(close(abit) & bbit)
            iii = all(cx & bbit for cx in with_a)
            lab = f"({t.labels(side)[a]}, {t.labels(side)[b]})"
            spec3.case(spc[a][b] == ii == iii, lab)
            spec_sc.case(spc[a][b] == bool(consequence_mask(t, side, abit) & bbit), lab)
        pre.case(spc[a][a], t.labels(side)[a])
        for b in range(n):
            for d in range(n):
                if spc[a][b] and spc[b][d]:
                    pre.case(spc[a][d], f"({t.labels(side)[a]}, {t.labels(side)[d]})")
    rows += [spec3.result(), spec_sc.result(), pre.result()]

    # a ⊥ b iff {b}⊥ ⊴ a iff {a}⊥ ⊴' b
    o3 = _Counter("orthogonality: a ⊥ b iff {b}⊥ ⊴ a iff {a}⊥ ⊴ b", side, EXHAUSTIVE)
    for a in range(n):
        oa = orth_mask(t, side, 1 << a)
        for b in range(t.size(opp)):
            ob = orth_mask(t, opp, 1 << b)
            p, q = (a, b) if side is P else (b, a)
            one = bool(rows_p[p] >> q & 1)
            two = bool(consequence_mask(t, side, ob) >> a & 1)
            three = bool(consequence_mask(t, opp, oa) >> b & 1)
            o3.case(one == two == three, lambda: f"({t.labels(side)[a]}, {t.labels(opp)[b]})")
    rows += [o3.result(), c["cons"].result()]
    return rows


# -- entailment -------------------------------------------------------------------


def entailment_checks(t: Triad, budget: Budget = DEFAULT_BUDGET) -> list[Check]:
    rows = []
    for side in (P, N):
        rep = verify_entailment_laws(t, side, budget)
        failed = {}
        for v in rep.violations:
            failed.setdefault(v.law, v)
        for law, count in rep.checked.items():
            v = failed.get(law)
            detail = f"U={v.U} V={v.V} u={v.u} v={v.v}" if v else ""
            rows.append(Check(f"entailment: {law}", v is None, rep.regime, count, detail, str(side)))
        ok, regime, wit = check_universal_consequences(t, side, budget)
        detail = f"X={_fmt(t, side, wit[0])} b={t.labels(side)[wit[1]]}" if wit else ""
        rows.append(Check("entailment: (∅)⊥⊥ members follow from every X", ok, regime,
                          1 << min(t.size(side), 62) if regime == EXHAUSTIVE else budget.sample_count,
                          detail, str(side)))
        ok, wit = check_propagation_all(t, side)
        detail = "" if ok else " ".join(t.label(r) for r in wit)
        m, k = t.size(side), t.size(side.opposite)
        rows.append(Check("entailment: orthogonality propagates along ⊴", ok, EXHAUSTIVE,
                          m * m * k * k, detail, str(side)))
    return rows


# -- closed-set families --------------------------------------------------------------


def lattice_checks(t: Triad, budget: Budget = DEFAULT_BUDGET) -> list[Check]:
    rows = []
    for side in (P, N):
        n = t.size(side)
        if n > budget.max_carrier:
            rows.append(Check("closed sets: enumeration", False, SAMPLED, 0, "capacity exceeded", str(side)))
            continue
        fam = enumerate_closed_sets(t, side)
        ms = set(fam.masks)
        nc = enumerate_closed_sets(t, side, method="next-closure")
        rows.append(Check("closed sets: scan and next-closure agree", fam.masks == nc.masks,
                          EXHAUSTIVE, len(fam), "", str(side)))
        if n <= budget.max_exhaustive:
            image = {closure_mask(t, side, X) for X in lectic_subsets(n)}
            rows.append(Check("closed sets: family is the image of closure", image == ms,
                              EXHAUSTIVE, 1 << n, "", str(side)))
        meet_ok = all((x & y) in ms for x in ms for y in ms)
        rows.append(Check("closed sets: closed under intersection", meet_ok, EXHAUSTIVE,
                          len(ms) ** 2, "", str(side)))
        bottom = closure_mask(t, side, 0)
        rows.append(Check("closed sets: full side is a member and every member contains (∅)⊥⊥",
                          t.full_mask(side) in ms and all(bottom & ~m == 0 for m in ms),
                          EXHAUSTIVE, len(ms), "", str(side)))
    return rows


# -- functionals ---------------------------------------------------------------------


def _equiv(verdicts: Sequence[fc.Verdict]) -> bool:
    """No definite True alongside a False."""
    return not (any(v.definite and v.holds for v in verdicts) and any(not v.holds for v in verdicts))


def _imp(premise: fc.Verdict, conclusion: fc.Verdict) -> bool:
    return not (premise.holds and premise.definite and not conclusion.holds)


def _regime(*vs) -> str:
    return SAMPLED if any(v.regime == SAMPLED for v in vs) else EXHAUSTIVE


def functional_verdicts(f: fc.Functional, budget: Budget = DEFAULT_BUDGET) -> dict:
    """Every per-side and global property of ``f`` computed independently."""
    out = {"regular": fc.is_regular(f)}
    for side in (P, N):
        out[side] = {
            "continuous": fc.is_continuous(f, side),
            "continuous_naive": fc.is_continuous_naive(f, side, budget),
            "preimage_closure": fc.preimage_closure_inclusion(f, side, budget),
            "image_closure": fc.image_closure_inclusion(f, side, budget),
            "preserves_sem_consequence": fc.preserves_sem_consequence(f, side, budget),
            "preserves_specialization": fc.preserves_specialization(f, side),
            "semiregular": fc.is_semiregular(f, side),
            "forward_backward": fc.is_forward_backward(f, side, budget),
            "backward_forward": fc.is_backward_forward(f, side, budget),
            "good": fc.is_good(f, side, budget),
        }
    return out


def functional_checks(f: fc.Functional, budget: Budget = DEFAULT_BUDGET, verdicts=None) -> list[Check]:
    t = f.triad
    v = verdicts or functional_verdicts(f, budget)
    rows = []
    for side in (P, N):
        n = t.size(side)
        masks, regime = subset_scan(n, budget, salt=5)
        img = _Counter("image/pre-image: monotone, f→(f←(X)) ⊆ X, X ⊆ f←(f→(X))", side, regime)
        for X in masks:
            fx = fc.image_mask(f, side, X)
            bx = fc.preimage_mask(f, side, X)
            img.case(fc.image_mask(f, side, bx) & ~X == 0, lambda: _fmt(t, side, X))
            img.case(X & ~fc.preimage_mask(f, side, fx) == 0, lambda: _fmt(t, side, X))
        for X, Y in _pairs_subset(masks, n, regime):
            img.case(fc.image_mask(f, side, X) & ~fc.image_mask(f, side, Y) == 0, "image not monotone")
            img.case(fc.preimage_mask(f, side, X) & ~fc.preimage_mask(f, side, Y) == 0, "pre-image not monotone")
        rows.append(img.result())
        single = all(fc.image_mask(f, side, 1 << a) == 1 << f.table(side)[a] for a in range(n))
        rows.append(Check("image of {a} is {f(a)}", single, EXHAUSTIVE, n, "", str(side)))

        s, o = v[side], v[side.opposite]
        four = [s["continuous"], s["preimage_closure"], s["image_closure"], s["preserves_sem_consequence"]]
        rows.append(Check("continuity: four characterizations agree", _equiv(four), _regime(*four),
                          4, _flags(four), str(side)))
        pair = [s["continuous"], s["continuous_naive"]]
        rows.append(Check("continuity: closed-set scan equals the definition", _equiv(pair),
                          _regime(*pair), 2, _flags(pair), str(side)))
        three = [s["semiregular"], s["forward_backward"], o["backward_forward"]]
        rows.append(Check(f"semiregular in {side} iff →← in {side} iff ←→ in {side.opposite}",
                          _equiv(three), _regime(*three), 3, _flags(three), str(side)))
        rows.append(Check("continuity implies preservation of ◁",
                          _imp(s["continuous"], s["preserves_specialization"]), EXHAUSTIVE, 1, "", str(side)))
        rows.append(Check("regular implies continuous and preserves ⊴",
                          _imp(v["regular"], s["continuous"]) and _imp(v["regular"], s["preserves_sem_consequence"]),
                          _regime(s["continuous"], s["preserves_sem_consequence"]), 1, "", str(side)))
    reg = [v["regular"], v[P]["good"], v[N]["good"]]
    rows.append(Check("regular iff good in P iff good in N", _equiv(reg), _regime(*reg), 3, _flags(reg)))
    semi = v[P]["semiregular"].holds and v[N]["semiregular"].holds
    rows.append(Check("regular iff semiregular in P and in N", semi == v["regular"].holds, EXHAUSTIVE, 1))
    return rows


def _flags(vs) -> str:
    return "values=" + "".join("T" if x.holds else "F" for x in vs)


# -- ludics -----------------------------------------------------------------------------


def ludics_checks(
    sig: lx.Signature,
    max_nodes: int,
    functionals: Iterable[lx.LudicsFunctional] | None = None,
    budget: Budget = DEFAULT_BUDGET,
) -> list[Check]:
    rows: list[Check] = []
    world = lx.build_world(sig, max_nodes)
    t = world.triad
    if functionals is None:
        functionals = lx.enumerate_functionals(sig, max_nodes)
    functionals = list(functionals)

    for pol, designs in ((P, world.positives), (N, world.negatives)):
        texts = [str(d) for d in designs]
        rows.append(Check("ludics: enumeration has no duplicates", len(set(texts)) == len(texts),
                          EXHAUSTIVE, len(texts), "", str(pol)))
        rt = _Counter("ludics: print/parse round trip", pol, EXHAUSTIVE)
        for d in designs:
            rt.case(lx.parse_design(str(d), sig) == d, str(d))
        rows.append(rt.result())

    norm = _Counter("ludics: p[n/x0] normalizes to omega or daimon within size(p[n/x0]) steps", "", EXHAUSTIVE)
    for p in world.positives:
        for n in world.negatives:
            raw = lx.substitute(p, n)
            try:
                out, steps = lx.normalize_with_steps(raw)
                norm.case(isinstance(out, (lx.Omega, lx.Daimon)) and steps <= lx.size(raw), f"{p} / {n}")
            except Exception as exc:  # fuel or design errors are failures here
                norm.case(False, f"{p} / {n}: {exc}")
    rows.append(norm.result())

    empty_n = closure_mask(t, N, 0) == 0
    rows.append(Check("ludics: ∅ is closed on the negative side", empty_n, EXHAUSTIVE, 1, "", "N"))
    omega = world.index_of(lx.OMEGA)
    fam = enumerate_closed_sets(t, P, max_carrier=budget.max_carrier)
    omega_ok = all(m == t.full_mask(P) for m in fam.masks if m >> omega & 1)
    rows.append(Check("ludics: the only closed positive set containing omega is the full side",
                      omega_ok, EXHAUSTIVE, len(fam), "", "P"))

    assoc = _Counter("ludics: g(p) ⊥ n iff p ⊥ g(n) (associativity)", "", EXHAUSTIVE)
    wellformed = _Counter("ludics: functional images are linear and cut-free", "", EXHAUSTIVE)
    regular = _Counter("ludics: lifted functionals are regular on in-carrier inputs", "", EXHAUSTIVE)
    excluded = 0
    lifted_total = []
    for g in functionals:
        images_p = [lx.apply_functional(g, p) for p in world.positives]
        images_n = [lx.apply_functional(g, n) for n in world.negatives]
        for d in images_p:
            wellformed.case(_valid(d, sig, ("x0",)), lambda: f"{g} -> {d}")
        for d in images_n:
            wellformed.case(_valid(d, sig, ()), lambda: f"{g} -> {d}")
        orth_gp = [[lx.orthogonal_designs(gp, n) for n in world.negatives] for gp in images_p]
        for i, p in enumerate(world.positives):
            for j, n in enumerate(world.negatives):
                assoc.case(orth_gp[i][j] == lx.orthogonal_designs(p, images_n[j]), lambda: f"p={p} g={g} n={n}")
        lifted = lx.LiftedFunctional(
            g,
            tuple(world.index_of(d) for d in images_p),
            tuple(world.index_of(d) for d in images_n),
        )
        excluded += lifted.excluded
        verdict = fc.check_regular_tables(t, lifted.pos_map, lifted.neg_map)
        regular.case(bool(verdict), lambda: f"{g}: {verdict.witness}")
        if lifted.total:
            lifted_total.append(fc.Functional(str(g), t, lifted.pos_map, lifted.neg_map))
    rows += [wellformed.result(), assoc.result()]
    r = regular.result()
    r.detail = (r.detail + "  " if r.detail else "") + f"excluded inputs: {excluded}"
    rows.append(r)

    # consequences of regularity, on every functional whose table is total
    cons = _Counter("ludics: total lifted functionals are continuous and preserve ⊴ and ◁", "", EXHAUSTIVE)
    for f in lifted_total:
        for side in (P, N):
            cont = fc.is_continuous(f, side)
            sem = fc.preserves_sem_consequence(f, side, budget)
            spc_ok = fc.preserves_specialization(f, side)
            cons.regime = _regime(sem) if cons.regime == EXHAUSTIVE else cons.regime
            cons.case(bool(cont) and bool(sem) and bool(spc_ok), f"{f.name} [{side}]")
    rows.append(cons.result())
    for row in entailment_checks(t, budget):
        if row.name.startswith("entailment: ") and row.name[12:] in ("Axiom", "Cut"):
            row.name = "ludics sub-triad " + row.name
            rows.append(row)
    return rows


def _valid(d, sig, free) -> bool:
    try:
        lx.validate(d, sig, free)
        return True
    except Exception:
        return False


# -- games ----------------------------------------------------------------------------


def game_checks(games: Iterable[BooleanGame], max_pairs: int = 200_000) -> list[Check]:
    lifted = _Counter("games: every linear map lifts to a regular functional", "", EXHAUSTIVE)
    agree = _Counter("games: adjunction holds iff the lifted table is regular", "", EXHAUSTIVE)
    n_maps = 0
    for g in games:
        t = game_to_triad(g)
        p, o = len(g.strategies), len(g.costrategies)
        if p ** p * o ** o > max_pairs:
            agree.regime = lifted.regime = SAMPLED
            continue
        for m in all_map_pairs(g):
            valid = validate_linear_map(g, m)
            reg = fc.check_regular_tables(t, m.on_strategies, m.on_costrategies)
            agree.case(valid.holds == reg.holds, lambda: f"{g.relation} {m}")
            if valid:
                n_maps += 1
                lifted.case(reg.holds, lambda: f"{g.relation} {m}")
    row = lifted.result()
    row.detail = (row.detail + "  " if row.detail else "") + f"linear maps: {n_maps}"
    return [row, agree.result()]


def render(rows: Sequence[Check], fmt: str = "text") -> str:
    if fmt == "tsv":
        lines = ["status\tcheck\tside\tregime\tcases\tdetail"]
        lines += [
            f"{'PASS' if r.passed else 'FAIL'}\t{r.name}\t{r.side}\t{r.regime}\t{r.checked}\t{r.detail}"
            for r in rows
        ]
    else:
        lines = [r.line() for r in rows]
    return "\n".join(lines) + "\n"
