import pickle

import pytest
from hypothesis import given, settings

from conftest import make_I, triads
from oracle import Ctx
from triadcalc import N, P, Polarity, PolarityClash, TermRef, Triad, TriadError
from triadcalc.triad import (
    check_orthogonality_propagation,
    closure,
    consequences,
    intersection_of_orthogonals,
    is_closed,
    orthogonal_set,
    orthogonal_terms,
    sem_consequence,
    specializes,
    universal_consequences,
)


def S(t, *labels, side=None):
    return t.termset(labels, side)


# -- construction --------------------------------------------------------------------


def test_polarity_opposite_is_involution():
    for p in Polarity:
        assert p.opposite.opposite is p
    assert P.opposite is N


def test_matrix_and_pairs_agree(I):
    assert I.matrix() == [[r == s for s in range(3)] for r in range(3)]
    assert Triad(I.positives, I.negatives, I.matrix()) == I


@pytest.mark.parametrize(
    "pos, neg, orth",
    [
        (["a", "a"], ["b"], []),
        (["a"], ["a"], []),
        (["a"], ["b"], [("a", "zz")]),
        (["a"], ["b"], [[True, False]]),
    ],
)
def test_invalid_triads_rejected(pos, neg, orth):
    with pytest.raises(TriadError):
        Triad(pos, neg, orth)


def test_same_polarity_pair_is_a_clash():
    with pytest.raises(PolarityClash):
        Triad(["a", "c"], ["b"], [("a", "c")])


def test_triad_is_immutable_hashable_and_picklable(I):
    with pytest.raises(AttributeError):
        I.positives = ()
    assert hash(I) == hash(make_I())
    assert pickle.loads(pickle.dumps(I)) == I


def test_empty_sides_are_legal():
    t = Triad([], [], [])
    assert closure(t, t.empty(P)) == t.empty(P)
    t = Triad(["a", "b"], [], [])
    assert orthogonal_set(t, S(t, "a")) == t.empty(N)
    assert closure(t, t.empty(P)) == t.full(P)


# -- term sets ---------------------------------------------------------------------------


def test_termset_operations(I):
    a, b = S(I, "0P", "1P"), S(I, "1P", "2P")
    assert (a | b) == I.full(P)
    assert (a & b).labels() == ["1P"]
    assert (a - b).labels() == ["0P"]
    assert S(I, "1P") <= a and not a <= b
    assert len(a) == 2 and TermRef(P, 0) in a
    assert repr(a) == "{0P,1P}[P]"


def test_termsets_of_different_sides_or_triads_do_not_mix(I):
    with pytest.raises(TriadError):
        S(I, "0P") | S(I, "0N")
    other = Triad(["0P"], ["0N"], [])
    with pytest.raises(TriadError):
        S(I, "0P") <= other.termset(["0P"])
    with pytest.raises(PolarityClash):
        S(I, "0P", "0N")
    with pytest.raises(TriadError):
        I.termset([])


# -- operations on I ---------------------------------------------------------------------


def test_orthogonal_terms_examples(I):
    assert orthogonal_terms(I, I.ref("0P"), I.ref("0N"))
    assert not orthogonal_terms(I, I.ref("0P"), I.ref("1N"))
    assert orthogonal_terms(I, I.ref("0N"), I.ref("0P"))


def test_orthogonal_terms_errors(I):
    with pytest.raises(PolarityClash, match="polarity clash"):
        orthogonal_terms(I, I.ref("0P"), I.ref("1P"))
    with pytest.raises(TriadError):
        orthogonal_terms(I, TermRef(P, 7), I.ref("0N"))


def test_orthogonal_set_examples(I):
    assert orthogonal_set(I, I.empty(P)) == I.full(N)
    assert orthogonal_set(I, S(I, "1P")) == S(I, "1N")
    assert orthogonal_set(I, S(I, "0P", "1P")) == I.empty(N)


def test_closure_examples(I):
    assert closure(I, S(I, "1P")) == S(I, "1P")
    assert closure(I, S(I, "0P", "2P")) == I.full(P)
    assert closure(I, I.empty(N)) == I.empty(N)


def test_is_closed_examples(I):
    assert is_closed(I, S(I, "2P"))
    assert not is_closed(I, S(I, "0N", "1N"))
    assert is_closed(I, I.full(P)) and is_closed(I, I.full(N))


def test_specialization_on_I_is_equality(I):
    for a in I.positives + I.negatives:
        for b in I.positives + I.negatives:
            ra, rb = I.ref(a), I.ref(b)
            if ra.side is rb.side:
                assert specializes(I, ra, rb) == (a == b)
    with pytest.raises(PolarityClash):
        specializes(I, I.ref("0P"), I.ref("0N"))


def test_sem_consequence_examples(I):
    assert sem_consequence(I, S(I, "0P", "2P"), I.ref("1P"))
    assert not sem_consequence(I, S(I, "0P"), I.ref("1P"))
    assert not sem_consequence(I, I.empty(P), I.ref("1P"))
    with pytest.raises(PolarityClash):
        sem_consequence(I, S(I, "0P"), I.ref("1N"))


def test_sem_consequence_on_I_singleton_or_two_elements(I):
    # X ⊴ b iff X = {b} or |X| >= 2
    for bits in range(8):
        X = I.from_mask(P, bits)
        for b in I.positives:
            expected = X.labels() == [b] or len(X) >= 2
            assert sem_consequence(I, X, I.ref(b)) == expected


def test_consequences_examples(I):
    assert consequences(I, S(I, "1N")) == S(I, "1N")
    assert consequences(I, S(I, "0N", "2N")) == I.full(N)


def test_universal_consequences(I):
    assert universal_consequences(I, P) == I.empty(P)
    full = Triad(["a", "b"], ["c"], [[True], [True]])
    assert universal_consequences(full, P) == full.full(P)
    assert universal_consequences(full, N) == full.full(N)


def test_orthogonality_propagation_examples(I):
    r = I.ref
    assert check_orthogonality_propagation(I, r("0P"), r("0P"), r("0N"), r("0N"))
    assert check_orthogonality_propagation(I, r("0P"), r("1P"), r("0N"), r("0N"))


# -- properties against the set-based oracle ------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(triads(max_side=5))
def test_closure_matches_oracle(t):
    ctx = Ctx.of(t)
    for side in (P, N):
        is_pos = side is P
        for bits in range(1 << t.size(side)):
            X = t.from_mask(side, bits)
            xs = frozenset(X.labels())
            assert frozenset(orthogonal_set(t, X).labels()) == ctx.perp(xs, is_pos)
            assert frozenset(closure(t, X).labels()) == ctx.close(xs, is_pos)
            assert frozenset(consequences(t, X).labels()) == ctx.close(xs, is_pos)


@settings(max_examples=150, deadline=None)
@given(triads(max_side=5))
def test_specialization_and_consequence_match_oracle(t):
    ctx = Ctx.of(t)
    for side in (P, N):
        is_pos = side is P
        labels = t.labels(side)
        for a in labels:
            for b in labels:
                assert specializes(t, t.ref(a), t.ref(b)) == ctx.specializes(a, b, is_pos)
        for bits in range(1 << len(labels)):
            X = t.from_mask(side, bits)
            for b in labels:
                assert sem_consequence(t, X, t.ref(b)) == ctx.sem(X.labels(), b, is_pos)


@settings(max_examples=150, deadline=None)
@given(triads())
def test_intersection_lemma(t):
    for side in (P, N):
        for bits in range(1 << t.size(side)):
            X = t.from_mask(side, bits)
            assert orthogonal_set(t, X).bits == intersection_of_orthogonals(t, side, bits)


@settings(max_examples=100, deadline=None)
@given(triads(max_side=4))
def test_propagation_holds_for_every_quadruple(t):
    for a in t.refs(P):
        for a2 in t.refs(P):
            for b in t.refs(N):
                for b2 in t.refs(N):
                    assert check_orthogonality_propagation(t, a, a2, b, b2)
