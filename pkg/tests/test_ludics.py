import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triadcalc import CapacityError, DesignError, FuelExceeded, ParseError
from triadcalc import ludics as lx
from triadcalc.triad import N, P, closure, is_closed, universal_consequences

AB = lx.Signature.parse("a/0,b/1")
A0 = lx.Signature.parse("a/0")


def parse(text, sig=AB, free=("x0",)):
    return lx.parse_design(text, sig, free)


# -- signatures and parsing ----------------------------------------------------------------


def test_signature_validation():
    assert AB.arity == {"a": 0, "b": 1}
    with pytest.raises(DesignError):
        lx.Signature([("a", 0), ("a", 1)])
    with pytest.raises(DesignError):
        lx.Signature([("a", -1)])
    with pytest.raises(DesignError):
        lx.Signature([("omega", 0)])


def test_parse_leaves():
    assert parse("daimon") == lx.DAIMON
    assert parse("omega") == lx.OMEGA


def test_parse_action_with_sugar_branch():
    sig = lx.Signature.parse("a/1,b/0")
    d = parse("x0|a<b().daimon>", sig)
    assert d == lx.Action("x0", "a", (lx.Negative((lx.Branch("b", (), lx.DAIMON),)),))
    assert parse(str(d), sig) == d


def test_parse_negative_with_several_branches():
    d = parse("{a().omega, b(y).y|a<>}", free=())
    assert isinstance(d, lx.Negative) and [b.name for b in d.branches] == ["a", "b"]
    assert str(d) == "{a().omega,b(y).y|a<>}"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("x0|b<>", "arity"),
        ("x0|c<>", "unknown name"),
        ("x0|b<{b(y).x0|a<>}>", "linearity"),
        ("y|a<>", "not in scope"),
        ("{a().omega,a().daimon}", "same name"),
    ],
)
def test_design_errors(text, fragment):
    with pytest.raises(DesignError, match=fragment):
        parse(text)


def test_syntax_error_reports_column():
    with pytest.raises(ParseError) as exc:
        parse("x0|a<")
    assert exc.value.column is not None


def test_bound_variable_used_twice_is_rejected():
    with pytest.raises(DesignError, match="linearity"):
        parse("{b(y).y|b<{b(z).y|a<>}>}", free=())


# -- substitution and normalization ----------------------------------------------------------


def test_substitute_examples():
    n = parse("a().daimon", A0, ())
    assert lx.substitute(lx.DAIMON, n) == lx.DAIMON
    assert lx.substitute(lx.OMEGA, n) == lx.OMEGA
    raw = lx.substitute(parse("x0|a<>", A0), n)
    assert raw.is_cut and raw.name == "a" and raw.head == n


def test_substituting_an_absent_variable_is_identity():
    p = parse("x0|a<>", A0)
    assert lx.substitute(p, parse("{}", A0, ()), "zz") == p


def test_normalize_examples():
    cut_d = lx.Action(parse("a().daimon", A0, ()), "a")
    cut_o = lx.Action(parse("a().omega", A0, ()), "a")
    assert lx.normalize(cut_d) == lx.DAIMON
    assert lx.normalize(cut_o) == lx.OMEGA
    assert lx.normalize(lx.OMEGA) == lx.OMEGA
    assert lx.normalize_with_steps(cut_d) == (lx.DAIMON, 1)


def test_missing_branch_gives_omega():
    assert lx.normalize(lx.Action(lx.Negative(), "a")) == lx.OMEGA


def test_fuel_and_closedness_errors():
    cut_d = lx.Action(parse("a().daimon", A0, ()), "a")
    with pytest.raises(FuelExceeded, match="fuel exceeded"):
        lx.normalize(cut_d, fuel=0)
    with pytest.raises(DesignError, match="open design"):
        lx.normalize(parse("x0|a<>", A0), closed=True)


def test_orthogonality_examples():
    for n in lx.enumerate_designs(AB, 3, N):
        assert lx.orthogonal_designs(lx.DAIMON, n)
        assert not lx.orthogonal_designs(lx.OMEGA, n)
    assert lx.orthogonal_designs(parse("x0|a<>", A0), parse("a().daimon", A0, ()))


def test_two_step_interaction():
    # x0|b<{b(y).y|a<>}> against {b(z).z|b<{a().daimon}>} ... reduces twice before daimon
    p = parse("x0|b<{b(y1).y1|a<>}>")
    n = parse("{b(z).z|b<{a().daimon}>}", free=())
    out, steps = lx.normalize_with_steps(lx.substitute(p, n))
    assert steps >= 2 and out in (lx.DAIMON, lx.OMEGA)


# -- enumeration ------------------------------------------------------------------------------


def test_enumeration_examples():
    assert [str(d) for d in lx.enumerate_designs(A0, 1, P)] == ["omega", "daimon", "x0|a<>"]
    negs = {str(d) for d in lx.enumerate_designs(A0, 2, N)}
    assert {"{}", "{a().omega}", "{a().daimon}"} <= negs
    with pytest.raises(CapacityError):
        lx.enumerate_designs(A0, 0, P)


def test_enumeration_limit():
    with pytest.raises(CapacityError):
        lx.enumerate_designs(AB, 4, N, limit=5)


def test_enumeration_is_deterministic_canonical_and_valid():
    for pol, free in ((P, ("x0",)), (N, ())):
        ds = lx.enumerate_designs(AB, 4, pol)
        assert ds == lx.enumerate_designs(AB, 4, pol)
        assert len({str(d) for d in ds}) == len(ds)
        for d in ds:
            assert lx.canonical(d) == d
            lx.validate(d, AB, free)
            assert lx.parse_design(str(d), AB, free) == d


def test_canonical_identifies_renamings():
    a = parse("{b(u).u|a<>}", free=())
    b = parse("{b(v).v|a<>}", free=())
    assert a != b and lx.canonical(a) == lx.canonical(b)


# -- sub-triads ---------------------------------------------------------------------------------


def test_subtriad_rows_of_daimon_and_omega():
    world = lx.build_world(A0, 2)
    t = world.triad
    d, o = t.ref("daimon").index, t.ref("omega").index
    assert t.orth_masks(P)[d] == t.full_mask(N)
    assert t.orth_masks(P)[o] == 0
    assert world.design("daimon") == lx.DAIMON


@pytest.mark.parametrize("max_nodes", [1, 2, 3])
def test_parenthetical_remarks(max_nodes):
    t = lx.build_subtriad(AB, max_nodes)
    assert is_closed(t, t.empty(N))
    omega = t.ref("omega")
    for bits in range(1 << t.size(P)):
        X = t.from_mask(P, bits)
        if omega in X:
            assert closure(t, X) == t.full(P)


def test_universal_positive_consequences_of_subtriad():
    # brute force: (∅)⊥⊥ = N⊥, the designs orthogonal to every negative
    world = lx.build_world(AB, 3)
    expected = {
        str(p) for p in world.positives if all(lx.orthogonal_designs(p, n) for n in world.negatives)
    }
    got = set(universal_consequences(world.triad, P).labels())
    assert got == expected
    assert "daimon" in got and "omega" not in got


# -- functionals ------------------------------------------------------------------------------


def test_apply_functional_examples():
    g = lx.LudicsFunctional(parse("{a().daimon}", A0))
    assert lx.apply_functional(g, lx.DAIMON) == lx.DAIMON
    assert lx.apply_functional(g, parse("x0|a<>", A0)) == lx.DAIMON
    for h in lx.enumerate_functionals(AB, 3):
        assert lx.apply_functional(h, lx.OMEGA) == lx.OMEGA


def test_associativity_trivial_cases():
    for g in lx.enumerate_functionals(AB, 3):
        for n in lx.enumerate_designs(AB, 3, N):
            assert lx.check_associativity(lx.DAIMON, g, n)
            assert lx.check_associativity(lx.OMEGA, g, n)


def test_lift_functional_is_total_and_regular_at_small_sizes():
    from triadcalc.functionals import check_regular_tables

    world = lx.build_world(AB, 3)
    for g in lx.enumerate_functionals(AB, 3):
        lifted = lx.lift_functional(world, g)
        assert lifted.total
        assert check_regular_tables(world.triad, lifted.pos_map, lifted.neg_map)


def test_x0_free_functionals_are_carrier_negatives():
    negs = set(lx.enumerate_designs(AB, 3, N))
    closed = {g.body for g in lx.enumerate_functionals(AB, 3) if not lx.free_variables(g.body)}
    assert closed == negs


_WORLD4 = lx.build_world(AB, 4)
_FUNCS4 = lx.enumerate_functionals(AB, 3)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from(_WORLD4.positives),
    st.sampled_from(_FUNCS4),
    st.sampled_from(_WORLD4.negatives),
)
def test_application_preserves_linearity_and_associativity(p, g, n):
    gp, gn = lx.apply_functional(g, p), lx.apply_functional(g, n)
    assert lx.is_positive(gp) and not lx.is_positive(gn)
    lx.validate(gp, AB, ("x0",))
    lx.validate(gn, AB, ())
    assert lx.check_associativity(p, g, n)
