from hypothesis import given, strategies as st

from idxcheck.syntax import (
    TEVar,
    TForall,
    TSucc,
    TUVar,
    TUnit,
    UnitE,
    App,
    Lam,
    Polarity,
    Rec,
    Session,
    Sort,
    Var,
    VarKind,
    alpha_eq,
    arrow,
    fev,
    is_case,
    is_checked_intro,
    is_value,
    polarity,
    subst_uvar,
)

from strategies import types_with_vars


def test_fev_of_closed_type_is_empty(names):
    assert fev(names.ty("1 -> 1")) == frozenset()


def test_fev_excludes_bound_and_universal(names):
    a, c = names.evar("a"), names.evar("c")
    assert fev(names.ty("^a -> forall b:*. ^c")) == {a, c}


def test_fev_looks_inside_vector_indices(names):
    n = names.evar("n")
    assert fev(names.ty("Vec (S ^n) al")) == {n}


def test_polarity():
    s = Session()
    assert polarity(parse("forall a:*. a", s)) is Polarity.NEG
    assert polarity(parse("exists a:N. Vec a 1", s)) is Polarity.POS
    assert polarity(parse("1 -> 1", s)) is Polarity.NONPOLAR


def parse(text, s):
    from idxcheck.parser import parse_type

    return parse_type(text, s)


def test_subst_replaces_free_occurrences(names):
    a = names.uvar("a")
    assert subst_uvar(names.ty("a -> a"), a, TUnit()) == arrow(TUnit(), TUnit())


def test_subst_respects_shadowing(names):
    a = names.uvar("a")
    inner = names.session.fresh("a", VarKind.UNIVERSAL)
    t = TForall(inner, Sort.STAR, TUVar(inner))
    # the binder is a different ident, so an outer substitution for a leaves it alone
    assert subst_uvar(t, a, TUnit()) == t
    # substituting for the bound ident itself must not reach under its own binder
    assert alpha_eq(subst_uvar(t, inner, TUnit()), t)


def test_subst_index_variable(names):
    n, m = names.uvar("n"), names.uvar("m")
    assert subst_uvar(names.ty("Vec n al"), n, TSucc(TUVar(m))) == names.ty("Vec (S m) al")


def test_subst_avoids_capture(names):
    b = names.uvar("b")
    t = names.ty("forall a:*. a -> b")
    bound = t.var
    out = subst_uvar(t, b, TUVar(bound))
    # the free a that came in must not be captured by the binder
    assert out.var != bound
    assert out.body.right == TUVar(bound)


def test_intro_forms(names):
    x = names.term("x")
    assert is_checked_intro(Lam(x, Var(x)))
    assert not is_checked_intro(Rec(x, Lam(x, Var(x))))
    assert not is_checked_intro(Var(x))
    assert is_case(names.expr("case((), u => ())"))
    assert not is_case(UnitE())


def test_values():
    x = Session().fresh("x", VarKind.TERM)
    assert not is_value(App(Var(x), (UnitE(),)))
    assert is_value(Lam(x, App(Var(x), (UnitE(),))))
    assert is_value(UnitE())


@given(types_with_vars())
def test_identity_substitution(pair):
    t, alpha = pair
    assert subst_uvar(t, alpha, TUVar(alpha)) == t


@given(types_with_vars(), st.sampled_from(["evar", "unit"]))
def test_fev_of_substitution_is_bounded(pair, what):
    t, alpha = pair
    tau = TEVar(Session(10_000).fresh("z", VarKind.EXISTENTIAL)) if what == "evar" else TUnit()
    assert fev(subst_uvar(t, alpha, tau)) <= fev(t) | fev(tau)


@given(types_with_vars())
def test_polarity_follows_head(pair):
    t, _ = pair
    expected = {"TForall": Polarity.NEG, "TExists": Polarity.POS}.get(type(t).__name__, Polarity.NONPOLAR)
    assert polarity(t) is expected
