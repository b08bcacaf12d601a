import itertools

import pytest
from hypothesis import given, strategies as st

from idxcheck.context import Ctx
from idxcheck.errors import FuelExhausted
from idxcheck.oracle import Fuel, apply_subst, decl_covers, decl_sub, decl_synth, decl_synthesizes, decl_typecheck, mgu, verdict
from idxcheck.parser import parse_program
from idxcheck.syntax import (
    BANG,
    SLASH,
    BinOp,
    Branch,
    PInj,
    PVar,
    Polarity,
    Session,
    TBin,
    TSucc,
    TUVar,
    TUnit,
    TZero,
    UnitE,
    VarKind,
)

from conftest import NAT, PROGRAMS, STAR, ctx

NEG, POS = Polarity.NEG, Polarity.POS

# -- mgu -----------------------------------------------------------------------


def test_mgu_examples(names):
    al = names.uvar("al")
    assert mgu(names.ty("al"), TZero()) == {al: TZero()}
    assert mgu(TZero(), names.ty("S al")) is None
    assert mgu(names.ty("S al"), names.ty("S Z")) == {al: TZero()}
    assert mgu(names.ty("al"), names.ty("S al")) is None
    assert mgu(names.ty("al -> 1"), names.ty("1 -> al")) == {al: TUnit()}


# A small universe: two variables per sort and shallow terms over them.
_S = Session(1 << 20)
VARS = {
    STAR: (_S.fresh("a", VarKind.UNIVERSAL), _S.fresh("b", VarKind.UNIVERSAL)),
    NAT: (_S.fresh("n", VarKind.UNIVERSAL), _S.fresh("m", VarKind.UNIVERSAL)),
}


def small_terms(sort, depth):
    """Every term of ``sort`` over VARS with nesting depth at most ``depth``."""
    if depth <= 0:
        return []
    leaves = [TUVar(v) for v in VARS[sort]] + [TZero() if sort is NAT else TUnit()]
    if depth == 1:
        return leaves
    smaller = small_terms(sort, depth - 1)
    if sort is NAT:
        return leaves + [TSucc(t) for t in smaller]
    return leaves + [TBin(op, l, r) for op in (BinOp.ARROW, BinOp.SUM) for l, r in itertools.product(smaller, repeat=2)]


def first_order_match(pattern, target, binding):
    """Extend ``binding`` so that pattern[binding] == target, or None."""
    match pattern:
        case TUVar(v):
            if v in binding:
                return binding if binding[v] == target else None
            return {**binding, v: target}
        case TSucc(p):
            return first_order_match(p, target.arg, binding) if isinstance(target, TSucc) else None
        case TBin(op, pl, pr):
            if not (isinstance(target, TBin) and target.op is op):
                return None
            b = first_order_match(pl, target.left, binding)
            return None if b is None else first_order_match(pr, target.right, b)
        case _:
            return binding if pattern == target else None


def factors_through(sigma, theta, vars_):
    """Is there rho with sigma(v) = rho(theta(v)) for every variable v?"""
    rho: dict = {}
    for v in vars_:
        rho = first_order_match(apply_subst(theta, TUVar(v)), apply_subst(sigma, TUVar(v)), rho)
        if rho is None:
            return False
    return True


def substitutions(sort, depth):
    vs = VARS[sort]
    choices = [small_terms(sort, depth)] * len(vs)
    for picks in itertools.product(*choices):
        yield dict(zip(vs, picks))


pair_terms = st.sampled_from(small_terms(NAT, 3) + [TSucc(TSucc(TUVar(VARS[NAT][0])))]).map(lambda t: (t, NAT)) | st.sampled_from(
    small_terms(STAR, 2)
).map(lambda t: (t, STAR))


@given(pair_terms, st.data())
def test_mgu_unifies_and_is_most_general(left, data):
    a, sort = left
    b = data.draw(st.sampled_from(small_terms(sort, 3 if sort is NAT else 2)))
    theta = mgu(a, b)
    unifiers = [s for s in substitutions(sort, 2) if apply_subst(s, a) == apply_subst(s, b)]
    if theta is None:
        assert not unifiers
        return
    assert apply_subst(theta, a) == apply_subst(theta, b)
    for sigma in unifiers:
        assert factors_through(sigma, theta, VARS[sort])


# -- declarative subtyping -------------------------------------------------------


def test_decl_sub_guesses_instance(names):
    assert decl_sub(Ctx(), NEG, names.ty("forall a:*. a -> a"), names.ty("1 -> 1"), Fuel(3, 8))


def test_decl_sub_reflexive(names):
    assert decl_sub(Ctx(), NEG, names.ty("1 -> 1"), names.ty("1 -> 1"))


def test_decl_sub_exists_on_left_is_not_unit(names):
    assert decl_sub(Ctx(), POS, names.ty("exists a:*. a"), names.ty("1")) is False


def test_decl_sub_unknown_when_guess_is_too_small(names):
    a, b = names.ty("forall a:*. a -> a"), names.ty("(1 -> 1) -> 1 -> 1")
    with pytest.raises(FuelExhausted):
        decl_sub(Ctx(), NEG, a, b, Fuel(guess_size=1))
    assert verdict(lambda: decl_sub(Ctx(), NEG, a, b, Fuel(guess_size=1))) is None
    assert decl_sub(Ctx(), NEG, a, b, Fuel(guess_size=3))


def test_fuel_must_be_positive():
    with pytest.raises(ValueError):
        Fuel(guess_size=0)
    with pytest.raises(ValueError):
        Fuel(depth=0)


# -- declarative typing ----------------------------------------------------------


def test_decl_identity(names):
    assert decl_typecheck(Ctx(), BANG, names.expr("\\x -> x"), names.ty("forall a:*. a -> a"))


def test_decl_recover(names):
    psi = ctx(names.H("id", "forall a:*. a -> a"))
    e = names.expr("id ()")
    assert decl_synthesizes(psi, e, TUnit(), BANG)
    assert (TUnit(), BANG) in decl_synth(psi, e)


def test_decl_rejects_unit_as_function(names):
    assert decl_typecheck(Ctx(), BANG, UnitE(), names.ty("1 -> 1")) is False


def test_decl_no_recovery_when_result_is_ambiguous(names):
    # f : forall a. 1 -> a applied to () can return any type: no principal result
    psi = ctx(names.H("f", "forall a:*. 1 -> a"))
    results = decl_synth(psi, names.expr("f ()"))
    assert results and all(p is SLASH for _, p in results)


@pytest.mark.parametrize("name", ["head", "map", "zip"])
def test_decl_accepts_vector_definitions(name):
    s = Session()
    d = parse_program((PROGRAMS / f"{name}.idx").read_text(), name, s).defs[0]
    assert verdict(lambda: decl_typecheck(Ctx(), BANG, d.expr, d.ty, session=s)) is True


# -- declarative coverage --------------------------------------------------------


def _case(name):
    s = Session()
    d = parse_program((PROGRAMS / f"{name}.idx").read_text(), name, s).defs[0]
    body = d.expr
    while not hasattr(body, "branches"):
        body = body.body
    return s, body.branches


def test_decl_covers_head(names):
    s, branches = _case("head")
    psi = ctx(names.U("n", NAT), names.U("al"))
    assert decl_covers(psi, branches, (names.ty("Vec (S n) al"),), session=s)
    assert decl_covers(psi, branches, (names.ty("Vec n al"),), session=s) is False


def test_decl_covers_zip(names):
    s, branches = _case("zip")
    psi = ctx(names.U("n", NAT), names.U("al"), names.U("be"))
    assert decl_covers(psi, branches, (names.ty("Vec n al * Vec n be"),), session=s)


def test_decl_covers_sum(names):
    br = Branch((PInj(1, PVar(names.term("x"))),), UnitE())
    assert decl_covers(Ctx(), (br,), (names.ty("1 + 1"),)) is False
