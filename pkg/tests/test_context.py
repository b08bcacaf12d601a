import random

import pytest
from hypothesis import given, strategies as st

from idxcheck.context import (
    CEqn,
    CHyp,
    CMarker,
    CUVar,
    Ctx,
    apply_complete,
    apply_ctx,
    canonical_completion,
    extends,
    sort_of,
    wf_ctx,
    wf_type,
)
from idxcheck.errors import ContextError, ScopeError, SortError
from idxcheck.gen import context, ctx_atoms, extension_chain, mono_or_poly, term
from idxcheck.printer import print_ctx
from idxcheck.syntax import BANG, SLASH, Session, Sort, TSucc, TUnit, TZero, alpha_eq, fev

from conftest import NAT, STAR, ctx


# -- apply_ctx ---------------------------------------------------------------


def test_apply_solutions_transitively(names):
    g = ctx(names.S("a", STAR, "1"), names.S("b", STAR, "^a -> 1"))
    assert apply_ctx(g, names.ty("^b")) == names.ty("1 -> 1")


def test_apply_equations(names):
    g = ctx(names.U("al", NAT), CEqn(names.uvar("al"), TZero()))
    assert apply_ctx(g, names.ty("S al")) == TSucc(TZero())


def test_apply_leaves_unsolved_and_unequated_alone(names):
    g = ctx(names.E("a"), names.U("b"))
    t = names.ty("^a -> b")
    assert apply_ctx(g, t) == t


def test_apply_rejects_unbound(names):
    with pytest.raises(ScopeError):
        apply_ctx(Ctx(), names.ty("^a"))


# -- apply_complete ------------------------------------------------------------


def test_complete_identity(names):
    g = ctx(names.H("x", "1"))
    assert apply_complete(g, g) == g


def test_complete_erases_evars(names):
    omega = ctx(names.S("a", STAR, "1"), names.H("x", "^a", SLASH))
    gamma = ctx(names.E("a"), names.H("x", "^a", SLASH))
    assert apply_complete(omega, gamma) == ctx(CHyp(names.term("x"), TUnit(), SLASH))


def test_complete_requires_extension(names):
    with pytest.raises(ContextError):
        apply_complete(ctx(names.H("y", "1")), ctx(names.H("x", "1")))


def test_complete_substitutes_equations(names):
    n = names.uvar("n")
    omega = ctx(names.U("n", NAT), CEqn(n, TZero()), names.H("v", "Vec n 1"))
    out = apply_complete(omega, omega)
    assert [type(e).__name__ for e in out] == ["CUVar", "CHyp"]
    assert out[1].ty == names.ty("Vec Z 1")


# -- extends -----------------------------------------------------------------


def test_extension_solves(names):
    g = ctx(names.E("a"), names.S("b", STAR, "^a"))
    d = ctx(names.S("a", STAR, "1"), names.S("b", STAR, "^a"))
    assert extends(g, d)
    assert not extends(d, g)


def test_extension_up_to_solutions(names):
    g = ctx(names.S("a", STAR, "1"), names.S("b", STAR, "^a"))
    d = ctx(names.S("a", STAR, "1"), names.S("b", STAR, "1"))
    assert extends(g, d)


def test_extension_rejects_mismatched_declaration(names):
    assert not extends(ctx(names.H("x", "1")), ctx(names.H("y", "1")))


def test_extension_adds_evars_but_never_drops_them(names):
    g = ctx(names.U("a"))
    d = ctx(names.E("z"), names.U("a"), names.S("w", STAR, "a"))
    assert extends(g, d)
    assert not extends(d, g)


def test_extension_respects_principality_and_types(names):
    assert not extends(ctx(names.H("x", "1", BANG)), ctx(CHyp(names.term("x"), TUnit(), SLASH)))


# -- sorting and well-formedness -----------------------------------------------


def test_sort_of(names):
    g = ctx(names.U("al", NAT))
    assert sort_of(g, names.ty("S al")) is Sort.NAT
    assert sort_of(Ctx(), names.ty("1 -> 1")) is Sort.STAR
    with pytest.raises(SortError):
        sort_of(g, names.ty("al -> 1"))


def test_sort_of_unbound(names):
    with pytest.raises(ScopeError):
        sort_of(Ctx(), names.ty("q"))


def test_principal_wf(names):
    assert not wf_type(ctx(names.E("a")), names.ty("^a"), BANG)
    assert wf_type(ctx(names.E("a")), names.ty("^a"), SLASH)
    assert wf_type(ctx(names.S("a", STAR, "1")), names.ty("^a"), BANG)
    assert wf_type(Ctx(), names.ty("forall a:*. a -> a"), BANG)


def test_wf_ctx_rules(names):
    assert wf_ctx(ctx(names.U("n", NAT), CEqn(names.uvar("n"), TZero())))
    # an equation for an undeclared or twice-equated variable
    assert not wf_ctx(ctx(CEqn(names.uvar("m"), TZero())))
    n = names.uvar("n")
    assert not wf_ctx(ctx(names.U("n", NAT), CEqn(n, TZero()), CEqn(n, TZero())))
    # solutions must be well-sorted under their prefix
    assert not wf_ctx(ctx(names.S("b", STAR, "^c"), names.E("c")))
    # duplicate declarations and markers
    assert not wf_ctx(ctx(names.E("c"), names.E("c")))
    m = CMarker(names.evar("c"))
    assert not wf_ctx(ctx(names.E("c"), m, m))


# -- holes -------------------------------------------------------------------


def test_split_at(names):
    g = ctx(names.H("x", "1"), names.E("a"), names.H("y", "1"))
    left, entry, right = g.split_at(names.evar("a"))
    assert left == ctx(names.H("x", "1")) and entry == names.E("a") and right == ctx(names.H("y", "1"))
    with pytest.raises(ContextError):
        g.split_at(names.evar("nowhere"))


def test_articulation_by_replace(names):
    g = ctx(names.H("x", "1"), names.E("a"), names.H("y", "1"))
    out = g.replace(names.evar("a"), [names.E("a1"), names.E("a2"), names.S("a", STAR, "^a1 -> ^a2")])
    assert print_ctx(out) == "x:1 !, ^a1:*, ^a2:*, ^a:*=^a1 -> ^a2, y:1 !"
    assert extends(g, out)
    assert apply_ctx(out, names.ty("^a")) == names.ty("^a1 -> ^a2")


# -- generated properties ------------------------------------------------------


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_generated_contexts_are_wellformed_and_reflexive(seed):
    g = context(random.Random(seed), Session(), 8)
    assert wf_ctx(g)
    assert extends(g, g)


@given(seeds)
def test_completing_stability(seed):
    rng, s = random.Random(seed), Session()
    g = context(rng, s, 6)
    omega = canonical_completion(extension_chain(rng, s, g, 3))
    assert omega.is_complete()
    assert extends(g, omega)
    assert apply_complete(omega, g) == apply_complete(omega, omega)


@given(seeds)
def test_complete_output_has_no_existentials(seed):
    rng, s = random.Random(seed), Session()
    g = context(rng, s, 8)
    out = apply_complete(canonical_completion(g), g)
    for e in out:
        assert isinstance(e, (CUVar, CHyp))
        if isinstance(e, CHyp):
            assert not fev(e.ty)


@given(seeds)
def test_sorting_survives_substitution(seed):
    rng, s = random.Random(seed), Session()
    g = context(rng, s, 8)
    k = rng.choice((Sort.STAR, Sort.NAT))
    t = term(rng, k, ctx_atoms(g, k), 5)
    assert sort_of(g, t) is k
    assert sort_of(g, apply_ctx(g, t)) is k


@given(seeds)
def test_substitution_monotonicity(seed):
    rng, s = random.Random(seed), Session()
    g = context(rng, s, 6)
    a = mono_or_poly(rng, s, g, 6)
    d = extension_chain(rng, s, g, 4)
    assert alpha_eq(apply_ctx(g, apply_ctx(g, a)), apply_ctx(g, a))
    assert alpha_eq(apply_ctx(d, apply_ctx(g, a)), apply_ctx(d, a))
