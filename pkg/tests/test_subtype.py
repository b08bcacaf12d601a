import random

import pytest
from hypothesis import given, strategies as st

from idxcheck.context import CMarker, Ctx, apply_ctx, apply_complete, canonical_completion, extends
from idxcheck.errors import NotEquivalent, NotSubtype, TypeCheckError
from idxcheck.gen import context, mono_or_poly, poly_type, term
from idxcheck.oracle import decl_sub, verdict
from idxcheck.subtype import equiv_props, equiv_types, sub_polarity_for, subtype
from idxcheck.syntax import Polarity, Prop, Session, Sort, TSucc, TZero, fev
from idxcheck.trace import Tracer

from conftest import NAT, STAR, ctx

NEG, POS = Polarity.NEG, Polarity.POS


def test_equiv_props(names):
    z = Prop(TZero(), TZero())
    g = ctx(names.E("n", NAT))
    assert equiv_props(g, z, z, names.session) == g
    assert equiv_props(g, names.prop("^n = Z"), z, names.session) == ctx(names.S("n", NAT, "Z"))
    with pytest.raises(TypeCheckError):
        equiv_props(Ctx(), z, Prop(TSucc(TZero()), TZero()), names.session)


def test_equiv_solves(names):
    g = ctx(names.E("a"))
    tr = Tracer()
    out = equiv_types(g, names.ty("^a"), names.ty("1 -> 1"), names.session, tr)
    assert out == ctx(names.S("a", STAR, "1 -> 1"))
    assert tr.rules() == ["EquivInstL", "InstSolve"]


def test_equiv_head_mismatch(names):
    with pytest.raises(NotEquivalent):
        equiv_types(Ctx(), names.ty("forall a:*. a"), names.ty("exists a:*. a"), names.session)


def test_equiv_under_binders_and_vectors(names):
    a = names.ty("forall n:N. Vec (S n) 1 -> (n = Z) => 1")
    b = names.ty("forall m:N. Vec (S m) 1 -> (m = Z) => 1")
    assert equiv_types(Ctx(), a, b, names.session) == Ctx()


def test_sub_instantiates_forall(names):
    tr = Tracer()
    out = subtype(Ctx(), NEG, names.ty("forall a:*. a -> a"), names.ty("1 -> 1"), names.session, tr)
    assert out == Ctx()
    assert tr.rules() == ["SubAllL", "SubEquiv", "EquivBin", "EquivInstL", "InstSolve", "EquivUnit"]


def test_sub_packs_exists(names):
    tr = Tracer()
    out = subtype(Ctx(), POS, names.ty("1"), names.ty("exists a:*. a"), names.session, tr)
    assert out == Ctx()
    assert tr.rules()[:3] == ["SubExistsR", "SubEquiv", "EquivInstR"]


def test_sub_rejects_monomorphic_for_polymorphic(names):
    tr = Tracer()
    with pytest.raises(NotSubtype):
        subtype(Ctx(), NEG, names.ty("1 -> 1"), names.ty("forall a:*. a -> a"), names.session, tr)
    assert tr.rules()[0] == "SubAllR"


def test_sub_output_drops_marker_scope(names):
    g = ctx(names.E("c"))
    out = subtype(g, NEG, names.ty("forall a:*. a -> ^c"), names.ty("1 -> 1"), names.session)
    assert out == ctx(names.S("c", STAR, "1"))


def test_sub_polarity_flips(names):
    tr = Tracer()
    subtype(Ctx(), NEG, names.ty("exists a:*. a"), names.ty("exists b:*. b"), names.session, tr)
    assert tr.rules()[0] == "SubNegPosL"
    tr = Tracer()
    subtype(Ctx(), POS, names.ty("forall a:*. a"), names.ty("forall b:*. b"), names.session, tr)
    assert tr.rules()[0] == "SubPosNegL"


def test_sub_polarity_for(names):
    assert sub_polarity_for(names.ty("exists a:*. a")) is POS
    assert sub_polarity_for(names.ty("forall a:*. a")) is NEG
    assert sub_polarity_for(names.ty("1")) is NEG


# -- properties ----------------------------------------------------------------

seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_equiv_reflexive_on_ground_types(seed):
    rng, s = random.Random(seed), Session()
    a = poly_type(rng, s, [], [], 7)
    assert equiv_types(Ctx(), a, a, s) == Ctx()


@given(seeds)
def test_ground_quantifier_free_subtyping_is_equality(seed):
    rng, s = random.Random(seed), Session()
    a, b = term(rng, Sort.STAR, [], 5), term(rng, Sort.STAR, [], 5)
    try:
        subtype(Ctx(), rng.choice((POS, NEG)), a, b, s)
        ok = True
    except NotSubtype:
        ok = False
    assert ok == (a == b)


@given(seeds)
def test_subtyping_extends_and_is_determinate(seed):
    rng, s = random.Random(seed), Session()
    g = context(rng, s, 5)
    a, b = (apply_ctx(g, mono_or_poly(rng, s, g, 5)) for _ in range(2))
    pol = rng.choice((POS, NEG))
    outs = []
    for _ in range(2):
        s2 = s.clone()
        try:
            outs.append(subtype(g, pol, a, b, s2))
        except TypeCheckError as err:
            outs.append(type(err))
    assert outs[0] == outs[1]
    if isinstance(outs[0], Ctx):
        assert extends(g, outs[0])
        # pushed markers are truncated away together with everything after them
        assert {e for e in outs[0] if isinstance(e, CMarker)} <= {e for e in g if isinstance(e, CMarker)}


@given(seeds)
def test_subtyping_agrees_with_declarative(seed):
    """Soundness and completeness of subtyping at desk scale, against the
    declarative rules under the canonical completion of the output (or input,
    on failure)."""
    rng, s = random.Random(seed), Session()
    g = context(rng, s, 4)
    a, b = (apply_ctx(g, mono_or_poly(rng, s, g, 5)) for _ in range(2))
    if rng.random() < 0.3:
        b = a
    pol = rng.choice((POS, NEG))
    try:
        out = subtype(g, pol, a, b, s)
    except TypeCheckError:
        out = None
    if out is not None:
        omega = canonical_completion(out)
        psi = apply_complete(omega, g)
        v = verdict(lambda: decl_sub(psi, pol, apply_ctx(omega, a), apply_ctx(omega, b), session=s))
        assert v in (True, None)
    elif not fev(a) and not fev(b):
        # with no existentials there is nothing to complete: the declarative
        # system must not derive the judgment either
        psi = apply_complete(canonical_completion(g), g)
        assert verdict(lambda: decl_sub(psi, pol, a, b, session=s)) in (False, None)
