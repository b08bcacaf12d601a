"""Algorithmic type equivalence and polarized subtyping."""

from __future__ import annotations

from .context import CEVar, CMarker, CUVar, Ctx, apply_ctx
from .errors import InstantiationError, NotEqual, NotEquivalent, NotSubtype, OccursCheck
from .printer import show
from .solve import check_eq, instantiate
from .syntax import (
    Ident,
    Polarity,
    Prop,
    Quant,
    Session,
    Sort,
    TBin,
    TEVar,
    TExists,
    TForall,
    TImplies,
    TUnit,
    TUVar,
    TVec,
    TWith,
    Type,
    VarKind,
    fev,
    open_quant,
    subst_uvar,
)
from .trace import NULL_TRACER, Tracer


def open_universal(ctx: Ctx, q: Quant, session: Session) -> tuple[Ident, Type]:
    """Choose the variable that a quantifier's binder becomes when pushed onto
    ``ctx``: the binder itself unless that ident is already declared."""
    if not ctx.declares(q.var):
        return q.var, q.body
    v = session.fresh(q.var.name, VarKind.UNIVERSAL)
    return v, open_quant(q, TUVar(v), session)


def open_existential(q: Quant, session: Session) -> tuple[Ident, Type]:
    """A fresh existential variable replacing a quantifier's binder."""
    v = session.fresh(q.var.name, VarKind.EXISTENTIAL)
    return v, open_quant(q, TEVar(v), session)


def sub_polarity_for(b: Type) -> Polarity:
    return Polarity.POS if isinstance(b, TExists) else Polarity.NEG


# ---------------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------------


def equiv_props(ctx: Ctx, p: Prop, q: Prop, session: Session, tracer: Tracer = NULL_TRACER) -> Ctx:
    tracer.rule("PropequivEq")
    with tracer.nest():
        try:
            theta = check_eq(ctx, p.lhs, q.lhs, Sort.NAT, session, tracer)
            return check_eq(theta, p.rhs, q.rhs, Sort.NAT, session, tracer)
        except OccursCheck:
            raise
        except (NotEqual, InstantiationError) as err:
            raise NotEquivalent("propositions are not equivalent", rule="PropequivEq") from err


def equiv_types(ctx: Ctx, a: Type, b: Type, session: Session, tracer: Tracer = NULL_TRACER) -> Ctx:
    return _equiv(ctx, apply_ctx(ctx, a), apply_ctx(ctx, b), session, tracer)


def _equiv_inst(ctx: Ctx, alpha: Ident, other: Type, rule: str, session: Session, tracer: Tracer) -> Ctx:
    if alpha in fev(other):
        raise OccursCheck(f"{alpha} occurs in {show(other)}", rule=rule)
    tracer.rule(rule, lambda: f"{alpha} := {show(other)}")
    with tracer.nest():
        try:
            return instantiate(ctx, alpha, other, Sort.STAR, session, tracer)
        except InstantiationError as err:
            raise NotEquivalent(f"cannot solve {alpha} with {show(other)}", rule=rule) from err


def _equiv_quant(ctx: Ctx, a: Quant, b: Quant, rule: str, session: Session, tracer: Tracer) -> Ctx:
    tracer.rule(rule)
    v, body_a = open_universal(ctx, a, session)
    body_b = subst_uvar(b.body, b.var, TUVar(v), session)
    with tracer.nest():
        out = _equiv(ctx.extend(CUVar(v, a.sort)), body_a, body_b, session, tracer)
    return out.truncate(v)


def _equiv(ctx: Ctx, a: Type, b: Type, session: Session, tracer: Tracer) -> Ctx:
    match a, b:
        case TUVar(x), TUVar(y) if x == y:
            tracer.rule("EquivVar")
            return ctx
        case TEVar(x), TEVar(y) if x == y:
            tracer.rule("EquivExvar")
            return ctx
    if isinstance(a, TEVar) and ctx.is_unsolved(a.var):
        return _equiv_inst(ctx, a.var, b, "EquivInstL", session, tracer)
    if isinstance(b, TEVar) and ctx.is_unsolved(b.var):
        return _equiv_inst(ctx, b.var, a, "EquivInstR", session, tracer)
    match a, b:
        case TUnit(), TUnit():
            tracer.rule("EquivUnit")
            return ctx
        case TBin(op1, a1, a2), TBin(op2, b1, b2) if op1 is op2:
            tracer.rule("EquivBin")
            with tracer.nest():
                theta = _equiv(ctx, a1, b1, session, tracer)
                return _equiv(theta, apply_ctx(theta, a2), apply_ctx(theta, b2), session, tracer)
        case TVec(t1, a1), TVec(t2, b1):
            tracer.rule("EquivVec")
            with tracer.nest():
                try:
                    theta = check_eq(ctx, t1, t2, Sort.NAT, session, tracer)
                except OccursCheck:
                    raise
                except (NotEqual, InstantiationError) as err:
                    raise NotEquivalent("vector lengths differ", rule="EquivVec") from err
                return _equiv(theta, apply_ctx(theta, a1), apply_ctx(theta, b1), session, tracer)
        case TForall(_, k1, _), TForall(_, k2, _) if k1 is k2:
            return _equiv_quant(ctx, a, b, "EquivAll", session, tracer)
        case TExists(_, k1, _), TExists(_, k2, _) if k1 is k2:
            return _equiv_quant(ctx, a, b, "EquivExists", session, tracer)
        case TImplies(p, a0), TImplies(q, b0):
            tracer.rule("EquivImplies")
            with tracer.nest():
                theta = equiv_props(ctx, p, q, session, tracer)
                return _equiv(theta, apply_ctx(theta, a0), apply_ctx(theta, b0), session, tracer)
        case TWith(a0, p), TWith(b0, q):
            tracer.rule("EquivWith")
            with tracer.nest():
                theta = equiv_props(ctx, p, q, session, tracer)
                return _equiv(theta, apply_ctx(theta, a0), apply_ctx(theta, b0), session, tracer)
    raise NotEquivalent(f"{show(a)} is not equivalent to {show(b)}", rule="equiv")


# ---------------------------------------------------------------------------
# Subtyping
# ---------------------------------------------------------------------------


def subtype(ctx: Ctx, pol: Polarity, a: Type, b: Type, session: Session, tracer: Tracer = NULL_TRACER) -> Ctx:
    """Check a <= b at polarity ``pol`` (POS or NEG)."""
    return _sub(ctx, pol, apply_ctx(ctx, a), apply_ctx(ctx, b), session, tracer)


def _sub(ctx: Ctx, pol: Polarity, a: Type, b: Type, session: Session, tracer: Tracer) -> Ctx:
    if pol is Polarity.NEG:
        if isinstance(b, TForall):
            tracer.rule("SubAllR")
            v, body = open_universal(ctx, b, session)
            with tracer.nest():
                out = _sub(ctx.extend(CUVar(v, b.sort)), pol, a, body, session, tracer)
            return out.truncate(v)
        if isinstance(a, TForall):
            tracer.rule("SubAllL")
            ev, body = open_existential(a, session)
            with tracer.nest():
                out = _sub(ctx.extend(CMarker(ev), CEVar(ev, a.sort)), pol, body, b, session, tracer)
            return out.truncate(CMarker(ev))
        if isinstance(a, TExists):
            tracer.rule("SubNegPosL")
            with tracer.nest():
                return _sub(ctx, Polarity.POS, a, b, session, tracer)
        if isinstance(b, TExists):
            tracer.rule("SubNegPosR")
            with tracer.nest():
                return _sub(ctx, Polarity.POS, a, b, session, tracer)
    elif pol is Polarity.POS:
        if isinstance(a, TExists):
            tracer.rule("SubExistsL")
            v, body = open_universal(ctx, a, session)
            with tracer.nest():
                out = _sub(ctx.extend(CUVar(v, a.sort)), pol, body, b, session, tracer)
            return out.truncate(v)
        if isinstance(b, TExists):
            tracer.rule("SubExistsR")
            ev, body = open_existential(b, session)
            with tracer.nest():
                out = _sub(ctx.extend(CMarker(ev), CEVar(ev, b.sort)), pol, a, body, session, tracer)
            return out.truncate(CMarker(ev))
        if isinstance(a, TForall):
            tracer.rule("SubPosNegL")
            with tracer.nest():
                return _sub(ctx, Polarity.NEG, a, b, session, tracer)
        if isinstance(b, TForall):
            tracer.rule("SubPosNegR")
            with tracer.nest():
                return _sub(ctx, Polarity.NEG, a, b, session, tracer)
    else:
        raise ValueError("subtyping polarity must be + or -")
    tracer.rule("SubEquiv")
    with tracer.nest():
        try:
            return _equiv(ctx, a, b, session, tracer)
        except NotEquivalent as err:
            raise NotSubtype(f"{show(a)} is not a subtype of {show(b)}", rule=err.rule or "SubEquiv") from err
