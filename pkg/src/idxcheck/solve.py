"""Instantiation, equation checking and equation elimination."""

from __future__ import annotations

from typing import Union

from .context import CEqn, CEVar, CSolved, Ctx, apply_ctx, sort_of
from .errors import InstantiationError, NotEqual, OccursCheck, ScopeError, SortError
from .syntax import (
    Ident,
    Prop,
    Session,
    Sort,
    TBin,
    TEVar,
    TSucc,
    TUnit,
    TUVar,
    TZero,
    Type,
    VarKind,
    fev,
    fuv,
)
from .printer import show
from .trace import NULL_TRACER, Tracer


class _Bottom:
    """The inconsistent context produced by eliminating an impossible equation."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "BOTTOM"

    def __bool__(self) -> bool:
        return False


BOTTOM = _Bottom()
MaybeBottom = Union[Ctx, _Bottom]


def _fresh_evar(session: Session, base: Ident, n: int) -> Ident:
    return session.fresh(f"{base.name}{n}", VarKind.EXISTENTIAL)


def well_sorted_in(ctx: Ctx, t: Type, sort: Sort) -> bool:
    try:
        return sort_of(ctx, t) is sort
    except (ScopeError, SortError):
        return False


# ---------------------------------------------------------------------------
# Instantiation
# ---------------------------------------------------------------------------


def instantiate(
    ctx: Ctx, alpha: Ident, tau: Type, sort: Sort, session: Session, tracer: Tracer = NULL_TRACER
) -> Ctx:
    """Solve unsolved ``alpha`` so that it equals ``tau``."""
    left, entry, right = ctx.split_at(alpha)
    if not isinstance(entry, CEVar):
        raise InstantiationError(f"{alpha} is not an unsolved existential variable", rule="Inst")
    if well_sorted_in(left, tau, sort):
        tracer.rule("InstSolve", lambda: f"{alpha} := {show(tau)}")
        return Ctx(left.entries + (CSolved(alpha, sort, tau),) + right.entries)
    match tau:
        case TEVar(beta) if right.is_unsolved(beta):
            tracer.rule("InstReach", lambda: f"{beta} := {alpha}")
            return ctx.replace(beta, [CSolved(beta, right.var_sort(beta), TEVar(alpha))])
        case TBin(op, t1, t2) if sort is Sort.STAR:
            tracer.rule("InstBin", lambda: f"{alpha} := {op.value}")
            a1 = _fresh_evar(session, alpha, 1)
            a2 = _fresh_evar(session, alpha, 2)
            gamma = ctx.replace(
                alpha,
                [CEVar(a2, Sort.STAR), CEVar(a1, Sort.STAR), CSolved(alpha, Sort.STAR, TBin(op, TEVar(a1), TEVar(a2)))],
            )
            with tracer.nest():
                theta = instantiate(gamma, a1, t1, Sort.STAR, session, tracer)
                return instantiate(theta, a2, apply_ctx(theta, t2), Sort.STAR, session, tracer)
        case TZero() if sort is Sort.NAT:
            tracer.rule("InstZero", lambda: f"{alpha} := Z")
            return ctx.replace(alpha, [CSolved(alpha, Sort.NAT, TZero())])
        case TSucc(t1) if sort is Sort.NAT:
            tracer.rule("InstSucc", lambda: f"{alpha} := S")
            a1 = _fresh_evar(session, alpha, 1)
            gamma = ctx.replace(alpha, [CEVar(a1, Sort.NAT), CSolved(alpha, Sort.NAT, TSucc(TEVar(a1)))])
            with tracer.nest():
                return instantiate(gamma, a1, t1, Sort.NAT, session, tracer)
    raise InstantiationError(f"cannot instantiate {alpha} with a term that is not in its scope", rule="Inst")


# ---------------------------------------------------------------------------
# Checking equations
# ---------------------------------------------------------------------------


def check_eq(ctx: Ctx, sigma: Type, t: Type, sort: Sort, session: Session, tracer: Tracer = NULL_TRACER) -> Ctx:
    """Check sigma = t, solving existential variables."""
    return _check_eq(ctx, apply_ctx(ctx, sigma), apply_ctx(ctx, t), sort, session, tracer)


def _check_eq(ctx: Ctx, sigma: Type, t: Type, sort: Sort, session: Session, tracer: Tracer) -> Ctx:
    match sigma, t:
        case TUVar(a), TUVar(b) if a == b:
            tracer.rule("CheckeqVar")
            return ctx
        case TEVar(a), TEVar(b) if a == b:
            tracer.rule("CheckeqVar")
            return ctx
        case TUnit(), TUnit():
            tracer.rule("CheckeqUnit")
            return ctx
        case TZero(), TZero():
            tracer.rule("CheckeqZero")
            return ctx
        case TSucc(s1), TSucc(t1):
            tracer.rule("CheckeqSucc")
            with tracer.nest():
                return _check_eq(ctx, s1, t1, sort, session, tracer)
        case TBin(op1, s1, s2), TBin(op2, t1, t2) if op1 is op2:
            tracer.rule("CheckeqBin")
            with tracer.nest():
                theta = _check_eq(ctx, s1, t1, sort, session, tracer)
                return _check_eq(theta, apply_ctx(theta, s2), apply_ctx(theta, t2), sort, session, tracer)
    if isinstance(sigma, TEVar) and ctx.is_unsolved(sigma.var):
        if sigma.var in fev(t):
            raise OccursCheck(f"{sigma.var} occurs in the other side of an equation", rule="CheckeqInstL")
        tracer.rule("CheckeqInstL")
        with tracer.nest():
            return instantiate(ctx, sigma.var, t, sort, session, tracer)
    if isinstance(t, TEVar) and ctx.is_unsolved(t.var):
        if t.var in fev(sigma):
            raise OccursCheck(f"{t.var} occurs in the other side of an equation", rule="CheckeqInstR")
        tracer.rule("CheckeqInstR")
        with tracer.nest():
            return instantiate(ctx, t.var, sigma, sort, session, tracer)
    raise NotEqual("terms are not equal", rule="checkeq")


def check_prop(ctx: Ctx, p: Prop, session: Session, tracer: Tracer = NULL_TRACER) -> Ctx:
    tracer.rule("CheckpropEq")
    with tracer.nest():
        return check_eq(ctx, p.lhs, p.rhs, Sort.NAT, session, tracer)


# ---------------------------------------------------------------------------
# Eliminating equations
# ---------------------------------------------------------------------------


def clash(sigma: Type, t: Type) -> bool:
    """Incompatible head constructors."""
    match sigma, t:
        case (TZero(), TSucc()) | (TSucc(), TZero()):
            return True
        case (TUnit(), TBin()) | (TBin(), TUnit()):
            return True
        case TBin(op1, _, _), TBin(op2, _, _):
            return op1 is not op2
    return False


def elim_eq(ctx: Ctx, sigma: Type, t: Type, sort: Sort, session: Session, tracer: Tracer = NULL_TRACER) -> MaybeBottom:
    """Assume sigma = t: extend with equations, or return BOTTOM."""
    return _elim_eq(ctx, apply_ctx(ctx, sigma), apply_ctx(ctx, t), sort, session, tracer)


def _elim_eq(ctx: Ctx, sigma: Type, t: Type, sort: Sort, session: Session, tracer: Tracer) -> MaybeBottom:
    match sigma, t:
        case TUVar(a), TUVar(b) if a == b:
            tracer.rule("ElimeqUvarRefl")
            return ctx
        case TZero(), TZero():
            tracer.rule("ElimeqZero")
            return ctx
        case TUnit(), TUnit():
            tracer.rule("ElimeqUnit")
            return ctx
        case TSucc(s1), TSucc(t1):
            tracer.rule("ElimeqSucc")
            with tracer.nest():
                return _elim_eq(ctx, s1, t1, sort, session, tracer)
        case TBin(op1, s1, s2), TBin(op2, t1, t2) if op1 is op2:
            with tracer.nest():
                theta = _elim_eq(ctx, s1, t1, sort, session, tracer)
                if theta is BOTTOM:
                    tracer.rule("ElimeqBinBot")
                    return BOTTOM
                tracer.rule("ElimeqBin")
                return _elim_eq(theta, apply_ctx(theta, s2), apply_ctx(theta, t2), sort, session, tracer)
        case TUVar(a), _ if ctx.equation(a) is None:
            if a in fuv(t):
                tracer.rule("ElimeqUvarLBot")
                return BOTTOM
            tracer.rule("ElimeqUvarL")
            return ctx.extend(CEqn(a, t))
        case _, TUVar(b) if ctx.equation(b) is None:
            if b in fuv(sigma):
                tracer.rule("ElimeqUvarRBot")
                return BOTTOM
            tracer.rule("ElimeqUvarR")
            return ctx.extend(CEqn(b, sigma))
    if isinstance(sigma, TEVar) and ctx.is_unsolved(sigma.var) and sigma.var not in fev(t):
        tracer.rule("ElimeqInstL")
        with tracer.nest():
            return instantiate(ctx, sigma.var, t, sort, session, tracer)
    if isinstance(t, TEVar) and ctx.is_unsolved(t.var) and t.var not in fev(sigma):
        tracer.rule("ElimeqInstR")
        with tracer.nest():
            return instantiate(ctx, t.var, sigma, sort, session, tracer)
    if clash(sigma, t):
        tracer.rule("ElimeqClash")
        return BOTTOM
    raise NotEqual("no rule eliminates this equation", rule="elimeq")


def elim_prop(ctx: Ctx, p: Prop, session: Session, tracer: Tracer = NULL_TRACER) -> MaybeBottom:
    return elim_eq(ctx, p.lhs, p.rhs, Sort.NAT, session, tracer)
