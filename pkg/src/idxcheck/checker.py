"""Algorithmic typing: checking, synthesis, spines, matching and coverage."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .context import (
    CEVar,
    CHyp,
    CMarker,
    CSolved,
    CUVar,
    CEqn,
    Ctx,
    apply_ctx,
    check_wf_type,
    extends,
    marker_key,
    wf_ctx,
    wf_type,
)
from .errors import (
    CannotSynthesize,
    CoverageError,
    NonPrincipalScrutinee,
    NotAFunction,
    PatternMismatch,
    ScopeError,
    TypeCheckError,
    TypeMismatch,
)
from .printer import show
from .solve import BOTTOM, check_prop, elim_eq
from .subtype import open_existential, open_universal, sub_polarity_for, subtype
from .syntax import (
    BANG,
    SLASH,
    Anno,
    App,
    BinOp,
    Branch,
    Case,
    Cons,
    Expr,
    Ident,
    Inj,
    Lam,
    Nil,
    PCons,
    PInj,
    PNil,
    PPair,
    PUnit,
    PVar,
    PWild,
    Pair,
    Pattern,
    Principality,
    Prop,
    Rec,
    DEFAULT_SESSION,
    Session,
    Sort,
    TBin,
    TEVar,
    TExists,
    TForall,
    TImplies,
    TSucc,
    TUnit,
    TUVar,
    TVec,
    TWith,
    TZero,
    Type,
    UnitE,
    Var,
    VarKind,
    fev,
    is_case,
    is_checked_intro,
    subst_branches,
)
from .trace import NULL_TRACER, Tracer


@dataclass(frozen=True)
class SynthResult:
    ty: Type
    princ: Principality
    out: Ctx


SpineResult = SynthResult

_WILD = PWild()

Observer = Callable[[str, Ctx, object], None]


class Checker:
    """One typechecking run: owns the session, tracer and debug switches.

    ``debug`` asserts the extension and well-formed-output lemmas at the exit
    of every judgment; ``observer`` (if any) sees each (judgment, input
    context, result) triple."""

    def __init__(
        self,
        session: Optional[Session] = None,
        tracer: Tracer = NULL_TRACER,
        debug: bool = False,
        observer: Optional[Observer] = None,
        max_steps: int = 1_000_000,
    ):
        self.session = session or DEFAULT_SESSION
        self.tracer = tracer
        self.debug = debug
        self.observer = observer
        self.max_steps = max_steps
        self.steps = 0

    # -- bookkeeping -----------------------------------------------------------

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise RuntimeError("typechecking step budget exceeded")

    def _post(self, kind: str, ctx_in: Ctx, result) -> None:
        if self.observer is not None:
            self.observer(kind, ctx_in, result)
        if not self.debug:
            return
        out = result.out if isinstance(result, SynthResult) else result
        if isinstance(out, Ctx):
            assert extends(ctx_in, out), f"{kind}: output does not extend input"
            assert wf_ctx(out), f"{kind}: output context is ill-formed"
        if isinstance(result, SynthResult):
            assert wf_type(result.out, result.ty, result.princ), f"{kind}: output type is ill-formed"

    def _rule(self, name: str, detail=None) -> None:
        self.tracer.rule(name, detail)

    def _fresh_evar(self, name: str) -> Ident:
        return self.session.fresh(name, VarKind.EXISTENTIAL)

    # -- checking --------------------------------------------------------------

    def check(self, ctx: Ctx, p: Principality, e: Expr, a: Type) -> Ctx:
        self._tick()
        a = apply_ctx(ctx, a)
        try:
            out = self._check(ctx, p, e, a)
        except TypeCheckError as err:
            raise err.with_span(e.span)
        self._post("check", ctx, out)
        return out

    def _check(self, ctx: Ctx, p: Principality, e: Expr, a: Type) -> Ctx:
        t = self.tracer
        if isinstance(e, Case):
            return self._case(ctx, p, e, a)
        if isinstance(e, Rec):
            self._rule("Rec")
            with t.nest():
                out = self.check(ctx.extend(CHyp(e.var, a, p)), p, e.body, a)
            return out.truncate(e.var)
        intro = is_checked_intro(e)
        if intro and isinstance(a, TForall):
            self._rule("AllIntro")
            v, body = open_universal(ctx, a, self.session)
            with t.nest():
                out = self.check(ctx.extend(CUVar(v, a.sort)), p, e, body)
            return out.truncate(v)
        if intro and isinstance(a, TImplies):
            if p is not BANG:
                raise TypeMismatch("checking against a guarded type needs a principal type", rule="ImpliesIntro")
            tag = self.session.fresh("P", VarKind.TERM)
            marked = ctx.extend(CMarker(tag, a.prop))
            theta = elim_eq(marked, a.prop.lhs, a.prop.rhs, Sort.NAT, self.session, t)
            if theta is BOTTOM:
                self._rule("ImpliesIntroBot")
                return ctx
            self._rule("ImpliesIntro")
            with t.nest():
                out = self.check(theta, BANG, e, apply_ctx(theta, a.body))
            return out.truncate(marker_key(tag))
        if isinstance(a, TWith) and not is_case(e):
            self._rule("WithIntro")
            with t.nest():
                theta = check_prop(ctx, a.prop, self.session, t)
                return self.check(theta, p, e, apply_ctx(theta, a.body))
        unsolved = isinstance(a, TEVar) and ctx.is_unsolved(a.var)
        match e, a:
            case UnitE(), TUnit():
                self._rule("UnitIntro")
                return ctx
            case UnitE(), TEVar(av) if unsolved:
                self._rule("UnitIntroSolve", lambda: f"{av} := 1")
                return ctx.replace(av, [CSolved(av, Sort.STAR, TUnit())])
            case Lam(x, body), TBin(BinOp.ARROW, a1, a2):
                self._rule("ArrIntro")
                with t.nest():
                    out = self.check(ctx.extend(CHyp(x, a1, p)), p, body, a2)
                return out.truncate(x)
            case Lam(x, body), TEVar(av) if unsolved:
                self._rule("ArrIntroSolve")
                a1, a2 = self._fresh_evar(av.name + "1"), self._fresh_evar(av.name + "2")
                gamma = ctx.replace(
                    av, [CEVar(a1, Sort.STAR), CEVar(a2, Sort.STAR), CSolved(av, Sort.STAR, TBin(BinOp.ARROW, TEVar(a1), TEVar(a2)))]
                )
                with t.nest():
                    out = self.check(gamma.extend(CHyp(x, TEVar(a1), SLASH)), SLASH, body, TEVar(a2))
                return out.truncate(x)
            case Inj(k, body), TBin(BinOp.SUM, a1, a2):
                self._rule(f"SumIntro{k}")
                with t.nest():
                    return self.check(ctx, p, body, a1 if k == 1 else a2)
            case Inj(k, body), TEVar(av) if unsolved:
                self._rule(f"SumIntroSolve{k}")
                a1, a2 = self._fresh_evar(av.name + "1"), self._fresh_evar(av.name + "2")
                gamma = ctx.replace(
                    av, [CEVar(a1, Sort.STAR), CEVar(a2, Sort.STAR), CSolved(av, Sort.STAR, TBin(BinOp.SUM, TEVar(a1), TEVar(a2)))]
                )
                with t.nest():
                    return self.check(gamma, SLASH, body, TEVar(a1 if k == 1 else a2))
            case Pair(e1, e2), TBin(BinOp.PROD, a1, a2):
                self._rule("PairIntro")
                with t.nest():
                    theta = self.check(ctx, p, e1, a1)
                    return self.check(theta, p, e2, apply_ctx(theta, a2))
            case Pair(e1, e2), TEVar(av) if unsolved:
                self._rule("PairIntroSolve")
                a1, a2 = self._fresh_evar(av.name + "1"), self._fresh_evar(av.name + "2")
                gamma = ctx.replace(
                    av, [CEVar(a2, Sort.STAR), CEVar(a1, Sort.STAR), CSolved(av, Sort.STAR, TBin(BinOp.PROD, TEVar(a1), TEVar(a2)))]
                )
                with t.nest():
                    theta = self.check(gamma, SLASH, e1, TEVar(a1))
                    return self.check(theta, SLASH, e2, apply_ctx(theta, TEVar(a2)))
            case Nil(), TVec(n, _):
                self._rule("Nil")
                with t.nest():
                    return check_prop(ctx, Prop(n, TZero()), self.session, t)
            case Cons(e1, e2), TVec(n, a0):
                self._rule("Cons")
                ev = self._fresh_evar("n")
                with t.nest():
                    gamma = check_prop(ctx.extend(CMarker(ev), CEVar(ev, Sort.NAT)), Prop(n, TSucc(TEVar(ev))), self.session, t)
                    theta = self.check(gamma, p, e1, apply_ctx(gamma, a0))
                    out = self.check(theta, SLASH, e2, apply_ctx(theta, TVec(TEVar(ev), a0)))
                return out.truncate(CMarker(ev))
        if intro:
            raise TypeMismatch(f"this expression cannot have type {show(a)}", rule="check")
        return self._sub(ctx, e, a)

    def _sub(self, ctx: Ctx, e: Expr, b: Type) -> Ctx:
        self._rule("Sub")
        with self.tracer.nest():
            r = self.synth(ctx, e)
            return subtype(r.out, sub_polarity_for(b), r.ty, b, self.session, self.tracer)

    def _case(self, ctx: Ctx, p: Principality, e: Case, c: Type) -> Ctx:
        t = self.tracer
        self._rule("Case")
        with t.nest():
            r = self.synth(ctx, e.scrutinee)
            if r.princ is not BANG:
                raise NonPrincipalScrutinee(
                    "the scrutinee's type is not principal: annotate the scrutinee", rule="Case", span=e.scrutinee.span
                )
            theta = r.out
            a = apply_ctx(theta, r.ty)
            delta = self.match_branches(theta, p, e.branches, (a,), apply_ctx(theta, c))
            types = (apply_ctx(delta, a),)
            witness = self._covers(delta, tuple(e.branches), types)
            if witness is not None:
                raise CoverageError(f"patterns are not exhaustive: no branch covers {witness}", rule="Case", span=e.span)
        return delta

    # -- synthesis -------------------------------------------------------------

    def synth(self, ctx: Ctx, e: Expr) -> SynthResult:
        self._tick()
        try:
            r = self._synth(ctx, e)
        except TypeCheckError as err:
            raise err.with_span(e.span)
        self._post("synth", ctx, r)
        return r

    def _synth(self, ctx: Ctx, e: Expr) -> SynthResult:
        t = self.tracer
        match e:
            case Var(x):
                h = ctx.hyp(x)
                if h is None:
                    raise ScopeError(f"unbound variable {x.name}", rule="Var", span=e.span)
                self._rule("Var", lambda: x.name)
                return SynthResult(apply_ctx(ctx, h.ty), h.princ, ctx)
            case Anno(body, a):
                self._rule("Anno")
                check_wf_type(ctx, a, BANG)
                with t.nest():
                    delta = self.check(ctx, BANG, body, apply_ctx(ctx, a))
                return SynthResult(apply_ctx(delta, a), BANG, delta)
            case App(head, spine):
                self._rule("ArrElim")
                with t.nest():
                    r = self.synth(ctx, head)
                    return self.recspine(r.out, tuple(spine), apply_ctx(r.out, r.ty), r.princ)
        raise CannotSynthesize("cannot synthesize a type for this expression: annotate it", rule="synth", span=e.span)

    # -- spines ----------------------------------------------------------------

    def spine(self, ctx: Ctx, s: Sequence[Expr], a: Type, p: Principality) -> SpineResult:
        self._tick()
        r = self._spine(ctx, tuple(s), apply_ctx(ctx, a), p)
        self._post("spine", ctx, r)
        return r

    def _spine(self, ctx: Ctx, s: tuple[Expr, ...], a: Type, p: Principality) -> SpineResult:
        t = self.tracer
        if not s:
            self._rule("EmptySpine")
            return SynthResult(a, p, ctx)
        match a:
            case TForall(_, k, _):
                self._rule("AllSpine")
                ev, body = open_existential(a, self.session)
                with t.nest():
                    return self.spine(ctx.extend(CEVar(ev, k)), s, body, SLASH)
            case TImplies(prop, body):
                self._rule("ImpliesSpine")
                with t.nest():
                    theta = check_prop(ctx, prop, self.session, t)
                    return self.spine(theta, s, apply_ctx(theta, body), p)
            case TBin(BinOp.ARROW, a1, b):
                self._rule("ArrSpine")
                with t.nest():
                    theta = self.check(ctx, p, s[0], a1)
                    return self.spine(theta, s[1:], apply_ctx(theta, b), p)
            case TEVar(av) if ctx.is_unsolved(av):
                self._rule("SolveSpine")
                a1, a2 = self._fresh_evar(av.name + "1"), self._fresh_evar(av.name + "2")
                gamma = ctx.replace(
                    av, [CEVar(a2, Sort.STAR), CEVar(a1, Sort.STAR), CSolved(av, Sort.STAR, TBin(BinOp.ARROW, TEVar(a1), TEVar(a2)))]
                )
                with t.nest():
                    return self.spine(gamma, s, TBin(BinOp.ARROW, TEVar(a1), TEVar(a2)), SLASH)
        raise NotAFunction(f"cannot apply an expression of type {show(a)}", rule="spine", span=s[0].span)

    def recspine(self, ctx: Ctx, s: Sequence[Expr], a: Type, p: Principality) -> SpineResult:
        r = self.spine(ctx, s, a, p)
        if p is BANG and r.princ is SLASH:
            c = apply_ctx(r.out, r.ty)
            if not fev(c):
                self._rule("Recover")
                out = SynthResult(c, BANG, r.out)
                self._post("recspine", ctx, out)
                return out
        self._rule("Pass")
        self._post("recspine", ctx, r)
        return r

    # -- pattern matching ------------------------------------------------------

    def match_branches(
        self, ctx: Ctx, p: Principality, branches: Sequence[Branch], types: Sequence[Type], c: Type
    ) -> Ctx:
        t = self.tracer
        ctx_in = ctx
        for br in branches:
            self._rule("MatchSeq")
            with t.nest():
                ctx = self._match(ctx, p, br.pats, br.body, tuple(types), c)
        self._rule("MatchEmpty")
        self._post("match", ctx_in, ctx)
        return ctx

    def _match(
        self, ctx: Ctx, p: Principality, pats: tuple[Pattern, ...], body: Expr, types: tuple[Type, ...], c: Type
    ) -> Ctx:
        self._tick()
        t = self.tracer
        if not pats and not types:
            self._rule("MatchBase")
            with t.nest():
                return self.check(ctx, p, body, c)
        if not pats or not types:
            raise PatternMismatch("wrong number of patterns", rule="match", span=body.span)
        a = apply_ctx(ctx, types[0])
        rho, prest, trest = pats[0], pats[1:], types[1:]
        if isinstance(a, TExists):
            self._rule("MatchExists")
            v, inner = open_universal(ctx, a, self.session)
            with t.nest():
                out = self._match(ctx.extend(CUVar(v, a.sort)), p, pats, body, (inner,) + trest, c)
            return out.truncate(v)
        if isinstance(a, TWith):
            self._rule("MatchWith")
            with t.nest():
                return self.match_elim(ctx, p, pats, body, a.prop, (a.body,) + trest, c)
        match rho, a:
            case PVar(z), _:
                self._rule("MatchNeg", lambda: z.name)
                with t.nest():
                    out = self._match(ctx.extend(CHyp(z, a, BANG)), p, prest, body, trest, c)
                return out.truncate(z)
            case PWild(), _:
                self._rule("MatchWild")
                with t.nest():
                    return self._match(ctx, p, prest, body, trest, c)
            case PUnit(), TUnit():
                self._rule("MatchUnit")
                with t.nest():
                    return self._match(ctx, p, prest, body, trest, c)
            case PPair(r1, r2), TBin(BinOp.PROD, a1, a2):
                self._rule("MatchPair")
                with t.nest():
                    return self._match(ctx, p, (r1, r2) + prest, body, (a1, a2) + trest, c)
            case PInj(k, r), TBin(BinOp.SUM, a1, a2):
                self._rule(f"MatchSum{k}")
                with t.nest():
                    return self._match(ctx, p, (r,) + prest, body, (a1 if k == 1 else a2,) + trest, c)
            case PNil(), TVec(n, _):
                self._rule("MatchNil")
                with t.nest():
                    return self.match_elim(ctx, p, prest, body, Prop(n, TZero()), trest, c)
            case PCons(r1, r2), TVec(n, a0):
                self._rule("MatchCons")
                v = self.session.fresh("n", VarKind.UNIVERSAL)
                with t.nest():
                    out = self.match_elim(
                        ctx.extend(CUVar(v, Sort.NAT)),
                        p,
                        (r1, r2) + prest,
                        body,
                        Prop(n, TSucc(TUVar(v))),
                        (a0, TVec(TUVar(v), a0)) + trest,
                        c,
                    )
                return out.truncate(v)
        raise PatternMismatch(f"pattern does not match type {show(a)}", rule="match", span=body.span)

    def match_elim(
        self,
        ctx: Ctx,
        p: Principality,
        pats: tuple[Pattern, ...],
        body: Expr,
        prop: Prop,
        types: tuple[Type, ...],
        c: Type,
    ) -> Ctx:
        t = self.tracer
        tag = self.session.fresh("P", VarKind.TERM)
        theta = elim_eq(ctx.extend(CMarker(tag, prop)), prop.lhs, prop.rhs, Sort.NAT, self.session, t)
        if theta is BOTTOM:
            self._rule("MatchBot")
            return ctx
        self._rule("MatchUnify")
        with t.nest():
            out = self._match(theta, p, pats, body, tuple(types), c)
        return out.truncate(marker_key(tag))

    # -- coverage --------------------------------------------------------------

    def covers(self, ctx: Ctx, branches: Sequence[Branch], types: Sequence[Type]) -> bool:
        return self._covers(ctx, tuple(branches), tuple(types)) is None

    def covers_assuming(self, ctx: Ctx, prop: Prop, branches: Sequence[Branch], types: Sequence[Type]) -> bool:
        return self._covers_assuming(ctx, prop, tuple(branches), tuple(types)) is None

    def _covers(self, ctx: Ctx, branches: tuple[Branch, ...], types: tuple[Type, ...]) -> Optional[str]:
        """None when covered, otherwise a description of an uncovered case."""
        self._tick()
        t = self.tracer
        if self.debug:
            assert not any(fev(apply_ctx(ctx, a)) for a in types), "coverage on non-ground types"
        if not types:
            if branches and not branches[0].pats:
                self._rule("CoversEmpty")
                return None
            return "the remaining case"
        a = apply_ctx(ctx, types[0])
        rest = types[1:]
        if isinstance(a, TVec) and _heads_are_variables(branches):
            # CoversVec consumes no pattern here and would not terminate
            witness = self._covers_var(ctx, branches, rest)
            return None if witness is None else f"a value of {show(a)}"
        witness: Optional[str]
        try:
            match a:
                case TExists(_, k, _):
                    self._rule("CoversEx")
                    v, inner = open_universal(ctx, a, self.session)
                    with t.nest():
                        witness = self._covers(ctx.extend(CUVar(v, k)), branches, (inner,) + rest)
                case TWith(a0, prop):
                    self._rule("CoversWith")
                    with t.nest():
                        witness = self._covers_assuming(ctx, prop, branches, (a0,) + rest)
                case TUnit():
                    self._rule("CoversUnit")
                    with t.nest():
                        witness = self._covers(ctx, expand("unit", branches), rest)
                case TBin(BinOp.PROD, a1, a2):
                    self._rule("CoversTimes")
                    with t.nest():
                        witness = self._covers(ctx, expand("pair", branches), (a1, a2) + rest)
                case TBin(BinOp.SUM, a1, a2):
                    self._rule("CoversSum")
                    left, right = expand("sum", branches)
                    with t.nest():
                        witness = self._covers(ctx, left, (a1,) + rest)
                        if witness is None:
                            witness = self._covers(ctx, right, (a2,) + rest)
                        if witness is not None:
                            witness = f"a value of {show(a)}"
                case TVec(n, a0):
                    self._rule("CoversVec")
                    nils, conses = expand("vec", branches)
                    with t.nest():
                        witness = self._covers_assuming(ctx, Prop(n, TZero()), nils, rest)
                        if witness is not None:
                            witness = "[]"
                        else:
                            v = self.session.fresh("n", VarKind.UNIVERSAL)
                            witness = self._covers_assuming(
                                ctx.extend(CUVar(v, Sort.NAT)), Prop(n, TSucc(TUVar(v))), conses, (a0, TVec(TUVar(v), a0)) + rest
                            )
                            if witness is not None:
                                witness = "a nonempty vector"
                case _:
                    witness = self._covers_var(ctx, branches, rest)
                    if witness is not None:
                        witness = f"a value of {show(a)}"
                    return witness
        except PatternMismatch:
            witness = f"a value of {show(a)}"
        if witness is not None and _heads_are_variables(branches):
            alt = self._covers_var(ctx, branches, rest)
            if alt is None:
                return None
        return witness

    def _covers_var(self, ctx: Ctx, branches: tuple[Branch, ...], rest: tuple[Type, ...]) -> Optional[str]:
        try:
            expanded = expand("var", branches)
        except PatternMismatch:
            return "a value"
        self._rule("CoversVar")
        with self.tracer.nest():
            return self._covers(ctx, expanded, rest)

    def _covers_assuming(
        self, ctx: Ctx, prop: Prop, branches: tuple[Branch, ...], types: tuple[Type, ...]
    ) -> Optional[str]:
        theta = elim_eq(ctx, prop.lhs, prop.rhs, Sort.NAT, self.session, self.tracer)
        if theta is BOTTOM:
            self._rule("CoversEqBot")
            return None
        self._rule("CoversEq")
        # the new entries are universal-variable equations; apply them to the
        # branch annotations and the pending types
        mapping = {
            e.var: apply_ctx(theta, TUVar(e.var)) for e in theta.entries[len(ctx) :] if isinstance(e, CEqn)
        }
        with self.tracer.nest():
            return self._covers(theta, subst_branches(branches, mapping, self.session), tuple(apply_ctx(theta, a) for a in types))


def _heads_are_variables(branches: Sequence[Branch]) -> bool:
    return all(b.pats and isinstance(b.pats[0], (PVar, PWild)) for b in branches)


# ---------------------------------------------------------------------------
# Pattern expansion
# ---------------------------------------------------------------------------


def expand(mode: str, branches: Sequence[Branch]):
    """Expand the head patterns of ``branches``.

    ``var``/``unit``/``pair`` return one branch list; ``sum`` returns the
    (left, right) pair and ``vec`` the (nil, cons) pair. Raises
    ``PatternMismatch`` when a head pattern has the wrong shape."""
    one: list[Branch] = []
    two: list[Branch] = []

    def emit(into: list, pats: tuple, b: Branch) -> None:
        into.append(Branch(pats, b.body, span=b.span))

    for b in branches:
        if not b.pats:
            raise PatternMismatch("branch has no pattern left to expand", rule="expand")
        h, rest = b.pats[0], b.pats[1:]
        var = isinstance(h, (PVar, PWild))
        match mode:
            case "var":
                if not var:
                    raise PatternMismatch("non-variable pattern", rule="expandvar")
                emit(one, rest, b)
            case "unit":
                if not (var or isinstance(h, PUnit)):
                    raise PatternMismatch("pattern does not match the unit type", rule="expandunit")
                emit(one, rest, b)
            case "pair":
                if isinstance(h, PPair):
                    emit(one, (h.left, h.right) + rest, b)
                elif var:
                    emit(one, (_WILD, _WILD) + rest, b)
                else:
                    raise PatternMismatch("pattern does not match a product", rule="expandpair")
            case "sum":
                if isinstance(h, PInj):
                    emit(one if h.k == 1 else two, (h.body,) + rest, b)
                elif var:
                    emit(one, (_WILD,) + rest, b)
                    emit(two, (_WILD,) + rest, b)
                else:
                    raise PatternMismatch("pattern does not match a sum", rule="expandsum")
            case "vec":
                if isinstance(h, PNil):
                    emit(one, rest, b)
                elif isinstance(h, PCons):
                    emit(two, (h.head, h.tail) + rest, b)
                elif var:
                    emit(one, rest, b)
                    emit(two, (_WILD, _WILD) + rest, b)
                else:
                    raise PatternMismatch("pattern does not match a vector", rule="expandvec")
            case _:
                raise ValueError(f"unknown expansion mode {mode!r}")
    if mode in ("sum", "vec"):
        return tuple(one), tuple(two)
    return tuple(one)


# ---------------------------------------------------------------------------
# Functional interface
# ---------------------------------------------------------------------------


def check(ctx: Ctx, p: Principality, e: Expr, a: Type, session: Optional[Session] = None, tracer: Tracer = NULL_TRACER) -> Ctx:
    return Checker(session, tracer).check(ctx, p, e, a)


def synth(ctx: Ctx, e: Expr, session: Optional[Session] = None, tracer: Tracer = NULL_TRACER) -> SynthResult:
    return Checker(session, tracer).synth(ctx, e)


def spine(ctx: Ctx, s: Sequence[Expr], a: Type, p: Principality, session: Optional[Session] = None, tracer: Tracer = NULL_TRACER) -> SpineResult:
    return Checker(session, tracer).spine(ctx, s, a, p)


def recspine(ctx: Ctx, s: Sequence[Expr], a: Type, p: Principality, session: Optional[Session] = None, tracer: Tracer = NULL_TRACER) -> SpineResult:
    return Checker(session, tracer).recspine(ctx, s, a, p)


def match_branches(ctx, p, branches, types, c, session=None, tracer: Tracer = NULL_TRACER) -> Ctx:
    return Checker(session, tracer).match_branches(ctx, p, branches, types, c)


def covers(ctx: Ctx, branches, types, session: Optional[Session] = None) -> bool:
    return Checker(session).covers(ctx, branches, types)


def covers_assuming(ctx: Ctx, prop: Prop, branches, types, session: Optional[Session] = None) -> bool:
    return Checker(session).covers_assuming(ctx, prop, branches, types)
