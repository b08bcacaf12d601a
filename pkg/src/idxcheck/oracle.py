"""A fuel-bounded search over the declarative rules, used as a test oracle.

Declarative contexts are ``Ctx`` values holding only universal declarations
and evar-free hypotheses. Rules that guess a monotype (DeclAllSpine, DsubAllL,
DsubExistsR) enumerate every well-sorted term up to ``Fuel.guess_size``.

A search answers True when it finds a derivation. It answers False only when
no guess enumeration or depth cut was involved; otherwise the answer is
unknown, reported as ``FuelExhausted`` (or ``None`` from ``verdict``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .checker import expand
from .context import CHyp, CUVar, Ctx, check_wf_type
from .errors import FuelExhausted, PatternMismatch, TypeCheckError
from .subtype import open_universal, sub_polarity_for
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
    Polarity,
    Principality,
    Prop,
    Rec,
    Session,
    Sort,
    TBin,
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
    alpha_key,
    fuv,
    is_checked_intro,
    open_quant,
    polarity,
    subst,
    subst_branches,
    subst_expr,
)

Subst = dict[Ident, Type]


@dataclass(frozen=True)
class Fuel:
    guess_size: int = 3
    depth: int = 32
    max_steps: int = 200_000

    def __post_init__(self) -> None:
        if self.guess_size < 1 or self.depth < 1 or self.max_steps < 1:
            raise ValueError("fuel bounds must be positive")


DEFAULT_FUEL = Fuel()


# ---------------------------------------------------------------------------
# Unification
# ---------------------------------------------------------------------------


def apply_subst(theta: Subst, x):
    return subst(x, theta) if theta else x


def mgu(sigma: Type, t: Type) -> Optional[Subst]:
    """Most general unifier of two first-order terms, or None.

    Universal variables are the unknowns. A variable on the left is bound in
    preference to one on the right, and left components are solved first."""
    theta: Subst = {}
    work: list[tuple[Type, Type]] = [(sigma, t)]
    while work:
        a, b = work.pop()
        a, b = apply_subst(theta, a), apply_subst(theta, b)
        if a == b:
            continue
        match a, b:
            case TUVar(x), _:
                if x in fuv(b):
                    return None
                theta = _bind(theta, x, b)
            case _, TUVar(y):
                if y in fuv(a):
                    return None
                theta = _bind(theta, y, a)
            case TSucc(a1), TSucc(b1):
                work.append((a1, b1))
            case TBin(op1, a1, a2), TBin(op2, b1, b2) if op1 is op2:
                work.append((a2, b2))
                work.append((a1, b1))
            case _:
                return None
    return theta


def _bind(theta: Subst, x: Ident, t: Type) -> Subst:
    out = {v: subst(u, {x: t}) for v, u in theta.items()}
    out[x] = t
    return out


def subst_ctx(theta: Subst, psi: Ctx) -> Ctx:
    """theta(psi): substitute into hypotheses; declarations are kept."""
    if not theta:
        return psi
    return Ctx(CHyp(e.var, subst(e.ty, theta), e.princ) if isinstance(e, CHyp) else e for e in psi.entries)


# ---------------------------------------------------------------------------
# Guessing
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _terms(vars_: tuple[Ident, ...], sort: Sort, n: int) -> tuple[Type, ...]:
    """All terms of ``sort`` with exactly ``n`` nodes over ``vars_``."""
    if n <= 0:
        return ()
    out: list[Type] = []
    if sort is Sort.STAR:
        if n == 1:
            out.append(TUnit())
            out.extend(TUVar(v) for v in vars_)
        for k in range(1, n - 1):
            for l in _terms(vars_, sort, k):
                for r in _terms(vars_, sort, n - 1 - k):
                    for op in BinOp:
                        out.append(TBin(op, l, r))
    else:
        if n == 1:
            out.append(TZero())
            out.extend(TUVar(v) for v in vars_)
        else:
            out.extend(TSucc(t) for t in _terms(vars_, sort, n - 1))
    return tuple(out)


def guesses(psi: Ctx, sort: Sort, max_size: int) -> Iterator[Type]:
    vars_ = tuple(e.var for e in psi.entries if isinstance(e, CUVar) and e.sort is sort)
    for n in range(1, max_size + 1):
        yield from _terms(vars_, sort, n)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _ctx_key(psi: Ctx):
    return tuple(
        (e.var.uid, e.sort) if isinstance(e, CUVar) else (e.var.uid, alpha_key(e.ty), e.princ)
        for e in psi.entries
        if isinstance(e, (CUVar, CHyp))
    )


def _holds(p: Prop) -> bool:
    return p.lhs == p.rhs


def _with_or_exists(a: Type) -> bool:
    return isinstance(a, (TWith, TExists))


class Oracle:
    """One declarative query. ``incomplete`` records whether any part of the
    search space was cut off by the guess bound or the depth bound."""

    def __init__(self, fuel: Fuel = DEFAULT_FUEL, session: Optional[Session] = None):
        self.fuel = fuel
        self.session = session or Session(1 << 40)
        self.incomplete = False
        self.steps = 0
        self._sub_path: set = set()

    def _enter(self, d: int) -> bool:
        self.steps += 1
        if self.steps > self.fuel.max_steps:
            raise FuelExhausted("oracle step budget exhausted")
        if d > self.fuel.depth:
            self.incomplete = True
            return False
        return True

    def _guesses(self, psi: Ctx, sort: Sort) -> Iterator[Type]:
        self.incomplete = True
        return guesses(psi, sort, self.fuel.guess_size)

    def _push(self, psi: Ctx, q) -> tuple[Ctx, Type]:
        v, body = open_universal(psi, q, self.session)
        return psi.extend(CUVar(v, q.sort)), body

    # -- subtyping -------------------------------------------------------------

    def sub(self, psi: Ctx, pol: Polarity, a: Type, b: Type, d: int = 0) -> bool:
        if not self._enter(d):
            return False
        key = (pol, alpha_key(a), alpha_key(b), len(psi))
        if key in self._sub_path:
            return False
        self._sub_path.add(key)
        try:
            return self._sub(psi, pol, a, b, d + 1)
        finally:
            self._sub_path.discard(key)

    def _sub(self, psi: Ctx, pol: Polarity, a: Type, b: Type, d: int) -> bool:
        pa, pb = polarity(a), polarity(b)
        # DsubReflPm
        if pa is Polarity.NONPOLAR and alpha_key(a) == alpha_key(b) and _wf(psi, a):
            return True
        if pol is Polarity.POS:
            if pa is not Polarity.POS and pb is not Polarity.POS and self.sub(psi, Polarity.NEG, a, b, d):
                return True  # DsubPosNeg
            if isinstance(a, TExists):
                psi2, body = self._push(psi, a)
                if self.sub(psi2, pol, body, b, d):
                    return True  # DsubExistsL
            if isinstance(b, TExists):
                for tau in self._guesses(psi, b.sort):
                    if self.sub(psi, pol, a, open_quant(b, tau, self.session), d):
                        return True  # DsubExistsR
        else:
            if pa is not Polarity.NEG and pb is not Polarity.NEG and self.sub(psi, Polarity.POS, a, b, d):
                return True  # DsubNegPos
            if isinstance(b, TForall):
                psi2, body = self._push(psi, b)
                if self.sub(psi2, pol, a, body, d):
                    return True  # DsubAllR
            if isinstance(a, TForall):
                for tau in self._guesses(psi, a.sort):
                    if self.sub(psi, pol, open_quant(a, tau, self.session), b, d):
                        return True  # DsubAllL
        return False

    # -- checking --------------------------------------------------------------

    def check(self, psi: Ctx, p: Principality, e: Expr, c: Type, d: int = 0) -> bool:
        if not self._enter(d):
            return False
        d += 1
        intro = is_checked_intro(e)
        if isinstance(e, Rec) and self.check(psi.extend(CHyp(e.var, c, p)), p, e.body, c, d):
            return True
        if intro and isinstance(c, TForall):
            psi2, body = self._push(psi, c)
            if self.check(psi2, p, e, body, d):
                return True
        if intro and isinstance(c, TImplies) and p is BANG:
            if self.check_under(psi, c.prop, BANG, e, c.body, d):
                return True
        if isinstance(c, TWith) and _holds(c.prop) and self.check(psi, p, e, c.body, d):
            return True
        match e, c:
            case UnitE(), TUnit():
                return True
            case Lam(x, body), TBin(BinOp.ARROW, a1, a2):
                if self.check(psi.extend(CHyp(x, a1, p)), p, body, a2, d):
                    return True
            case Inj(k, body), TBin(BinOp.SUM, a1, a2):
                if self.check(psi, p, body, a1 if k == 1 else a2, d):
                    return True
            case Pair(e1, e2), TBin(BinOp.PROD, a1, a2):
                if self.check(psi, p, e1, a1, d) and self.check(psi, p, e2, a2, d):
                    return True
            case Nil(), TVec(t, _):
                if t == TZero():
                    return True
            case Cons(e1, e2), TVec(TSucc(t2), a0):
                if self.check(psi, p, e1, a0, d) and self.check(psi, SLASH, e2, TVec(t2, a0), d):
                    return True
            case Case(scrut, branches), _:
                if self._case(psi, p, scrut, branches, c, d):
                    return True
        pol = sub_polarity_for(c)
        for a, _q in self.synth(psi, e, d):
            if self.sub(psi, pol, a, c, d):
                return True  # DeclSub
        return False

    def _case(self, psi: Ctx, p: Principality, scrut: Expr, branches, c: Type, d: int) -> bool:
        for a, q in self.synth(psi, scrut, d):
            if q is not BANG:
                continue
            if self.match(psi, p, branches, (a,), c, d) and self.covers(psi, tuple(branches), (a,), d):
                return True
        return False

    def check_under(self, psi: Ctx, prop: Prop, p: Principality, e: Expr, c: Type, d: int) -> bool:
        """DeclCheckBot / DeclCheckUnify."""
        theta = mgu(prop.lhs, prop.rhs)
        if theta is None:
            return True
        return self.check(
            subst_ctx(theta, psi), p, subst_expr(e, theta, self.session), subst(c, theta, self.session), d
        )

    # -- synthesis and spines --------------------------------------------------

    def synth(self, psi: Ctx, e: Expr, d: int = 0) -> list[tuple[Type, Principality]]:
        if not self._enter(d):
            return []
        d += 1
        match e:
            case Var(x):
                h = psi.hyp(x)
                return [] if h is None else [(h.ty, h.princ)]
            case Anno(body, a):
                if _wf(psi, a, BANG) and self.check(psi, BANG, body, a, d):
                    return [(a, BANG)]
                return []
            case App(head, s):
                out: dict = {}
                for a, p in self.synth(psi, head, d):
                    for c, q in self.recspine(psi, tuple(s), a, p, d):
                        out.setdefault((alpha_key(c), q), (c, q))
                return list(out.values())
        return []

    def recspine(self, psi: Ctx, s: tuple[Expr, ...], a: Type, p: Principality, d: int) -> list:
        results = self.spine(psi, s, a, p, d)
        out = list(results)
        if p is BANG:
            slash = {alpha_key(c): c for c, q in results if q is SLASH}
            if len(slash) == 1:
                (c,) = slash.values()
                out.append((c, BANG))  # DeclRecover
        return _dedup(out)

    def spine(self, psi: Ctx, s: tuple[Expr, ...], a: Type, p: Principality, d: int) -> list:
        if not self._enter(d):
            return []
        d += 1
        if not s:
            return [(a, p)]
        out: list = []
        match a:
            case TForall(_, k, _):
                for tau in self._guesses(psi, k):
                    out.extend(self.spine(psi, s, open_quant(a, tau, self.session), SLASH, d))
            case TImplies(prop, body):
                if _holds(prop):
                    out.extend(self.spine(psi, s, body, p, d))
            case TBin(BinOp.ARROW, a1, b):
                if self.check(psi, p, s[0], a1, d):
                    out.extend(self.spine(psi, s[1:], b, p, d))
        return _dedup(out)

    # -- matching --------------------------------------------------------------

    def match(self, psi: Ctx, p: Principality, branches, types: tuple[Type, ...], c: Type, d: int) -> bool:
        return all(self._match(psi, p, br.pats, br.body, types, c, d) for br in branches)

    def _match(self, psi: Ctx, p: Principality, pats, body: Expr, types, c: Type, d: int) -> bool:
        if not self._enter(d):
            return False
        d += 1
        if not pats and not types:
            return self.check(psi, p, body, c, d)
        if not pats or not types:
            return False
        a, rho, prest, trest = types[0], pats[0], tuple(pats[1:]), tuple(types[1:])
        if isinstance(a, TExists):
            psi2, inner = self._push(psi, a)
            return self._match(psi2, p, pats, body, (inner,) + trest, c, d)
        if isinstance(a, TWith):
            return self.match_elim(psi, p, pats, body, a.prop, (a.body,) + trest, c, d)
        match rho, a:
            case PVar(z), _:
                return self._match(psi.extend(CHyp(z, a, BANG)), p, prest, body, trest, c, d)
            case PWild(), _:
                return self._match(psi, p, prest, body, trest, c, d)
            case PUnit(), TUnit():
                return self._match(psi, p, prest, body, trest, c, d)
            case PPair(r1, r2), TBin(BinOp.PROD, a1, a2):
                return self._match(psi, p, (r1, r2) + prest, body, (a1, a2) + trest, c, d)
            case PInj(k, r), TBin(BinOp.SUM, a1, a2):
                return self._match(psi, p, (r,) + prest, body, (a1 if k == 1 else a2,) + trest, c, d)
            case PNil(), TVec(t, _):
                return self.match_elim(psi, p, prest, body, Prop(t, TZero()), trest, c, d)
            case PCons(r1, r2), TVec(t, a0):
                n = self.session.fresh("n", VarKind.UNIVERSAL)
                return self.match_elim(
                    psi.extend(CUVar(n, Sort.NAT)),
                    p,
                    (r1, r2) + prest,
                    body,
                    Prop(t, TSucc(TUVar(n))),
                    (a0, TVec(TUVar(n), a0)) + trest,
                    c,
                    d,
                )
        return False

    def match_elim(self, psi: Ctx, p: Principality, pats, body: Expr, prop: Prop, types, c: Type, d: int) -> bool:
        theta = mgu(prop.lhs, prop.rhs)
        if theta is None:
            return True  # DeclMatchBot
        return self._match(
            subst_ctx(theta, psi),
            p,
            pats,
            subst_expr(body, theta, self.session),
            tuple(subst(a, theta, self.session) for a in types),
            subst(c, theta, self.session),
            d,
        )

    # -- coverage --------------------------------------------------------------

    def covers(self, psi: Ctx, branches: tuple[Branch, ...], types: tuple[Type, ...], d: int = 0) -> bool:
        if not self._enter(d):
            return False
        d += 1
        if not types:
            return bool(branches) and not branches[0].pats
        a, rest = types[0], types[1:]
        attempt = _try_expand
        if (bs := attempt("var", branches)) is not None and self.covers(psi, bs, rest, d):
            return True  # DeclCoversVar
        match a:
            case TExists():
                psi2, inner = self._push(psi, a)
                return self.covers(psi2, branches, (inner,) + rest, d)
            case TWith(a0, prop):
                return self.covers_eq(psi, prop, branches, (a0,) + rest, d)
            case TUnit():
                bs = attempt("unit", branches)
                return bs is not None and self.covers(psi, bs, rest, d)
            case TBin(BinOp.PROD, a1, a2):
                bs = attempt("pair", branches)
                return bs is not None and self.covers(psi, bs, (a1, a2) + rest, d)
            case TBin(BinOp.SUM, a1, a2):
                lr = attempt("sum", branches)
                return lr is not None and self.covers(psi, lr[0], (a1,) + rest, d) and self.covers(psi, lr[1], (a2,) + rest, d)
            case TVec(t, a0) if not all(isinstance(b.pats[0], (PVar, PWild)) for b in branches):
                nc = attempt("vec", branches)
                if nc is None or not self.covers_eq(psi, Prop(t, TZero()), nc[0], rest, d):
                    return False
                n = self.session.fresh("n", VarKind.UNIVERSAL)
                return self.covers_eq(
                    psi.extend(CUVar(n, Sort.NAT)), Prop(t, TSucc(TUVar(n))), nc[1], (a0, TVec(TUVar(n), a0)) + rest, d
                )
        return False

    def covers_eq(self, psi: Ctx, prop: Prop, branches, types, d: int) -> bool:
        theta = mgu(prop.lhs, prop.rhs)
        if theta is None:
            return True  # DeclCoversEqBot
        return self.covers(
            subst_ctx(theta, psi),
            subst_branches(branches, theta, self.session),
            tuple(subst(a, theta, self.session) for a in types),
            d,
        )


def _try_expand(mode: str, branches):
    try:
        return expand(mode, branches)
    except PatternMismatch:
        return None


def _dedup(results) -> list:
    out: dict = {}
    for c, q in results:
        out.setdefault((alpha_key(c), q), (c, q))
    return list(out.values())


def _wf(psi: Ctx, a: Type, p: Principality = SLASH) -> bool:
    try:
        check_wf_type(psi, a, p)
    except TypeCheckError:
        return False
    return True


# ---------------------------------------------------------------------------
# Public interface
# ---------------------------------------------------------------------------


def _run(query: Callable[[Oracle], bool], fuel: Fuel, session: Optional[Session]) -> bool:
    o = Oracle(fuel, session)
    if query(o):
        return True
    if o.incomplete:
        raise FuelExhausted("no derivation found within the fuel bounds")
    return False


def verdict(query: Callable[[], bool]) -> Optional[bool]:
    """True/False, or None when the oracle cannot decide within its fuel."""
    try:
        return query()
    except FuelExhausted:
        return None


def decl_sub(psi: Ctx, pol: Polarity, a: Type, b: Type, fuel: Fuel = DEFAULT_FUEL, session: Optional[Session] = None) -> bool:
    return _run(lambda o: o.sub(psi, pol, a, b), fuel, session)


def decl_typecheck(
    psi: Ctx, p: Principality, e: Expr, a: Type, fuel: Fuel = DEFAULT_FUEL, session: Optional[Session] = None
) -> bool:
    return _run(lambda o: o.check(psi, p, e, a), fuel, session)


def decl_synthesizes(
    psi: Ctx, e: Expr, a: Type, p: Principality, fuel: Fuel = DEFAULT_FUEL, session: Optional[Session] = None
) -> bool:
    """Whether psi |- e => a p is derivable."""
    key = alpha_key(a)
    return _run(lambda o: any(alpha_key(b) == key and q is p for b, q in o.synth(psi, e)), fuel, session)


def decl_synth(psi: Ctx, e: Expr, fuel: Fuel = DEFAULT_FUEL, session: Optional[Session] = None) -> list:
    """Every (type, principality) the bounded search derives for ``e``."""
    o = Oracle(fuel, session)
    return o.synth(psi, e)


def decl_covers(
    psi: Ctx, branches: Sequence[Branch], types: Sequence[Type], fuel: Fuel = DEFAULT_FUEL, session: Optional[Session] = None
) -> bool:
    return _run(lambda o: o.covers(psi, tuple(branches), tuple(types)), fuel, session)
