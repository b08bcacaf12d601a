"""Random generators for property tests and experiments.

Every generator takes an explicit ``random.Random`` so runs are reproducible
from a seed, and a ``Session`` that supplies fresh identifiers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .context import CEqn, CEVar, CHyp, CMarker, CSolved, CUVar, Ctx, apply_ctx
from .errors import TypeCheckError
from .solve import instantiate
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
    PUnit,
    PVar,
    PWild,
    Pair,
    Pattern,
    Prop,
    Rec,
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
    expr_size,
    fev,
    fuv,
    size,
)

_OPS = (BinOp.ARROW, BinOp.SUM, BinOp.PROD)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


def term(rng: random.Random, sort: Sort, atoms: list[Type], max_size: int) -> Type:
    """A random term of ``sort`` with at most ``max_size`` nodes. ``atoms`` are
    the variables (as ``TUVar``/``TEVar``) of that sort that may occur."""
    if sort is Sort.NAT:
        if max_size > 1 and rng.random() < 0.5:
            return TSucc(term(rng, sort, atoms, max_size - 1))
        return rng.choice(atoms) if atoms and rng.random() < 0.6 else TZero()
    if max_size >= 3 and rng.random() < 0.45:
        left = rng.randint(1, max_size - 2)
        return TBin(rng.choice(_OPS), term(rng, sort, atoms, left), term(rng, sort, atoms, max_size - 1 - left))
    return rng.choice(atoms) if atoms and rng.random() < 0.6 else TUnit()


def ctx_atoms(ctx: Ctx, sort: Sort, evars: bool = True) -> list[Type]:
    out: list[Type] = []
    for e in ctx.entries:
        if isinstance(e, CUVar) and e.sort is sort:
            out.append(TUVar(e.var))
        elif evars and isinstance(e, (CEVar, CSolved)) and e.sort is sort:
            out.append(TEVar(e.var))
    return out


def ground_pair(rng: random.Random, uvars: dict[Sort, list[Type]], max_size: int = 6) -> tuple[Type, Type, Sort]:
    """Two evar-free terms of one sort. Half the time the second is a
    perturbed copy of the first, so that unifiable pairs are common."""
    sort = rng.choice((Sort.NAT, Sort.STAR))
    atoms = uvars.get(sort, [])
    a = term(rng, sort, atoms, max_size)
    if rng.random() < 0.5:
        b = _perturb(rng, a, sort, atoms, max_size)
    else:
        b = term(rng, sort, atoms, max_size)
    return a, b, sort


def _perturb(rng: random.Random, t: Type, sort: Sort, atoms: list[Type], max_size: int) -> Type:
    if rng.random() < 0.3 or size(t) == 1:
        return term(rng, sort, atoms, max(1, min(max_size, size(t))))
    match t:
        case TSucc(a):
            return TSucc(_perturb(rng, a, sort, atoms, max_size - 1))
        case TBin(op, l, r):
            if rng.random() < 0.5:
                return TBin(op, _perturb(rng, l, sort, atoms, size(l)), r)
            return TBin(op, l, _perturb(rng, r, sort, atoms, size(r)))
    return t


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------


def context(rng: random.Random, session: Session, n: int) -> Ctx:
    """A well-formed algorithmic context with about ``n`` entries."""
    ctx = Ctx()
    for _ in range(n):
        r = rng.random()
        sort = rng.choice((Sort.STAR, Sort.NAT))
        if r < 0.25:
            ctx = ctx.extend(CUVar(session.fresh(rng.choice("abcmn"), VarKind.UNIVERSAL), sort))
        elif r < 0.5:
            ctx = ctx.extend(CEVar(session.fresh(rng.choice("abcmn"), VarKind.EXISTENTIAL), sort))
        elif r < 0.65:
            v = session.fresh(rng.choice("abcmn"), VarKind.EXISTENTIAL)
            ctx = ctx.extend(CSolved(v, sort, term(rng, sort, ctx_atoms(ctx, sort), 4)))
        elif r < 0.8:
            a = mono_or_poly(rng, session, ctx, 4)
            p = BANG if not fev(apply_ctx(ctx, a)) and rng.random() < 0.6 else SLASH
            ctx = ctx.extend(CHyp(session.fresh(rng.choice("xyz"), VarKind.TERM), a, p))
        elif r < 0.9:
            ctx = ctx.extend(CMarker(session.fresh("m", VarKind.EXISTENTIAL)))
        else:
            free = [e.var for e in ctx.entries if isinstance(e, CUVar) and ctx.equation(e.var) is None]
            if free:
                v = rng.choice(free)
                k = ctx.var_sort(v)
                t = apply_ctx(ctx, term(rng, k, ctx_atoms(ctx, k, evars=False), 3))
                if TUVar(v) != t and v not in fuv(t):
                    ctx = ctx.extend(CEqn(v, t))
    return ctx


def extension_step(rng: random.Random, session: Session, ctx: Ctx) -> Ctx:
    """One random step of context extension: solve an evar, add an evar, or
    articulate an evar, always producing a context that ``ctx`` extends to."""
    unsolved = ctx.unsolved()
    r = rng.random()
    if unsolved and r < 0.5:
        alpha = rng.choice(unsolved)
        k = ctx.var_sort(alpha)
        left, _, _ = ctx.split_at(alpha)
        tau = term(rng, k, ctx_atoms(left, k), 4)
        try:
            return instantiate(ctx, alpha, tau, k, session)
        except TypeCheckError:
            return ctx
    if r < 0.8:
        k = rng.choice((Sort.STAR, Sort.NAT))
        v = session.fresh(rng.choice("abn"), VarKind.EXISTENTIAL)
        entry = CEVar(v, k) if rng.random() < 0.5 else CSolved(v, k, term(rng, k, ctx_atoms(ctx, k), 3))
        return ctx.extend(entry)
    if unsolved:
        # insert a fresh evar just before an unsolved one
        alpha = rng.choice(unsolved)
        k = ctx.var_sort(alpha)
        v = session.fresh(alpha.name + "0", VarKind.EXISTENTIAL)
        return ctx.replace(alpha, [CEVar(v, k), CEVar(alpha, k)])
    return ctx


def extension_chain(rng: random.Random, session: Session, ctx: Ctx, steps: int) -> Ctx:
    for _ in range(steps):
        ctx = extension_step(rng, session, ctx)
    return ctx


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


def index(rng: random.Random, nat_atoms: list[Type], depth: int = 3) -> Type:
    """An index term no bigger than succ^depth of a variable or zero."""
    base = rng.choice(nat_atoms) if nat_atoms and rng.random() < 0.5 else TZero()
    for _ in range(rng.randint(0, depth)):
        base = TSucc(base)
    return base


def mono_or_poly(rng: random.Random, session: Session, ctx: Ctx, max_size: int, evars: bool = True) -> Type:
    star = ctx_atoms(ctx, Sort.STAR, evars)
    nat = ctx_atoms(ctx, Sort.NAT, evars)
    return poly_type(rng, session, star, nat, max_size)


def poly_type(rng: random.Random, session: Session, star: list[Type], nat: list[Type], max_size: int) -> Type:
    """A random well-formed type of at most ``max_size`` nodes whose free
    variables come from ``star`` and ``nat``."""
    a = _poly(rng, session, list(star), list(nat), rng.randint(1, max(1, max_size)))
    return a if size(a) <= max_size else TUnit()


def _leaf(rng: random.Random, star: list[Type]) -> Type:
    return rng.choice(star) if star and rng.random() < 0.6 else TUnit()


def _poly(rng: random.Random, session: Session, star: list[Type], nat: list[Type], n: int) -> Type:
    """A type of roughly ``n`` nodes (never more)."""
    if n <= 1:
        return _leaf(rng, star)
    options = ["bin"] * 4 + ["quant"] * 3
    if n >= 2:
        options += ["vec"] * 2
    if n >= 4 and nat:
        options += ["guard"]
    choice = rng.choice(options) if n >= 3 else rng.choice(["quant", "vec"])
    if choice == "quant":
        k = Sort.STAR if rng.random() < 0.6 else Sort.NAT
        v = session.fresh(rng.choice("ab") if k is Sort.STAR else rng.choice("nm"), VarKind.UNIVERSAL)
        s2, n2 = (star + [TUVar(v)], nat) if k is Sort.STAR else (star, nat + [TUVar(v)])
        cls = TForall if rng.random() < 0.6 else TExists
        return cls(v, k, _poly(rng, session, s2, n2, n - 1))
    if choice == "bin":
        left = rng.randint(1, n - 2)
        return TBin(rng.choice(_OPS), _poly(rng, session, star, nat, left), _poly(rng, session, star, nat, n - 1 - left))
    if choice == "vec":
        t = index(rng, nat, min(3, max(0, n - 3)))
        return TVec(t, _poly(rng, session, star, nat, max(1, n - 1 - size(t))))
    p = Prop(rng.choice(nat), index(rng, nat, 0))
    body = _poly(rng, session, star, nat, max(1, n - 1 - size(p)))
    return TImplies(p, body) if rng.random() < 0.5 else TWith(body, p)


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass
class _Env:
    hyps: list[tuple[Ident, Type]]
    star: list[Type]
    nat: list[Type]


class ExprGen:
    """Type-directed generation of closed expressions.

    ``noise`` is the probability of ignoring the target type at a node, so the
    output mixes well-typed and ill-typed programs."""

    def __init__(self, rng: random.Random, session: Session, noise: float = 0.2):
        self.rng = rng
        self.session = session
        self.noise = noise

    def fresh(self, name: str) -> Ident:
        return self.session.fresh(name, VarKind.TERM)

    def program(self, max_type: int = 5, max_expr: int = 7) -> tuple[Expr, Type]:
        """A closed pair (e, A) with size(A) <= max_type and expr_size(e) <= max_expr."""
        for _ in range(100):
            a = _poly(self.rng, self.session, [], [], self.rng.choice((2, 3, 4, 5, 5, 5)))
            if size(a) > max_type:
                continue
            e = self.expr(_Env([], [], []), a, max_expr)
            if expr_size(e) <= max_expr:
                return e, a
        return UnitE(), TUnit()

    def expr(self, env: _Env, a: Type, n: int) -> Expr:
        rng = self.rng
        if n <= 1:
            return self.leaf(env, a)
        if rng.random() < self.noise:
            return self.any_expr(env, n)
        if n >= 5 and rng.random() < 0.15:
            return self.via_identity(env, a, n)
        if n >= 3 and rng.random() < 0.1:
            return Anno(self.expr(env, a, n - 1), a)
        match a:
            case TForall(v, k, body):
                env2 = _Env(env.hyps, env.star + [TUVar(v)] if k is Sort.STAR else env.star, env.nat + [TUVar(v)] if k is Sort.NAT else env.nat)
                return self.expr(env2, body, n)
            case TImplies(_, body) | TWith(body, _):
                return self.expr(env, body, n)
            case TExists(v, k, body):
                return self.leaf(env, a)
            case TBin(BinOp.ARROW, a1, a2):
                if rng.random() < 0.15 and n >= 3:
                    f = self.fresh("f")
                    x = self.fresh("x")
                    return Rec(f, Lam(x, self.expr(_Env(env.hyps + [(f, a), (x, a1)], env.star, env.nat), a2, n - 2)))
                x = self.fresh(rng.choice("xyz"))
                return Lam(x, self.expr(_Env(env.hyps + [(x, a1)], env.star, env.nat), a2, n - 1))
            case TBin(BinOp.SUM, a1, a2):
                k = rng.choice((1, 2))
                return Inj(k, self.expr(env, a1 if k == 1 else a2, n - 1))
            case TBin(BinOp.PROD, a1, a2):
                m = max(1, (n - 1) // 2)
                return Pair(self.expr(env, a1, m), self.expr(env, a2, n - 1 - m))
            case TVec(TSucc(t), el):
                m = max(1, (n - 1) // 2)
                return Cons(self.expr(env, el, m), self.expr(env, TVec(t, el), n - 1 - m))
            case TVec(_, _):
                if rng.random() < 0.3 and n >= 4:
                    return self.case_on_vec(env, a, n)
                return Nil()
        if rng.random() < 0.3 and n >= 4:
            return self.case_expr(env, a, n)
        return self.leaf(env, a)

    def via_identity(self, env: _Env, a: Type, n: int) -> Expr:
        """(\\x -> x : forall b. b -> b) applied to an expression aimed at ``a``."""
        b = self.session.fresh("b", VarKind.UNIVERSAL)
        x = self.fresh("x")
        ident = Anno(Lam(x, Var(x)), TForall(b, Sort.STAR, TBin(BinOp.ARROW, TUVar(b), TUVar(b))))
        return App(ident, (self.expr(env, a, n - 4),))

    def leaf(self, env: _Env, a: Type) -> Expr:
        rng = self.rng
        fitting = [x for x, t in env.hyps if t == a]
        if fitting and rng.random() < 0.7:
            return Var(rng.choice(fitting))
        if env.hyps and rng.random() < 0.25:
            return Var(rng.choice(env.hyps)[0])
        match a:
            case TVec(TZero(), _):
                return Nil()
        return rng.choice((UnitE(), UnitE(), Nil()))

    def any_expr(self, env: _Env, n: int) -> Expr:
        rng = self.rng
        r = rng.random()
        if r < 0.3 and env.hyps and n >= 2:
            f = Var(rng.choice(env.hyps)[0])
            return App(f, tuple(self.any_expr(env, 1) for _ in range(rng.randint(1, min(2, n - 1)))))
        if r < 0.55 and n >= 3:
            a = poly_type(rng, self.session, env.star, env.nat, 3)
            return Anno(self.expr(env, a, n - 1), a)
        if r < 0.7 and n >= 2:
            x = self.fresh("x")
            return Lam(x, self.any_expr(_Env(env.hyps + [(x, TUnit())], env.star, env.nat), n - 1))
        if r < 0.85 and n >= 3:
            return Pair(self.any_expr(env, 1), self.any_expr(env, n - 2))
        if env.hyps and rng.random() < 0.5:
            return Var(rng.choice(env.hyps)[0])
        return rng.choice((UnitE(), Nil(), Inj(1, UnitE())))

    def case_expr(self, env: _Env, c: Type, n: int) -> Expr:
        """A case over an annotated sum or unit scrutinee."""
        rng = self.rng
        if rng.random() < 0.5:
            scrut = Anno(Inj(rng.choice((1, 2)), UnitE()), TBin(BinOp.SUM, TUnit(), TUnit()))
            x, y = self.fresh("x"), self.fresh("y")
            m = max(1, (n - 3) // 2)
            b1 = Branch((PInj(1, PVar(x)),), self.expr(_Env(env.hyps + [(x, TUnit())], env.star, env.nat), c, m))
            branches = [b1]
            if rng.random() < 0.85:
                branches.append(Branch((PInj(2, PVar(y)),), self.expr(_Env(env.hyps + [(y, TUnit())], env.star, env.nat), c, m)))
            return Case(scrut, tuple(branches))
        scrut = Anno(UnitE(), TUnit())
        pat: Pattern = rng.choice((PUnit(), PWild(), PVar(self.fresh("u"))))
        return Case(scrut, (Branch((pat,), self.expr(env, c, n - 2)),))

    def case_on_vec(self, env: _Env, a: Type, n: int) -> Expr:
        """A case over a vector-typed hypothesis, if there is one."""
        vecs = [(x, t) for x, t in env.hyps if isinstance(t, TVec)]
        if not vecs:
            return Nil()
        x, t = self.rng.choice(vecs)
        h, tl = self.fresh("h"), self.fresh("t")
        nil = Branch((PNil(),), Nil())
        cons = Branch((PCons(PVar(h), PVar(tl)),), self.expr(env, a, max(1, n - 4)))
        branches = (nil, cons) if self.rng.random() < 0.8 else (cons,)
        return Case(Var(x), branches)
