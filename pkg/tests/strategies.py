"""Hypothesis strategies for types, terms and expressions."""

from hypothesis import strategies as st

from idxcheck.syntax import (
    Anno,
    App,
    BinOp,
    Branch,
    Case,
    Cons,
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
    TUVar,
    TUnit,
    TVec,
    TWith,
    TZero,
    UnitE,
    Var,
    VarKind,
    pattern_vars,
)

# binders get uids from a range that never meets a test's own session
_S = Session(1 << 30)
FREE_STAR = (_S.fresh("a", VarKind.UNIVERSAL), _S.fresh("b", VarKind.UNIVERSAL))
FREE_NAT = (_S.fresh("n", VarKind.UNIVERSAL),)
EVAR_STAR = _S.fresh("e", VarKind.EXISTENTIAL)
EVAR_NAT = _S.fresh("k", VarKind.EXISTENTIAL)


def _fresh(name: str, kind: VarKind):
    return _S.fresh(name, kind)


def index_terms(nat=FREE_NAT, evars: bool = True):
    leaves = [st.just(TZero())] + [st.just(TUVar(v)) for v in nat]
    if evars:
        leaves.append(st.just(TEVar(EVAR_NAT)))
    return st.recursive(st.one_of(leaves), lambda t: t.map(TSucc), max_leaves=4)


@st.composite
def types(draw, star=FREE_STAR, nat=FREE_NAT, depth: int = 4, evars: bool = True):
    star, nat = tuple(star), tuple(nat)
    leaves = [TUnit()] + [TUVar(v) for v in star] + ([TEVar(EVAR_STAR)] if evars else [])
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        return draw(st.sampled_from(leaves))
    shape = draw(st.sampled_from(["bin", "bin", "forall", "exists", "vec", "implies", "with"]))
    sub = lambda s=star, n=nat: types(s, n, depth - 1, evars)
    match shape:
        case "bin":
            op = draw(st.sampled_from(list(BinOp)))
            return TBin(op, draw(sub()), draw(sub()))
        case "forall" | "exists":
            k = draw(st.sampled_from([Sort.STAR, Sort.NAT]))
            v = _fresh("c" if k is Sort.STAR else "m", VarKind.UNIVERSAL)
            body = draw(sub(star + (v,), nat) if k is Sort.STAR else sub(star, nat + (v,)))
            return (TForall if shape == "forall" else TExists)(v, k, body)
        case "vec":
            return TVec(draw(index_terms(nat, evars)), draw(sub()))
        case "implies" | "with":
            p = Prop(draw(index_terms(nat, evars)), draw(index_terms(nat, evars)))
            body = draw(sub())
            return TImplies(p, body) if shape == "implies" else TWith(body, p)


@st.composite
def types_with_vars(draw):
    """A type together with one of its candidate free universal variables."""
    t = draw(types())
    return t, draw(st.sampled_from(FREE_STAR + FREE_NAT))


@st.composite
def patterns(draw, depth: int = 2):
    if depth == 0 or draw(st.booleans()):
        return draw(st.one_of(st.sampled_from([PWild(), PUnit(), PNil()]), st.builds(lambda: PVar(_fresh("p", VarKind.TERM)))))
    shape = draw(st.sampled_from(["pair", "inj", "cons"]))
    match shape:
        case "pair":
            return PPair(draw(patterns(depth - 1)), draw(patterns(depth - 1)))
        case "inj":
            return PInj(draw(st.sampled_from([1, 2])), draw(patterns(depth - 1)))
        case "cons":
            return PCons(draw(patterns(depth - 1)), draw(patterns(depth - 1)))


@st.composite
def exprs(draw, scope=(), depth: int = 4):
    """Closed (given ``scope``) source expressions; annotations are evar-free."""
    scope = tuple(scope)
    leaves = [UnitE(), Nil()] + [Var(v) for v in scope]
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        return draw(st.sampled_from(leaves))
    shape = draw(st.sampled_from(["lam", "app", "anno", "pair", "inj", "cons", "case", "rec"]))
    sub = lambda sc=scope: exprs(sc, depth - 1)
    match shape:
        case "lam":
            x = _fresh("x", VarKind.TERM)
            return Lam(x, draw(sub(scope + (x,))))
        case "rec":
            f, x = _fresh("f", VarKind.TERM), _fresh("x", VarKind.TERM)
            return Rec(f, Lam(x, draw(sub(scope + (f, x)))))
        case "app":
            head = draw(st.sampled_from([Var(v) for v in scope])) if scope and draw(st.booleans()) else draw(sub())
            n = draw(st.integers(1, 2))
            return App(head, tuple(draw(sub()) for _ in range(n)))
        case "anno":
            return Anno(draw(sub()), draw(types(star=(), nat=(), depth=3, evars=False)))
        case "pair":
            return Pair(draw(sub()), draw(sub()))
        case "inj":
            return Inj(draw(st.sampled_from([1, 2])), draw(sub()))
        case "cons":
            return Cons(draw(sub()), draw(sub()))
        case "case":
            scrut = draw(sub())
            branches = []
            for _ in range(draw(st.integers(1, 3))):
                p = draw(patterns())
                bound = tuple(pattern_vars(p))
                branches.append(Branch((p,), draw(sub(scope + bound))))
            return Case(scrut, tuple(branches))
