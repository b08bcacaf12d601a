"""Pretty-printing of types, expressions, patterns and contexts.

Output parses back to an alpha-equivalent tree. Distinct variables that share
a display name are disambiguated with a numeric suffix.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .syntax import (
    Anno,
    App,
    Branch,
    Case,
    Cons,
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
    Prop,
    Rec,
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
    UnitE,
    Var,
    VarKind,
    BinOp,
)

KEYWORDS = frozenset({"def", "rec", "case", "inj1", "inj2", "forall", "exists", "Vec", "S", "Z", "N"})


# ---------------------------------------------------------------------------
# Naming
# ---------------------------------------------------------------------------


def _idents(x) -> Iterator[Ident]:
    from .context import CEqn, CEVar, CHyp, CMarker, CSolved, CUVar, Ctx

    match x:
        case TUVar(v) | TEVar(v):
            yield v
        case TUnit() | TZero():
            pass
        case TSucc(a):
            yield from _idents(a)
        case TBin(_, l, r) | TVec(l, r) | Prop(l, r):
            yield from _idents(l)
            yield from _idents(r)
        case TForall(v, _, b) | TExists(v, _, b):
            yield v
            yield from _idents(b)
        case TImplies(p, b) | TWith(b, p):
            yield from _idents(p)
            yield from _idents(b)
        case Var(v):
            yield v
        case UnitE() | Nil() | PWild() | PUnit() | PNil():
            pass
        case Lam(v, b) | Rec(v, b):
            yield v
            yield from _idents(b)
        case App(h, s):
            yield from _idents(h)
            for a in s:
                yield from _idents(a)
        case Anno(b, t):
            yield from _idents(b)
            yield from _idents(t)
        case Pair(l, r) | Cons(l, r) | PPair(l, r) | PCons(l, r):
            yield from _idents(l)
            yield from _idents(r)
        case Inj(_, b) | PInj(_, b):
            yield from _idents(b)
        case Case(s, bs):
            yield from _idents(s)
            for br in bs:
                yield from _idents(br)
        case Branch(ps, b):
            for p in ps:
                yield from _idents(p)
            yield from _idents(b)
        case PVar(v):
            yield v
        case Ctx():
            for e in x.entries:
                yield from _idents(e)
        case CUVar(v, _) | CEVar(v, _):
            yield v
        case CSolved(v, _, t) | CHyp(v, t, _) | CEqn(v, t):
            yield v
            yield from _idents(t)
        case CMarker(v, p):
            yield v
            if p is not None:
                yield from _idents(p)
        case tuple() | list():
            for y in x:
                yield from _idents(y)


class Namer:
    """Assigns each distinct ident a display name, unique per kind class."""

    def __init__(self, roots: Iterable = ()):
        self.names: dict[Ident, str] = {}
        self.used: dict[str, set[str]] = {"type": set(), "evar": set(), "term": set()}
        for r in roots:
            for v in _idents(r):
                self.name(v)

    @staticmethod
    def _space(v: Ident) -> str:
        return {VarKind.TERM: "term", VarKind.EXISTENTIAL: "evar"}.get(v.kind, "type")

    def name(self, v: Ident) -> str:
        if v in self.names:
            return self.names[v]
        used = self.used[self._space(v)]
        base = v.name if v.name and v.name not in KEYWORDS and v.name[0].isalpha() else "v"
        cand, k = base, 0
        while cand in used:
            k += 1
            cand = f"{base}_{k}"
        used.add(cand)
        self.names[v] = cand
        return cand

    def show(self, v: Ident) -> str:
        n = self.name(v)
        return "^" + n if v.kind is VarKind.EXISTENTIAL else n


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

# precedence levels: 0 binders, 1 arrow, 2 asserting, 3 sum, 4 product, 5 application, 6 atom


def _type(a, n: Namer, lvl: int) -> str:
    def paren(s: str, mine: int) -> str:
        return f"({s})" if mine < lvl else s

    match a:
        case TUnit():
            return "1"
        case TZero():
            return "Z"
        case TUVar(v) | TEVar(v):
            return n.show(v)
        case TSucc(t):
            return paren("S " + _type(t, n, 6), 5)
        case TVec(t, el):
            return paren(f"Vec {_type(t, n, 6)} {_type(el, n, 6)}", 5)
        case TBin(BinOp.ARROW, l, r):
            return paren(f"{_type(l, n, 2)} -> {_type(r, n, 0)}", 1)
        case TBin(BinOp.SUM, l, r):
            return paren(f"{_type(l, n, 3)} + {_type(r, n, 4)}", 3)
        case TBin(BinOp.PROD, l, r):
            return paren(f"{_type(l, n, 4)} * {_type(r, n, 5)}", 4)
        case TWith(b, p):
            return paren(f"{_type(b, n, 2)} /\\ {_prop(p, n)}", 2)
        case TImplies(p, b):
            return paren(f"{_prop(p, n)} => {_type(b, n, 0)}", 0)
        case TForall(v, k, b) | TExists(v, k, b):
            q = "forall" if isinstance(a, TForall) else "exists"
            return paren(f"{q} {n.name(v)}:{k.value}. {_type(b, n, 0)}", 0)
    raise TypeError(f"not a type: {a!r}")


def _prop(p: Prop, n: Namer) -> str:
    return f"({_type(p.lhs, n, 3)} = {_type(p.rhs, n, 3)})"


def print_type(a, namer: Namer | None = None) -> str:
    n = namer or Namer([a])
    if isinstance(a, Prop):
        return _prop(a, n)[1:-1]
    return _type(a, n, 0)


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

# levels: 0 binders, 1 cons, 2 application / injection, 3 atom


def _pat(p: Pattern, n: Namer, lvl: int) -> str:
    match p:
        case PVar(v):
            return n.name(v)
        case PWild():
            return "_"
        case PUnit():
            return "()"
        case PNil():
            return "[]"
        case PPair(l, r):
            return f"({_pat(l, n, 0)}, {_pat(r, n, 0)})"
        case PInj(k, b):
            s = f"inj{k} {_pat(b, n, 2)}"
            return f"({s})" if lvl > 1 else s
        case PCons(l, r):
            s = f"{_pat(l, n, 1)} :: {_pat(r, n, 0)}"
            return f"({s})" if lvl > 0 else s
    raise TypeError(f"not a pattern: {p!r}")


def _expr(e, n: Namer, lvl: int) -> str:
    def paren(s: str, mine: int) -> str:
        return f"({s})" if mine < lvl else s

    match e:
        case Var(v):
            return n.name(v)
        case UnitE():
            return "()"
        case Nil():
            return "[]"
        case Lam(x, b):
            return paren(f"\\{n.name(x)} -> {_expr(b, n, 0)}", 0)
        case Rec(x, b):
            return paren(f"rec {n.name(x)}. {_expr(b, n, 0)}", 0)
        case Cons(h, t):
            return paren(f"{_expr(h, n, 2)} :: {_expr(t, n, 0)}", 1)
        case App(h, s):
            return paren(" ".join([_expr(h, n, 3)] + [_expr(a, n, 3) for a in s]), 2)
        case Inj(k, b):
            return paren(f"inj{k} {_expr(b, n, 3)}", 2)
        case Anno(b, t):
            return f"({_expr(b, n, 0)} : {_type(t, n, 0)})"
        case Pair(l, r):
            return f"({_expr(l, n, 0)}, {_expr(r, n, 0)})"
        case Case(s, bs):
            arms = " | ".join(_branch(b, n) for b in bs)
            return f"case({_expr(s, n, 0)}, {arms})"
    raise TypeError(f"not an expression: {e!r}")


def _branch(b: Branch, n: Namer) -> str:
    pats = ", ".join(_pat(p, n, 0) for p in b.pats)
    return f"{pats} => {_expr(b.body, n, 0)}"


def print_expr(e, namer: Namer | None = None) -> str:
    return _expr(e, namer or Namer([e]), 0)


def print_pattern(p: Pattern, namer: Namer | None = None) -> str:
    return _pat(p, namer or Namer([p]), 0)


def print_branch(b: Branch, namer: Namer | None = None) -> str:
    return _branch(b, namer or Namer([b]))


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------


def print_entry(e, n: Namer) -> str:
    from .context import CEqn, CEVar, CHyp, CMarker, CSolved, CUVar

    match e:
        case CUVar(v, k):
            return f"{n.show(v)}:{k.value}"
        case CEVar(v, k):
            return f"{n.show(v)}:{k.value}"
        case CSolved(v, k, t):
            return f"{n.show(v)}:{k.value}={_type(t, n, 0)}"
        case CHyp(x, a, p):
            return f"{n.name(x)}:{_type(a, n, 0)} {p.value}"
        case CEqn(v, t):
            return f"{n.show(v)}={_type(t, n, 0)}"
        case CMarker(tag, prop):
            return ">" + (_prop(prop, n) if prop is not None else n.show(tag))
    raise TypeError(f"not a context entry: {e!r}")


def print_ctx(ctx, namer: Namer | None = None) -> str:
    n = namer or Namer([ctx])
    return ", ".join(print_entry(e, n) for e in ctx.entries)


def show(x, namer: Namer | None = None) -> str:
    """Print any printable tree."""
    from .context import Ctx

    if isinstance(x, Ctx):
        return print_ctx(x, namer)
    if isinstance(x, (Branch,)):
        return print_branch(x, namer)
    if isinstance(x, (PVar, PWild, PUnit, PNil, PPair, PInj, PCons)):
        return print_pattern(x, namer)
    if isinstance(x, (Var, UnitE, Nil, Lam, Rec, Cons, App, Inj, Anno, Pair, Case)):
        return print_expr(x, namer)
    return print_type(x, namer)
