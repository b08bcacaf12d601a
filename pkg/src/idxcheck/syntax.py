"""Abstract syntax for expressions, patterns, types, index terms and propositions.

Types and index terms share one family of node classes: a term is simply a
type built from ``TUnit``, ``TZero``, ``TSucc``, variables and ``TBin``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union


# ---------------------------------------------------------------------------
# Identifiers, sorts, principality, polarity
# ---------------------------------------------------------------------------


class VarKind(Enum):
    TERM = "term"
    UNIVERSAL = "universal"
    EXISTENTIAL = "existential"


@dataclass(frozen=True)
class Ident:
    """A variable. Identity is the ``uid``; ``name`` is for display only."""

    name: str
    kind: VarKind
    uid: int

    def __str__(self) -> str:
        return ("^" if self.kind is VarKind.EXISTENTIAL else "") + self.name

    def __repr__(self) -> str:
        return f"{self}#{self.uid}"


class Session:
    """Owner of the uid counter for one typecheck run."""

    def __init__(self, start: int = 0):
        self._next = start

    @property
    def counter(self) -> int:
        return self._next

    def fresh(self, name: str, kind: VarKind) -> Ident:
        uid = self._next
        self._next += 1
        return Ident(name, kind, uid)

    def fresh_like(self, var: Ident, kind: Optional[VarKind] = None, suffix: str = "") -> Ident:
        return self.fresh(var.name + suffix, kind or var.kind)

    def clone(self) -> "Session":
        return Session(self._next)


# Renaming during capture-avoiding substitution outside a session draws from a
# separate negative range so it can never collide with session uids.
_fallback_uids = itertools.count(-1, -1)


def _fallback_fresh(var: Ident) -> Ident:
    return Ident(var.name, var.kind, next(_fallback_uids))


# Shared by the parser and checker when no session is given, so that idents
# from separate calls never collide.
DEFAULT_SESSION = Session()


class Sort(Enum):
    STAR = "*"
    NAT = "N"

    def __str__(self) -> str:
        return self.value


class Principality(Enum):
    BANG = "!"
    SLASH = "/"

    def __str__(self) -> str:
        return self.value

    def at_least_as_principal(self, other: "Principality") -> bool:
        return self is Principality.BANG or other is Principality.SLASH


BANG = Principality.BANG
SLASH = Principality.SLASH


class Polarity(Enum):
    POS = "+"
    NEG = "-"
    NONPOLAR = "0"

    def __str__(self) -> str:
        return self.value


class BinOp(Enum):
    ARROW = "->"
    SUM = "+"
    PROD = "*"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


def _span():
    return field(default=None, compare=False, repr=False, kw_only=True)


# ---------------------------------------------------------------------------
# Types and terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TUnit:
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TZero:
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TSucc:
    arg: "Type"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TUVar:
    var: Ident
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TEVar:
    var: Ident
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TBin:
    op: BinOp
    left: "Type"
    right: "Type"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TForall:
    var: Ident
    sort: Sort
    body: "Type"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TExists:
    var: Ident
    sort: Sort
    body: "Type"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Prop:
    lhs: "Type"
    rhs: "Type"


@dataclass(frozen=True)
class TImplies:
    prop: Prop
    body: "Type"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TWith:
    body: "Type"
    prop: Prop
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class TVec:
    index: "Type"
    elem: "Type"
    span: Optional[Span] = _span()


Type = Union[TUnit, TZero, TSucc, TUVar, TEVar, TBin, TForall, TExists, TImplies, TWith, TVec]
Term = Type  # the monotype fragment; see is_term
Quant = Union[TForall, TExists]

UNIT = TUnit()
ZERO = TZero()


def arrow(a: Type, b: Type) -> TBin:
    return TBin(BinOp.ARROW, a, b)


def sum_(a: Type, b: Type) -> TBin:
    return TBin(BinOp.SUM, a, b)


def prod(a: Type, b: Type) -> TBin:
    return TBin(BinOp.PROD, a, b)


def nat(n: int, base: Type = ZERO) -> Type:
    """The index term succ^n(base)."""
    for _ in range(n):
        base = TSucc(base)
    return base


# ---------------------------------------------------------------------------
# Expressions and patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    var: Ident
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class UnitE:
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Lam:
    var: Ident
    body: "Expr"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class App:
    head: "Expr"
    spine: tuple["Expr", ...]
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Rec:
    var: Ident
    body: "Expr"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Anno:
    body: "Expr"
    ty: Type
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Pair:
    left: "Expr"
    right: "Expr"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Inj:
    k: int
    body: "Expr"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Case:
    scrutinee: "Expr"
    branches: tuple["Branch", ...]
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Nil:
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Cons:
    head: "Expr"
    tail: "Expr"
    span: Optional[Span] = _span()


Expr = Union[Var, UnitE, Lam, App, Rec, Anno, Pair, Inj, Case, Nil, Cons]


@dataclass(frozen=True)
class PVar:
    var: Ident


@dataclass(frozen=True)
class PWild:
    pass


@dataclass(frozen=True)
class PUnit:
    pass


@dataclass(frozen=True)
class PPair:
    left: "Pattern"
    right: "Pattern"


@dataclass(frozen=True)
class PInj:
    k: int
    body: "Pattern"


@dataclass(frozen=True)
class PNil:
    pass


@dataclass(frozen=True)
class PCons:
    head: "Pattern"
    tail: "Pattern"


Pattern = Union[PVar, PWild, PUnit, PPair, PInj, PNil, PCons]


@dataclass(frozen=True)
class Branch:
    pats: tuple[Pattern, ...]
    body: Expr
    span: Optional[Span] = _span()


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


def is_term(a: Type) -> bool:
    """True for the monotype fragment: no quantifiers, props or vectors."""
    match a:
        case TUnit() | TZero() | TUVar() | TEVar():
            return True
        case TSucc(arg):
            return is_term(arg)
        case TBin(_, l, r):
            return is_term(l) and is_term(r)
        case _:
            return False


def _free(x, want: VarKind, bound: frozenset = frozenset()) -> Iterator[Ident]:
    match x:
        case TUVar(v):
            if want is VarKind.UNIVERSAL and v not in bound:
                yield v
        case TEVar(v):
            if want is VarKind.EXISTENTIAL:
                yield v
        case TUnit() | TZero():
            pass
        case TSucc(a):
            yield from _free(a, want, bound)
        case TBin(_, l, r) | TVec(l, r) | Prop(l, r):
            yield from _free(l, want, bound)
            yield from _free(r, want, bound)
        case TForall(v, _, body) | TExists(v, _, body):
            yield from _free(body, want, bound | {v})
        case TImplies(p, body) | TWith(body, p):
            yield from _free(p, want, bound)
            yield from _free(body, want, bound)
        case _:
            raise TypeError(f"not a type: {x!r}")


def fev(x: Union[Type, Prop]) -> frozenset[Ident]:
    """Free existential variables."""
    return frozenset(_free(x, VarKind.EXISTENTIAL))


def fuv(x: Union[Type, Prop]) -> frozenset[Ident]:
    """Free universal variables."""
    return frozenset(_free(x, VarKind.UNIVERSAL))


def polarity(a: Type) -> Polarity:
    match a:
        case TExists():
            return Polarity.POS
        case TForall():
            return Polarity.NEG
        case _:
            return Polarity.NONPOLAR


def size(x) -> int:
    """Node count of a type, term or proposition."""
    match x:
        case TUnit() | TZero() | TUVar() | TEVar():
            return 1
        case TSucc(a):
            return 1 + size(a)
        case TBin(_, l, r) | TVec(l, r) | Prop(l, r):
            return 1 + size(l) + size(r)
        case TForall(_, _, b) | TExists(_, _, b):
            return 1 + size(b)
        case TImplies(p, b) | TWith(b, p):
            return 1 + size(p) + size(b)
    raise TypeError(f"not a type: {x!r}")


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

Fresh = Callable[[Ident], Ident]


def _session_fresh(session: Optional[Session]) -> Fresh:
    if session is None:
        return _fallback_fresh
    return lambda v: session.fresh(v.name, v.kind)


def subst(x, mapping: Mapping[Ident, Type], session: Optional[Session] = None):
    """Simultaneous capture-avoiding substitution of variables (universal or
    existential) in a type, term or proposition."""
    if not mapping:
        return x
    fresh = _session_fresh(session)
    cache: dict = {}

    def range_fuv() -> frozenset[Ident]:
        if "fuv" not in cache:
            cache["fuv"] = frozenset().union(*(fuv(t) for t in mapping.values()))
        return cache["fuv"]

    def go(x, m: Mapping[Ident, Type]):
        match x:
            case TUVar(v) | TEVar(v):
                return m.get(v, x)
            case TUnit() | TZero():
                return x
            case TSucc(a):
                return TSucc(go(a, m), span=x.span)
            case TBin(op, l, r):
                return TBin(op, go(l, m), go(r, m), span=x.span)
            case TVec(t, a):
                return TVec(go(t, m), go(a, m), span=x.span)
            case Prop(l, r):
                return Prop(go(l, m), go(r, m))
            case TImplies(p, b):
                return TImplies(go(p, m), go(b, m), span=x.span)
            case TWith(b, p):
                return TWith(go(b, m), go(p, m), span=x.span)
            case TForall(v, k, b) | TExists(v, k, b):
                inner = {u: t for u, t in m.items() if u != v}
                if not inner:
                    return x
                if v in range_fuv():
                    nv = fresh(v)
                    inner[v] = TUVar(nv)
                    v = nv
                return type(x)(v, k, go(b, inner), span=x.span)
        raise TypeError(f"not a type: {x!r}")

    return go(x, mapping)


def subst_uvar(a: Type, alpha: Ident, tau: Type, session: Optional[Session] = None) -> Type:
    """[tau/alpha]a, capture-avoiding."""
    return subst(a, {alpha: tau}, session)


def open_quant(q: Quant, replacement: Type, session: Optional[Session] = None) -> Type:
    """Body of a quantifier with its bound variable replaced."""
    return subst_uvar(q.body, q.var, replacement, session)


def subst_expr(e: Expr, mapping: Mapping[Ident, Type], session: Optional[Session] = None) -> Expr:
    """Apply a type substitution to every annotation inside an expression."""
    if not mapping:
        return e

    def go(e: Expr) -> Expr:
        match e:
            case Var() | UnitE() | Nil():
                return e
            case Lam(x, b):
                return Lam(x, go(b), span=e.span)
            case Rec(x, b):
                return Rec(x, go(b), span=e.span)
            case App(h, s):
                return App(go(h), tuple(go(a) for a in s), span=e.span)
            case Anno(b, t):
                return Anno(go(b), subst(t, mapping, session), span=e.span)
            case Pair(l, r):
                return Pair(go(l), go(r), span=e.span)
            case Inj(k, b):
                return Inj(k, go(b), span=e.span)
            case Cons(h, t):
                return Cons(go(h), go(t), span=e.span)
            case Case(s, bs):
                return Case(go(s), tuple(Branch(b.pats, go(b.body), span=b.span) for b in bs), span=e.span)
        raise TypeError(f"not an expression: {e!r}")

    return go(e)


def subst_branches(bs: Iterable[Branch], mapping, session=None) -> tuple[Branch, ...]:
    return tuple(Branch(b.pats, subst_expr(b.body, mapping, session), span=b.span) for b in bs)


# ---------------------------------------------------------------------------
# Alpha-equivalence
# ---------------------------------------------------------------------------


def alpha_key(x, free_by_name: bool = False):
    """A hashable key equal for exactly the alpha-equivalent types.

    Bound variables become de Bruijn levels; free variables stay as their
    identity (or their name when ``free_by_name``)."""

    def var(v: Ident, env: dict):
        if v in env:
            return ("b", env[v])
        return ("f", v.kind.value, v.name) if free_by_name else ("f", v.kind.value, v.uid)

    def go(x, env: dict):
        match x:
            case TUVar(v) | TEVar(v):
                return var(v, env)
            case TUnit():
                return ("1",)
            case TZero():
                return ("Z",)
            case TSucc(a):
                return ("S", go(a, env))
            case TBin(op, l, r):
                return (op.value, go(l, env), go(r, env))
            case TVec(t, a):
                return ("Vec", go(t, env), go(a, env))
            case Prop(l, r):
                return ("=", go(l, env), go(r, env))
            case TImplies(p, b):
                return ("=>", go(p, env), go(b, env))
            case TWith(b, p):
                return ("/\\", go(b, env), go(p, env))
            case TForall(v, k, b) | TExists(v, k, b):
                tag = "A" if isinstance(x, TForall) else "E"
                return (tag, k.value, go(b, {**env, v: len(env)}))
        raise TypeError(f"not a type: {x!r}")

    return go(x, {})


def alpha_eq(a, b, free_by_name: bool = False) -> bool:
    return a is b or alpha_key(a, free_by_name) == alpha_key(b, free_by_name)


def expr_key(e: Expr, free_by_name: bool = False):
    """Alpha-equivalence key for expressions (binders of terms and patterns)."""

    def var(v: Ident, env: dict):
        if v in env:
            return ("b", env[v])
        return ("f", v.name) if free_by_name else ("f", v.uid)

    def pat(p: Pattern, env: dict) -> tuple:
        match p:
            case PVar(v):
                env[v] = len(env)
                return ("x",)
            case PWild():
                return ("_",)
            case PUnit():
                return ("()",)
            case PNil():
                return ("[]",)
            case PPair(l, r):
                return ("pair", pat(l, env), pat(r, env))
            case PCons(l, r):
                return ("::", pat(l, env), pat(r, env))
            case PInj(k, b):
                return ("inj", k, pat(b, env))
        raise TypeError(p)

    def go(e: Expr, env: dict):
        match e:
            case Var(v):
                return var(v, env)
            case UnitE():
                return ("()",)
            case Nil():
                return ("[]",)
            case Lam(x, b):
                return ("lam", go(b, {**env, x: len(env)}))
            case Rec(x, b):
                return ("rec", go(b, {**env, x: len(env)}))
            case App(h, s):
                return ("app", go(h, env), tuple(go(a, env) for a in s))
            case Anno(b, t):
                return ("anno", go(b, env), alpha_key(t, free_by_name))
            case Pair(l, r):
                return ("pair", go(l, env), go(r, env))
            case Inj(k, b):
                return ("inj", k, go(b, env))
            case Cons(h, t):
                return ("::", go(h, env), go(t, env))
            case Case(s, bs):
                out = []
                for br in bs:
                    benv = dict(env)
                    ps = tuple(pat(p, benv) for p in br.pats)
                    out.append((ps, go(br.body, benv)))
                return ("case", go(s, env), tuple(out))
        raise TypeError(f"not an expression: {e!r}")

    return go(e, {})


# ---------------------------------------------------------------------------
# Expression predicates
# ---------------------------------------------------------------------------


def is_checked_intro(e: Expr) -> bool:
    return isinstance(e, (Lam, UnitE, Pair, Inj, Nil, Cons))


def is_case(e: Expr) -> bool:
    return isinstance(e, Case)


def is_value(e: Expr) -> bool:
    match e:
        case Var() | UnitE() | Lam() | Nil():
            return True
        case Rec(_, b) | Anno(b, _) | Inj(_, b):
            return is_value(b)
        case Pair(l, r) | Cons(l, r):
            return is_value(l) and is_value(r)
        case _:
            return False


def pattern_vars(p: Pattern) -> list[Ident]:
    match p:
        case PVar(v):
            return [v]
        case PPair(l, r) | PCons(l, r):
            return pattern_vars(l) + pattern_vars(r)
        case PInj(_, b):
            return pattern_vars(b)
        case _:
            return []


def expr_size(e: Expr) -> int:
    match e:
        case Var() | UnitE() | Nil():
            return 1
        case Lam(_, b) | Rec(_, b) | Inj(_, b):
            return 1 + expr_size(b)
        case Anno(b, _):
            return 1 + expr_size(b)
        case App(h, s):
            return 1 + expr_size(h) + sum(expr_size(a) for a in s)
        case Pair(l, r) | Cons(l, r):
            return 1 + expr_size(l) + expr_size(r)
        case Case(s, bs):
            return 1 + expr_size(s) + sum(expr_size(b.body) for b in bs)
    raise TypeError(e)
