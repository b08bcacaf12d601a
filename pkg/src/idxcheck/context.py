"""Ordered algorithmic contexts.

A context is an immutable sequence of entries. It doubles as a substitution:
``apply_ctx`` replaces solved existential variables and equated universal
variables by their (transitively applied) right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import ContextError, IllFormedType, ScopeError, SortError
from .syntax import (
    BANG,
    Ident,
    Principality,
    Prop,
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
    VarKind,
    _free,
    alpha_eq,
    fev,
    subst,
)


# ---------------------------------------------------------------------------
# Entries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CUVar:
    var: Ident
    sort: Sort

    @property
    def key(self):
        return self.var


@dataclass(frozen=True)
class CEVar:
    """Unsolved existential variable."""

    var: Ident
    sort: Sort

    @property
    def key(self):
        return self.var


@dataclass(frozen=True)
class CSolved:
    var: Ident
    sort: Sort
    term: Type

    @property
    def key(self):
        return self.var


@dataclass(frozen=True)
class CHyp:
    var: Ident
    ty: Type
    princ: Principality

    @property
    def key(self):
        return self.var


@dataclass(frozen=True)
class CEqn:
    var: Ident
    term: Type

    @property
    def key(self):
        return ("=", self.var)


@dataclass(frozen=True)
class CMarker:
    """Scope marker. ``tag`` is the marked evar, or a fresh ident for a
    proposition marker (whose proposition is kept for display only)."""

    tag: Ident
    prop: Optional[Prop] = field(default=None, compare=False)

    @property
    def key(self):
        return ("|>", self.tag)


Entry = Union[CUVar, CEVar, CSolved, CHyp, CEqn, CMarker]


def eqn_key(var: Ident):
    return ("=", var)


def marker_key(tag: Ident):
    return ("|>", tag)


def entry_key(target) -> object:
    """Accept an entry, a marker, or a bare ident and return its lookup key."""
    if isinstance(target, (CUVar, CEVar, CSolved, CHyp, CEqn, CMarker)):
        return target.key
    return target


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------


class Ctx:
    """An ordered context, leftmost entry first."""

    __slots__ = ("entries", "_index", "_resolved")

    def __init__(self, entries: Iterable[Entry] = ()):
        self.entries: tuple[Entry, ...] = tuple(entries)
        self._index: Optional[dict] = None
        self._resolved: dict = {}

    # -- basic protocol -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Ctx) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Ctx({list(self.entries)!r})"

    def __str__(self) -> str:
        from .printer import print_ctx

        return print_ctx(self)

    def _idx(self) -> dict:
        if self._index is None:
            self._index = {e.key: i for i, e in enumerate(self.entries)}
        return self._index

    # -- construction ---------------------------------------------------------

    def extend(self, *entries: Entry) -> "Ctx":
        return Ctx(self.entries + entries)

    def prefix(self, n: int) -> "Ctx":
        return Ctx(self.entries[:n])

    # -- queries --------------------------------------------------------------

    def position(self, target) -> Optional[int]:
        return self._idx().get(entry_key(target))

    def contains(self, target) -> bool:
        return entry_key(target) in self._idx()

    def lookup(self, target) -> Optional[Entry]:
        i = self.position(target)
        return None if i is None else self.entries[i]

    def declares(self, var: Ident) -> bool:
        return var in self._idx()

    def var_sort(self, var: Ident) -> Optional[Sort]:
        e = self.lookup(var)
        if isinstance(e, (CUVar, CEVar, CSolved)):
            return e.sort
        return None

    def solution(self, var: Ident) -> Optional[Type]:
        e = self.lookup(var)
        return e.term if isinstance(e, CSolved) else None

    def equation(self, var: Ident) -> Optional[Type]:
        e = self.lookup(eqn_key(var))
        return e.term if isinstance(e, CEqn) else None

    def hyp(self, var: Ident) -> Optional[CHyp]:
        e = self.lookup(var)
        return e if isinstance(e, CHyp) else None

    def is_unsolved(self, var: Ident) -> bool:
        return isinstance(self.lookup(var), CEVar)

    def unsolved(self) -> list[Ident]:
        return [e.var for e in self.entries if isinstance(e, CEVar)]

    def is_complete(self) -> bool:
        return not any(isinstance(e, CEVar) for e in self.entries)

    # -- holes ----------------------------------------------------------------

    def split_at(self, target) -> tuple["Ctx", Entry, "Ctx"]:
        i = self.position(target)
        if i is None:
            raise ContextError(f"{_show_key(entry_key(target))} not found in context", rule="split_at")
        return Ctx(self.entries[:i]), self.entries[i], Ctx(self.entries[i + 1 :])

    def replace(self, target, new: Iterable[Entry]) -> "Ctx":
        """Gamma[target := new...], the hole notation."""
        i = self.position(target)
        if i is None:
            raise ContextError(f"{_show_key(entry_key(target))} not found in context", rule="split_at")
        return Ctx(self.entries[:i] + tuple(new) + self.entries[i + 1 :])

    def truncate(self, target) -> "Ctx":
        """Drop ``target`` and everything to its right."""
        i = self.position(target)
        if i is None:
            raise ContextError(f"{_show_key(entry_key(target))} not found in context", rule="truncate")
        return Ctx(self.entries[:i])

    # -- substitution -----------------------------------------------------------

    def resolve(self, var: Ident) -> Optional[Type]:
        """Fully applied right-hand side for a solved evar or equated uvar,
        ``None`` if the variable is fixed by this context."""
        if var in self._resolved:
            r = self._resolved[var]
            if r is _VISITING:
                raise ContextError(f"cyclic solution for {var}", rule="apply_ctx")
            return r
        if var.kind is VarKind.EXISTENTIAL:
            e = self.lookup(var)
            if e is None:
                raise ScopeError(f"unbound existential variable {var}", rule="apply_ctx")
            rhs = e.term if isinstance(e, CSolved) else None
        else:
            if not self.declares(var):
                raise ScopeError(f"unbound type variable {var.name}", rule="apply_ctx")
            rhs = self.equation(var)
        if rhs is None:
            self._resolved[var] = None
            return None
        self._resolved[var] = _VISITING
        out = apply_ctx(self, rhs)
        self._resolved[var] = out
        return out


_VISITING = object()


def _show_key(k) -> str:
    if isinstance(k, tuple):
        return f"{k[0]}{k[1]}"
    return str(k)


def free_vars(x) -> set[Ident]:
    return set(_free(x, VarKind.UNIVERSAL)) | set(_free(x, VarKind.EXISTENTIAL))


def apply_ctx(ctx: Ctx, x):
    """[ctx]x for a type, term or proposition."""
    mapping = {}
    for v in free_vars(x):
        r = ctx.resolve(v)
        if r is not None:
            mapping[v] = r
    return subst(x, mapping) if mapping else x


# ---------------------------------------------------------------------------
# Sorting and well-formedness
# ---------------------------------------------------------------------------


def sort_of(ctx: Ctx, t: Type, local: Optional[dict] = None) -> Sort:
    """The sort of an index term or monotype. ``local`` holds binder sorts."""
    local = local or {}
    match t:
        case TUVar(v):
            if v in local:
                return local[v]
            e = ctx.lookup(v)
            if isinstance(e, CUVar):
                return e.sort
            raise ScopeError(f"unbound type variable {v.name}", rule="VarSort")
        case TEVar(v):
            e = ctx.lookup(v)
            if isinstance(e, (CEVar, CSolved)):
                return e.sort
            raise ScopeError(f"unbound existential variable {v}", rule="SolvedVarSort")
        case TUnit():
            return Sort.STAR
        case TZero():
            return Sort.NAT
        case TSucc(a):
            if sort_of(ctx, a, local) is not Sort.NAT:
                raise SortError("successor of a term that is not a natural number", rule="SuccSort", span=t.span)
            return Sort.NAT
        case TBin(op, l, r):
            for side in (l, r):
                if sort_of(ctx, side, local) is not Sort.STAR:
                    raise SortError(f"operand of {op.value} is not a monotype", rule="BinSort", span=t.span)
            return Sort.STAR
    raise SortError("not an index term or monotype", rule="sort_of", span=getattr(t, "span", None))


def check_sort(ctx: Ctx, t: Type, sort: Sort, local: Optional[dict] = None, rule: str = "sort_of") -> None:
    got = sort_of(ctx, t, local)
    if got is not sort:
        raise SortError(f"expected sort {sort}, found {got}", rule=rule, span=getattr(t, "span", None))


def check_wf_prop(ctx: Ctx, p: Prop, local: Optional[dict] = None) -> None:
    check_sort(ctx, p.lhs, Sort.NAT, local, "EqProp")
    check_sort(ctx, p.rhs, Sort.NAT, local, "EqProp")


def check_wf_type(ctx: Ctx, a: Type, p: Principality = Principality.SLASH, local: Optional[dict] = None) -> None:
    """Raise unless ``a`` is well-formed under ``ctx`` and respects ``p``."""
    local = dict(local or {})

    def go(a: Type, local: dict) -> None:
        match a:
            case TUVar(v):
                s = local.get(v) or (ctx.var_sort(v) if isinstance(ctx.lookup(v), CUVar) else None)
                if s is None:
                    raise ScopeError(f"unbound type variable {v.name}", rule="VarWF", span=a.span)
                if s is not Sort.STAR:
                    raise SortError(f"index variable {v.name} used as a type", rule="VarWF", span=a.span)
            case TEVar(v):
                e = ctx.lookup(v)
                if not isinstance(e, (CEVar, CSolved)):
                    raise ScopeError(f"unbound existential variable {v}", rule="SolvedVarWF", span=a.span)
                if e.sort is not Sort.STAR:
                    raise SortError(f"index variable {v} used as a type", rule="SolvedVarWF", span=a.span)
            case TUnit():
                pass
            case TZero() | TSucc():
                raise SortError("index term used as a type", rule="UnitWF", span=a.span)
            case TBin(_, l, r):
                go(l, local)
                go(r, local)
            case TVec(t, el):
                check_sort(ctx, t, Sort.NAT, local, "VecWF")
                go(el, local)
            case TForall(v, k, b) | TExists(v, k, b):
                go(b, {**local, v: k})
            case TImplies(pr, b) | TWith(b, pr):
                check_wf_prop(ctx, pr, local)
                go(b, local)
            case _:
                raise IllFormedType(f"not a type: {a!r}", rule="wf")

    go(a, local)
    if p is BANG and fev(apply_ctx(ctx, a)):
        raise IllFormedType("type is not principal: it mentions unsolved existential variables", rule="PrincipalWF")


def wf_type(ctx: Ctx, a: Type, p: Principality = Principality.SLASH) -> bool:
    try:
        check_wf_type(ctx, a, p)
    except (IllFormedType, SortError, ScopeError, ContextError):
        return False
    return True


def check_wf_ctx(ctx: Ctx) -> None:
    seen: dict = {}
    for i, e in enumerate(ctx.entries):
        prefix = Ctx(ctx.entries[:i])
        if e.key in seen:
            raise ContextError(f"{_show_key(e.key)} declared twice", rule="wf_ctx")
        match e:
            case CUVar() | CEVar():
                pass
            case CSolved(_, k, t):
                check_sort(prefix, t, k, rule="SolvedCWF")
            case CHyp(_, a, p):
                check_wf_type(prefix, a, p)
            case CEqn(v, t):
                d = prefix.lookup(v)
                if not isinstance(d, CUVar):
                    raise ContextError(f"equation for undeclared variable {v.name}", rule="EqnCWF")
                check_sort(prefix, t, d.sort, rule="EqnCWF")
                if v in free_vars(apply_ctx(prefix, t)):
                    # equations are kept in solved form, so they never cycle
                    raise ContextError(f"equation for {v.name} mentions itself", rule="EqnCWF")
            case CMarker():
                pass
        seen[e.key] = i


def wf_ctx(ctx: Ctx) -> bool:
    try:
        check_wf_ctx(ctx)
    except (ContextError, IllFormedType, SortError, ScopeError):
        return False
    return True


# ---------------------------------------------------------------------------
# Extension
# ---------------------------------------------------------------------------


def _same_under(delta_prefix: Ctx, a, b) -> bool:
    try:
        return alpha_eq(apply_ctx(delta_prefix, a), apply_ctx(delta_prefix, b))
    except (ScopeError, ContextError):
        return False


def extends(gamma: Ctx, delta: Ctx) -> bool:
    """Decide gamma --> delta by a right-to-left scan."""
    g = gamma.entries
    d = delta.entries
    i, j = len(g) - 1, len(d) - 1
    while j >= 0:
        de = d[j]
        if isinstance(de, (CEVar, CSolved)) and not (gamma.position(de.var) is not None and gamma.position(de.var) <= i):
            j -= 1  # ->Add / ->AddSolved
            continue
        if i < 0:
            return False
        ge = g[i]
        dpre = Ctx(d[:j])
        match ge, de:
            case CUVar(a, k), CUVar(b, k2):
                ok = a == b and k is k2
            case CHyp(x, a, p), CHyp(y, b, q):
                ok = x == y and p is q and _same_under(dpre, a, b)
            case CEqn(a, t), CEqn(b, t2):
                ok = a == b and _same_under(dpre, t, t2)
            case CEVar(a, k), CEVar(b, k2):
                ok = a == b and k is k2
            case CEVar(a, k), CSolved(b, k2, _):
                ok = a == b and k is k2
            case CSolved(a, k, t), CSolved(b, k2, t2):
                ok = a == b and k is k2 and _same_under(dpre, t, t2)
            case CMarker(u), CMarker(v):
                ok = u == v
            case _:
                ok = False
        if not ok:
            return False
        i -= 1
        j -= 1
    return i < 0


# ---------------------------------------------------------------------------
# Complete contexts
# ---------------------------------------------------------------------------


def default_term(sort: Sort) -> Type:
    return TUnit() if sort is Sort.STAR else TZero()


def canonical_completion(ctx: Ctx) -> Ctx:
    """Solve every unsolved evar with the smallest term of its sort."""
    return Ctx(CSolved(e.var, e.sort, default_term(e.sort)) if isinstance(e, CEVar) else e for e in ctx.entries)


def apply_complete(omega: Ctx, gamma: Ctx) -> Ctx:
    """[omega]gamma: a declarative context of universal declarations and
    evar-free hypotheses."""
    if not omega.is_complete():
        raise ContextError("context is not complete", rule="apply_complete")
    o = omega.entries
    g = gamma.entries

    def mismatch(oe, ge) -> ContextError:
        return ContextError(f"cannot apply complete context: {oe!r} does not match {ge!r}", rule="apply_complete")

    def go(i: int, j: int) -> list[Entry]:
        # [o[:i+1]] g[:j+1]
        if i < 0:
            if j >= 0:
                raise mismatch(None, g[j])
            return []
        oe = o[i]
        opre = Ctx(o[:i])
        if isinstance(oe, CSolved):
            ge = g[j] if j >= 0 else None
            if isinstance(ge, (CEVar, CSolved)) and ge.var == oe.var:
                return go(i - 1, j - 1)
            return go(i - 1, j)
        if j < 0:
            raise mismatch(oe, None)
        ge = g[j]
        match oe, ge:
            case CHyp(x, a, p), CHyp(y, b, q) if x == y and p is q:
                oa = apply_ctx(opre, a)
                if not alpha_eq(oa, apply_ctx(opre, b)):
                    raise mismatch(oe, ge)
                return go(i - 1, j - 1) + [CHyp(x, oa, p)]
            case CUVar(a, k), CUVar(b, k2) if a == b and k is k2:
                return go(i - 1, j - 1) + [oe]
            case CMarker(u), CMarker(v) if u == v:
                return go(i - 1, j - 1)
            case CEqn(a, t), CEqn(b, t2) if a == b:
                ot = apply_ctx(opre, t)
                if not alpha_eq(ot, apply_ctx(opre, t2)):
                    raise mismatch(oe, ge)
                rest = go(i - 1, j - 1)
                return [CHyp(h.var, subst(h.ty, {a: ot}), h.princ) if isinstance(h, CHyp) else h for h in rest]
        raise mismatch(oe, ge)

    return Ctx(go(len(o) - 1, len(g) - 1))
