"""Recursive-descent parser for ``.idx`` source files.

Grammar (lowest precedence first)::

    program  ::= { 'def' x [':' type] '=' expr ';' } [expr [';']]
    expr     ::= '\\' x '->' expr | 'rec' x '.' expr | app ['::' expr]
    app      ::= ('inj1' | 'inj2') atom | atom { atom }
    atom     ::= x | '()' | '[]' | '(' expr ')' | '(' expr ':' type ')'
               | '(' expr ',' expr ')' | 'case' '(' expr ',' branch { '|' branch } ')'
    branch   ::= pat '=>' expr
    pat      ::= papp ['::' pat]
    papp     ::= ('inj1' | 'inj2') patom | patom
    patom    ::= x | '_' | '()' | '[]' | '(' pat ')' | '(' pat ',' pat ')'
    type     ::= ('forall' | 'exists') a ':' sort '.' type | prop '=>' type | arrow
    arrow    ::= with ['->' type]
    with     ::= sum { '/\\' prop }
    sum      ::= prod { '+' prod }
    prod     ::= tapp { '*' tapp }
    tapp     ::= 'Vec' tatom tatom | 'S' tatom | tatom
    tatom    ::= '1' | 'Z' | a | '^' a | '(' type ')'
    prop     ::= '(' sum '=' sum ')' | sum '=' sum
    sort     ::= '*' | 'N'

Type variables free in an annotation resolve to the leading ``forall``
binders of the nearest enclosing annotation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ParseError
from .syntax import (
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
    Prop,
    Rec,
    DEFAULT_SESSION,
    Session,
    Sort,
    Span,
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
    is_value,
    pattern_vars,
    subst_expr,
)

KEYWORDS = frozenset({"def", "rec", "case", "inj1", "inj2", "forall", "exists", "Vec", "S", "Z", "N"})

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|--[^\n]*)
  | (?P<nl>\n)
  | (?P<sym>->|=>|::|/\\|\\|\(\)|\[\]|[()\[\],|:;=*+.^_])
  | (?P<num>[0-9]+)
  | (?P<id>[A-Za-z][A-Za-z0-9_']*)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'sym', 'num', 'id', 'kw', 'eof'
    text: str
    line: int
    col: int
    end_line: int
    end_col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, col = 1, 1
    for m in _TOKEN.finditer(text):
        kind, s = m.lastgroup, m.group()
        if kind == "nl":
            line, col = line + 1, 1
            continue
        if kind == "ws":
            col += len(s)
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {s!r}", line, col)
        if kind == "id" and s in KEYWORDS:
            kind = "kw"
        toks.append(Token(kind, s, line, col, line, col + len(s)))
        col += len(s)
    toks.append(Token("eof", "<end of input>", line, col, line, col))
    return toks


@dataclass
class Def:
    name: Ident
    ty: Optional[Type]
    expr: Expr
    span: Optional[Span] = None


@dataclass
class SourceFile:
    path: str
    defs: list[Def] = field(default_factory=list)
    final_expr: Optional[Expr] = None


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, text: str, session: Optional[Session] = None):
        self.toks = tokenize(text)
        self.pos = 0
        self.session = session or DEFAULT_SESSION
        # unresolved type names share one placeholder ident per name until an
        # enclosing annotation binds them
        self.pending: dict[str, Ident] = {}
        self.evars: dict[str, Ident] = {}
        self.expected: set[str] = set()
        self.furthest = 0

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        t = self.tok
        hit = t.kind in ("sym", "kw", "num") and t.text in texts
        if not hit:
            self._expect(texts)
        return hit

    def _expect(self, what) -> None:
        if self.pos > self.furthest:
            self.furthest, self.expected = self.pos, set()
        if self.pos == self.furthest:
            self.expected.update(what)

    def accept(self, *texts: str) -> Optional[Token]:
        if self.at(*texts):
            t = self.tok
            self.pos += 1
            return t
        return None

    def expect(self, *texts: str) -> Token:
        t = self.accept(*texts)
        if t is None:
            self.fail()
        return t

    def ident(self) -> Token:
        if self.tok.kind == "id":
            t = self.tok
            self.pos += 1
            return t
        self._expect(["identifier"])
        self.fail()

    def fail(self, message: Optional[str] = None):
        t = self.toks[max(self.furthest, self.pos)]
        msg = message or (f"unexpected {t.text!r}" if t.kind != "eof" else "unexpected end of input")
        raise ParseError(msg, t.line, t.col, frozenset(self.expected))

    def span_from(self, start: Token) -> Span:
        last = self.toks[max(self.pos - 1, 0)]
        return Span(start.line, start.col, last.end_line, last.end_col)

    def attempt(self, fn: Callable):
        save = self.pos
        try:
            return fn()
        except (ParseError, _Backtrack):
            self.pos = save
            return None

    # -- program --------------------------------------------------------------

    def program(self, path: str = "<input>") -> SourceFile:
        sf = SourceFile(path)
        scope: dict[str, Ident] = {}
        while self.at("def"):
            start = self.tok
            self.pos += 1
            nt = self.ident()
            if nt.text in scope:
                raise ParseError(f"duplicate definition {nt.text!r}", nt.line, nt.col)
            ty = None
            if self.accept(":"):
                ty = self.type_()
            self.expect("=")
            e = self.expr(scope)
            if ty is not None:
                e = self.bind_scoped(e, ty)
            self.expect(";")
            name = self.session.fresh(nt.text, VarKind.TERM)
            scope[nt.text] = name
            sf.defs.append(Def(name, ty, e, self.span_from(start)))
        if self.tok.kind != "eof":
            sf.final_expr = self.expr(scope)
            self.accept(";")
        if self.tok.kind != "eof":
            self._expect(["def", "end of input"])
            self.fail()
        return sf

    # -- scoped type variables ------------------------------------------------

    def bind_scoped(self, e: Expr, ty: Type) -> Expr:
        mapping = {}
        a = ty
        while isinstance(a, (TForall, TImplies)):
            if isinstance(a, TForall):
                ph = self.pending.get(a.var.name)
                if ph is not None and ph not in mapping:
                    mapping[ph] = TUVar(a.var)
            a = a.body
        return subst_expr(e, mapping) if mapping else e

    # -- expressions ----------------------------------------------------------

    def expr(self, scope: dict) -> Expr:
        start = self.tok
        if self.accept("\\"):
            xt = self.ident()
            x = self.session.fresh(xt.text, VarKind.TERM)
            self.expect("->")
            body = self.expr({**scope, xt.text: x})
            return Lam(x, body, span=self.span_from(start))
        if self.accept("rec"):
            xt = self.ident()
            x = self.session.fresh(xt.text, VarKind.TERM)
            self.expect(".")
            body = self.expr({**scope, xt.text: x})
            if not is_value(body):
                raise ParseError("the body of rec must be a value", start.line, start.col)
            return Rec(x, body, span=self.span_from(start))
        head = self.app(scope)
        if self.accept("::"):
            tail = self.expr(scope)
            return Cons(head, tail, span=self.span_from(start))
        return head

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind == "id" or (t.kind in ("sym", "kw") and t.text in ("(", "()", "[]", "[", "case"))

    def app(self, scope: dict) -> Expr:
        start = self.tok
        k = self.accept("inj1", "inj2")
        if k is not None:
            body = self.atom(scope)
            return Inj(int(k.text[-1]), body, span=self.span_from(start))
        head = self.atom(scope)
        args = []
        while self._starts_atom():
            args.append(self.atom(scope))
        if not args:
            return head
        return App(head, tuple(args), span=self.span_from(start))

    def atom(self, scope: dict) -> Expr:
        start = self.tok
        if self.tok.kind == "id":
            self.pos += 1
            v = scope.get(start.text) or self.session.fresh(start.text, VarKind.TERM)
            return Var(v, span=self.span_from(start))
        if self.accept("()"):
            return UnitE(span=self.span_from(start))
        if self.accept("[]"):
            return Nil(span=self.span_from(start))
        if self.accept("["):
            self.expect("]")
            return Nil(span=self.span_from(start))
        if self.accept("case"):
            self.expect("(")
            scrut = self.expr(scope)
            self.expect(",")
            branches = [self.branch(scope)]
            while self.accept("|"):
                branches.append(self.branch(scope))
            self.expect(")")
            return Case(scrut, tuple(branches), span=self.span_from(start))
        if self.accept("("):
            if self.accept(")"):
                return UnitE(span=self.span_from(start))
            e = self.expr(scope)
            if self.accept(":"):
                ty = self.type_()
                self.expect(")")
                return Anno(self.bind_scoped(e, ty), ty, span=self.span_from(start))
            if self.accept(","):
                r = self.expr(scope)
                self.expect(")")
                return Pair(e, r, span=self.span_from(start))
            self.expect(")")
            return e
        self._expect(["identifier", "(", "()", "[]", "case"])
        self.fail()

    def branch(self, scope: dict) -> Branch:
        start = self.tok
        p = self.pattern()
        names = [v.name for v in pattern_vars(p)]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ParseError(f"pattern variable {sorted(dup)[0]!r} bound twice", start.line, start.col)
        self.expect("=>")
        inner = dict(scope)
        for v in pattern_vars(p):
            inner[v.name] = v
        body = self.expr(inner)
        return Branch((p,), body, span=self.span_from(start))

    # -- patterns -------------------------------------------------------------

    def pattern(self) -> Pattern:
        head = self.papp()
        if self.accept("::"):
            return PCons(head, self.pattern())
        return head

    def papp(self) -> Pattern:
        k = self.accept("inj1", "inj2")
        if k is not None:
            return PInj(int(k.text[-1]), self.patom())
        return self.patom()

    def patom(self) -> Pattern:
        t = self.tok
        if t.kind == "id":
            self.pos += 1
            return PVar(self.session.fresh(t.text, VarKind.TERM))
        if self.accept("_"):
            return PWild()
        if self.accept("()"):
            return PUnit()
        if self.accept("[]"):
            return PNil()
        if self.accept("["):
            self.expect("]")
            return PNil()
        if self.accept("("):
            if self.accept(")"):
                return PUnit()
            p = self.pattern()
            if self.accept(","):
                r = self.pattern()
                self.expect(")")
                return PPair(p, r)
            self.expect(")")
            return p
        self._expect(["identifier", "_", "(", "()", "[]"])
        self.fail()

    # -- types ----------------------------------------------------------------

    def type_(self, scope: Optional[dict] = None) -> Type:
        scope = scope if scope is not None else {}
        start = self.tok
        q = self.accept("forall", "exists")
        if q is not None:
            at = self.ident()
            self.expect(":")
            k = self.sort()
            self.expect(".")
            v = self.session.fresh(at.text, VarKind.UNIVERSAL)
            body = self.type_({**scope, at.text: v})
            cls = TForall if q.text == "forall" else TExists
            return cls(v, k, body, span=self.span_from(start))

        def guard():
            p = self.prop(scope)
            if not self.accept("=>"):
                raise _Backtrack()
            return p

        p = self.attempt(guard)
        if p is not None:
            return TImplies(p, self.type_(scope), span=self.span_from(start))
        left = self.with_(scope)
        if self.accept("->"):
            return TBin(BinOp.ARROW, left, self.type_(scope), span=self.span_from(start))
        return left

    def sort(self) -> Sort:
        if self.accept("*"):
            return Sort.STAR
        if self.accept("N"):
            return Sort.NAT
        self.fail()

    def prop(self, scope: dict) -> Prop:
        def paren():
            self.expect("(")
            l = self.sum_(scope)
            self.expect("=")
            r = self.sum_(scope)
            self.expect(")")
            return Prop(l, r)

        p = self.attempt(paren)
        if p is not None:
            return p
        l = self.sum_(scope)
        self.expect("=")
        return Prop(l, self.sum_(scope))

    def with_(self, scope: dict) -> Type:
        start = self.tok
        a = self.sum_(scope)
        while self.accept("/\\"):
            a = TWith(a, self.prop(scope), span=self.span_from(start))
        return a

    def sum_(self, scope: dict) -> Type:
        start = self.tok
        a = self.prod_(scope)
        while self.accept("+"):
            a = TBin(BinOp.SUM, a, self.prod_(scope), span=self.span_from(start))
        return a

    def prod_(self, scope: dict) -> Type:
        start = self.tok
        a = self.tapp(scope)
        while self.accept("*"):
            a = TBin(BinOp.PROD, a, self.tapp(scope), span=self.span_from(start))
        return a

    def tapp(self, scope: dict) -> Type:
        start = self.tok
        if self.accept("Vec"):
            t = self.tatom(scope)
            el = self.tatom(scope)
            return TVec(t, el, span=self.span_from(start))
        if self.accept("S"):
            return TSucc(self.tatom(scope), span=self.span_from(start))
        return self.tatom(scope)

    def tatom(self, scope: dict) -> Type:
        start = self.tok
        if start.kind == "num":
            if start.text != "1":
                raise ParseError(f"unexpected number {start.text}; only 1 denotes the unit type", start.line, start.col)
            self.pos += 1
            return TUnit(span=self.span_from(start))
        if self.accept("Z"):
            return TZero(span=self.span_from(start))
        if start.kind == "id":
            self.pos += 1
            v = scope.get(start.text)
            if v is None:
                v = self.pending.setdefault(start.text, self.session.fresh(start.text, VarKind.UNIVERSAL))
            return TUVar(v, span=self.span_from(start))
        if self.accept("^"):
            at = self.ident()
            v = self.evars.setdefault(at.text, self.session.fresh(at.text, VarKind.EXISTENTIAL))
            return TEVar(v, span=self.span_from(start))
        if self.accept("("):
            a = self.type_(scope)
            self.expect(")")
            return a
        self._expect(["1", "Z", "identifier", "("])
        self.fail()


def _no_evars(e: Expr) -> None:
    from .syntax import fev

    def walk(e):
        match e:
            case Anno(b, t):
                if fev(t):
                    sp = e.span or Span(0, 0, 0, 0)
                    raise ParseError("annotations may not mention existential variables", sp.line, sp.col)
                walk(b)
            case Lam(_, b) | Rec(_, b) | Inj(_, b):
                walk(b)
            case App(h, s):
                walk(h)
                for a in s:
                    walk(a)
            case Pair(l, r) | Cons(l, r):
                walk(l)
                walk(r)
            case Case(s, bs):
                walk(s)
                for b in bs:
                    walk(b.body)

    walk(e)


def parse_program(text: str, path: str = "<input>", session: Optional[Session] = None) -> SourceFile:
    p = Parser(text, session)
    sf = p.program(path)
    for d in sf.defs:
        _no_evars(d.expr)
        if d.ty is not None and p.evars:
            from .syntax import fev

            if fev(d.ty):
                sp = d.span or Span(0, 0, 0, 0)
                raise ParseError("annotations may not mention existential variables", sp.line, sp.col)
    if sf.final_expr is not None:
        _no_evars(sf.final_expr)
    return sf


def _whole(p: Parser, fn):
    out = fn()
    if p.tok.kind != "eof":
        p._expect(["end of input"])
        p.fail()
    return out


def parse_type(text: str, session: Optional[Session] = None, names: Optional[dict[str, Ident]] = None) -> Type:
    """Parse a type. Free names resolve through ``names`` if given (universal
    idents by name, existential ones by ``'^' + name``); otherwise each free
    name denotes one fresh variable."""
    p = Parser(text, session)
    if names:
        for k, v in names.items():
            if k.startswith("^"):
                p.evars[k[1:]] = v
            else:
                p.pending[k] = v
    return _whole(p, p.type_)


def parse_expr(text: str, session: Optional[Session] = None, scope: Optional[dict[str, Ident]] = None) -> Expr:
    p = Parser(text, session)
    e = _whole(p, lambda: p.expr(dict(scope or {})))
    _no_evars(e)
    return e


def parse_prop(text: str, session: Optional[Session] = None, names: Optional[dict[str, Ident]] = None) -> Prop:
    p = Parser(text, session)
    if names:
        for k, v in names.items():
            if k.startswith("^"):
                p.evars[k[1:]] = v
            else:
                p.pending[k] = v
    return _whole(p, lambda: p.prop({}))
