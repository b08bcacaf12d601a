import pytest
from hypothesis import given

from idxcheck.context import CMarker, CSolved, Ctx
from idxcheck.errors import ParseError
from idxcheck.parser import parse_expr, parse_program, parse_type
from idxcheck.printer import print_ctx, print_expr, print_type
from idxcheck.syntax import (
    App,
    Case,
    PCons,
    PNil,
    PPair,
    Prop,
    Session,
    Sort,
    TBin,
    TForall,
    TImplies,
    TExists,
    TUnit,
    TVec,
    TWith,
    TZero,
    VarKind,
    alpha_eq,
    expr_key,
    nat,
)

from strategies import exprs, types


def test_annotated_def():
    sf = parse_program("def id : forall a:*. a -> a = \\x -> x;")
    assert len(sf.defs) == 1
    d = sf.defs[0]
    assert d.name.name == "id" and d.ty is not None
    assert sf.final_expr is None


def test_zip_branches():
    src = "def zip = \\p -> case(p, ([], []) => [] | (x::xs, y::ys) => (x,y) :: zip (xs, ys));"
    sf = parse_program(src)
    lam = sf.defs[0].expr
    c = lam.body
    assert isinstance(c, Case) and len(c.branches) == 2
    (nil_pat,), (cons_pat,) = (b.pats for b in c.branches)
    assert isinstance(nil_pat, PPair) and isinstance(nil_pat.left, PNil) and isinstance(nil_pat.right, PNil)
    assert isinstance(cons_pat, PPair) and isinstance(cons_pat.left, PCons) and isinstance(cons_pat.right, PCons)


def test_unclosed_lambda_reports_end_of_input():
    with pytest.raises(ParseError) as exc:
        parse_expr("(\\x ->")
    assert exc.value.line == 1 and exc.value.col == 7
    assert "end of input" in str(exc.value)


def test_error_position_and_expected_set():
    with pytest.raises(ParseError) as exc:
        parse_program("def f : 1 = ();\ndef g : 1 = );")
    err = exc.value
    assert (err.line, err.col) == (2, 13)
    assert err.expected


def test_head_annotation():
    t = parse_type("forall n:N. forall a:*. Vec (S n) a -> a")
    assert isinstance(t, TForall) and t.sort is Sort.NAT
    inner = t.body
    assert isinstance(inner, TForall) and inner.sort is Sort.STAR
    arr = inner.body
    assert isinstance(arr, TBin) and isinstance(arr.left, TVec)
    assert print_type(t) == "forall n:N. forall a:*. Vec (S n) a -> a"


def test_guarded_and_asserting():
    g = parse_type("(n = Z) => 1")
    assert isinstance(g, TImplies) and g.prop.rhs == TZero() and g.body == TUnit()
    w = parse_type("exists a:*. a /\\ (Z = Z)")
    assert isinstance(w, TExists) and isinstance(w.body, TWith)
    assert w.body.prop == Prop(TZero(), TZero())


def test_print_examples():
    assert print_type(parse_type("1 -> 1")) == "1 -> 1"
    assert print_type(parse_type("forall a:*. a->a")) == "forall a:*. a -> a"
    s = Session()
    a, b = s.fresh("a", VarKind.EXISTENTIAL), s.fresh("b", VarKind.EXISTENTIAL)
    assert print_ctx(Ctx([CSolved(a, Sort.STAR, TUnit()), CMarker(b)])) == "^a:*=1, >^b"


def test_arrow_and_cons_associate_right():
    t = parse_type("1 -> 1 -> 1")
    assert t == TBin(t.op, TUnit(), TBin(t.op, TUnit(), TUnit()))
    e = parse_expr("() :: () :: []")
    assert print_expr(e) == "() :: () :: []"
    assert isinstance(e.tail, type(e))


def test_application_collects_a_spine():
    s = Session()
    f = s.fresh("f", VarKind.TERM)
    e = parse_expr("f () () ()", s, {"f": f})
    assert isinstance(e, App) and len(e.spine) == 3


def test_comments_and_index_literals():
    sf = parse_program("-- a comment\ndef v : Vec (S (S Z)) 1 = () :: () :: []; -- trailing\n")
    assert sf.defs[0].ty.index == nat(2)


def test_annotations_must_not_mention_existentials():
    with pytest.raises(ParseError):
        parse_program("def f : ^a = ();")


def test_duplicate_definitions_rejected():
    with pytest.raises(ParseError):
        parse_program("def f : 1 = (); def f : 1 = ();")


@given(types())
def test_type_round_trip(t):
    s = Session()
    assert alpha_eq(parse_type(print_type(t), s), t, free_by_name=True)


@given(exprs())
def test_expr_round_trip(e):
    back = parse_expr(print_expr(e), Session())
    assert expr_key(back, free_by_name=True) == expr_key(e, free_by_name=True)
