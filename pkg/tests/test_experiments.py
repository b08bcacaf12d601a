"""Small runs of every experiment suite, and mutants each suite must catch."""

import pytest

from idxcheck import experiments as ex
from idxcheck.checker import Checker
from idxcheck.context import Ctx
from idxcheck.errors import TypeCheckError


@pytest.mark.parametrize("result", ex.metatheory(seed=1, n=150), ids=lambda r: r.name)
def test_small_metatheory_run_is_clean(result):
    assert result.cases == 150
    assert result.ok, result.failures[:3]


def test_small_unification_run_is_clean():
    r = ex.unification(seed=1, n=300)
    assert r.cases == 300 and r.ok, r.failures[:3]
    assert 0 < r.extra["unifiable"] < 300


def test_small_closed_differential_is_clean():
    r = ex.closed_differential(seed=1, n=60)
    assert r.ok, r.failures[:3]
    c = r.extra
    assert c["agree_accept"] + c["agree_reject"] + c["unknown"] == 60
    assert c["agree_accept"] > 0 and c["agree_reject"] > 0


def test_suites_are_reproducible():
    a, b = ex.unification(seed=7, n=50), ex.unification(seed=7, n=50)
    assert (a.cases, a.extra) == (b.cases, b.extra)


# -- mutants -------------------------------------------------------------------


def test_instantiation_suite_catches_noop_instantiate(monkeypatch):
    monkeypatch.setattr(ex, "instantiate", lambda g, alpha, tau, k, s, *rest: g)
    assert not ex.instantiation_laws(seed=0, n=50).ok


def test_unification_suite_catches_wrong_mgu(monkeypatch):
    real = ex.mgu
    # forget one binding of each unifier: still a success, but not the same substitution
    monkeypatch.setattr(ex, "mgu", lambda a, b: None if (t := real(a, b)) is None else dict(list(t.items())[1:]))
    assert not ex.unification(seed=0, n=300).ok


def test_unification_suite_catches_lost_clash(monkeypatch):
    monkeypatch.setattr(ex, "mgu", lambda a, b: {})
    assert not ex.unification(seed=0, n=300).ok


class DroppingChecker(Checker):
    """Forgets the last entry of every synthesized output context."""

    def synth(self, ctx, e):
        r = super().synth(ctx, e)
        if len(r.out):
            r = type(r)(r.ty, r.princ, Ctx(list(r.out)[:-1]))
        return r


def test_typing_suite_catches_context_loss(monkeypatch):
    monkeypatch.setattr(ex, "Checker", DroppingChecker)
    ext, _ = ex.typing_laws(seed=0, n=200)
    assert not ext.ok


class AcceptingChecker(Checker):
    def check(self, ctx, p, e, a):
        try:
            return super().check(ctx, p, e, a)
        except TypeCheckError:
            return ctx


def test_differential_catches_unsound_checker(monkeypatch):
    monkeypatch.setattr(ex, "Checker", AcceptingChecker)
    seen = []
    r = ex.closed_differential(seed=0, n=80, on_disagreement=seen.append)
    assert not r.ok and seen == r.failures
