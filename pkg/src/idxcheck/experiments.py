"""Seeded experiment suites shared by the test-suite and ``scripts/``.

Each suite draws its cases from :mod:`idxcheck.gen` with a fixed seed and
returns a :class:`SuiteResult`; a suite never stops at the first failure, so
the counts are comparable across runs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .checker import Checker, SynthResult
from .context import CUVar, Ctx, apply_ctx, extends, wf_ctx, wf_type
from .errors import InstantiationError, TypeCheckError
from .gen import ExprGen, context, ctx_atoms, extension_chain, ground_pair, mono_or_poly, term
from .oracle import Fuel, _terms, apply_subst, decl_typecheck, mgu, verdict
from .printer import print_expr, print_type
from .solve import BOTTOM, check_eq, elim_eq, instantiate
from .subtype import subtype
from .syntax import BANG, Polarity, Session, Sort, TEVar, TUVar, VarKind, alpha_eq, fev


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def summary(self) -> str:
        bits = "".join(f" {k}={v}" for k, v in self.extra.items())
        return f"{self.name}: {self.cases} cases, {len(self.failures)} failures, {self.seconds:.1f}s{bits}"


def _timed(name: str, body: Callable[[SuiteResult], None]) -> SuiteResult:
    res = SuiteResult(name)
    t0 = time.perf_counter()
    body(res)
    res.seconds = time.perf_counter() - t0
    return res


def _rng(seed: int, salt: str) -> random.Random:
    return random.Random(f"{seed}:{salt}")


# ---------------------------------------------------------------------------
# Context lemmas
# ---------------------------------------------------------------------------


def extension_laws(seed: int, n: int) -> SuiteResult:
    """Reflexivity and transitivity of context extension."""

    def body(res: SuiteResult) -> None:
        rng, s = _rng(seed, "ext"), Session()
        while res.cases < n:
            g = context(rng, s, rng.randint(0, 7))
            if not wf_ctx(g):
                res.fail(f"generator produced an ill-formed context {g}")
                continue
            d = extension_chain(rng, s, g, rng.randint(0, 4))
            t = extension_chain(rng, s, d, rng.randint(0, 4))
            res.cases += 1
            if not extends(g, g):
                res.fail(f"not reflexive: {g}")
            if not (extends(g, d) and extends(d, t)):
                res.fail(f"generated chain is not an extension: {g} / {d} / {t}")
            elif not extends(g, t):
                res.fail(f"not transitive: {g} / {d} / {t}")

    return _timed("extends reflexivity/transitivity", body)


def substitution_laws(seed: int, n: int) -> SuiteResult:
    """[G][G]A = [G]A and [D][G]A = [D]A whenever G extends to D."""

    def body(res: SuiteResult) -> None:
        rng, s = _rng(seed, "subst"), Session()
        while res.cases < n:
            g = context(rng, s, rng.randint(0, 7))
            a = mono_or_poly(rng, s, g, 6)
            d = extension_chain(rng, s, g, rng.randint(1, 4))
            res.cases += 1
            once = apply_ctx(g, a)
            if not alpha_eq(apply_ctx(g, once), once):
                res.fail(f"apply_ctx not idempotent on {print_type(a)} under {g}")
            if not alpha_eq(apply_ctx(d, once), apply_ctx(d, a)):
                res.fail(f"monotonicity fails on {print_type(a)} under {g} -> {d}")

    return _timed("apply_ctx idempotence/monotonicity", body)


# ---------------------------------------------------------------------------
# Auxiliary judgments
# ---------------------------------------------------------------------------


def _normal_term(rng: random.Random, g: Ctx, sort: Sort, exclude=None, max_size: int = 4):
    atoms = [a for a in ctx_atoms(g, sort) if a.var != exclude]
    return apply_ctx(g, term(rng, sort, atoms, max_size))


def instantiation_laws(seed: int, n: int) -> SuiteResult:
    """instantiate solves exactly one evar and extends its input."""

    def body(res: SuiteResult) -> None:
        rng, s = _rng(seed, "inst"), Session()
        skipped = 0
        while res.cases < n:
            g = context(rng, s, rng.randint(1, 7))
            unsolved = g.unsolved()
            if not unsolved:
                continue
            alpha = rng.choice(unsolved)
            k = g.var_sort(alpha)
            tau = _normal_term(rng, g, k, exclude=alpha)
            if alpha in fev(tau):
                continue
            try:
                d = instantiate(g, alpha, tau, k, s)
            except InstantiationError:
                skipped += 1  # tau mentions a universal declared right of alpha
                continue
            res.cases += 1
            if len(g.unsolved()) != len(d.unsolved()) + 1:
                res.fail(f"unsolved count {len(g.unsolved())} -> {len(d.unsolved())}: {g} => {d}")
            if not extends(g, d):
                res.fail(f"output does not extend input: {g} => {d}")
            if not alpha_eq(apply_ctx(d, TEVar(alpha)), apply_ctx(d, tau)):
                res.fail(f"instantiation did not equate {alpha} with {print_type(tau)}")
        res.extra["no_rule"] = skipped

    return _timed("instantiate solves/extends", body)


def checkeq_laws(seed: int, n: int) -> SuiteResult:
    """check_eq either returns its input or strictly lowers the unsolved count."""

    def body(res: SuiteResult) -> None:
        rng, s = _rng(seed, "checkeq"), Session()
        rejected = 0
        while res.cases < n:
            g = context(rng, s, rng.randint(1, 7))
            k = rng.choice((Sort.STAR, Sort.NAT))
            sigma = _normal_term(rng, g, k)
            t = sigma if rng.random() < 0.2 else _normal_term(rng, g, k)
            try:
                d = check_eq(g, sigma, t, k, s)
            except TypeCheckError:
                rejected += 1
                continue
            res.cases += 1
            if d != g and not len(d.unsolved()) < len(g.unsolved()):
                res.fail(f"check_eq changed the context without solving: {g} => {d}")
            if not extends(g, d):
                res.fail(f"check_eq output does not extend input: {g} => {d}")
            if not alpha_eq(apply_ctx(d, sigma), apply_ctx(d, t)):
                res.fail(f"check_eq output does not equate {print_type(sigma)} and {print_type(t)}")
        res.extra["not_equal"] = rejected

    return _timed("check_eq solving", body)


# ---------------------------------------------------------------------------
# Typing lemmas over generated programs
# ---------------------------------------------------------------------------


def _programs(seed: int, salt: str, s: Session) -> Iterable:
    gen = ExprGen(_rng(seed, salt), s)
    while True:
        yield gen.program()


def typing_laws(seed: int, n: int) -> tuple[SuiteResult, SuiteResult]:
    """Typing extension and well-formed outputs, observed at every judgment
    exit (check, synth, spine, recspine, match) of ``n`` generated programs."""
    ext = SuiteResult("typing extension")
    wf = SuiteResult("well-formed outputs")
    s = Session()
    judgments = synths = accepted = 0

    def observe(kind: str, ctx_in: Ctx, result) -> None:
        nonlocal judgments, synths
        judgments += 1
        out = result.out if isinstance(result, SynthResult) else result
        if isinstance(out, Ctx) and not extends(ctx_in, out):
            ext.fail(f"{kind}: {ctx_in} does not extend to {out}")
        if isinstance(result, SynthResult):
            synths += 1
            if not wf_type(result.out, result.ty, result.princ):
                wf.fail(f"{kind}: {print_type(result.ty)} {result.princ} ill-formed under {result.out}")

    t0 = time.perf_counter()
    for e, a in _programs(seed, "typing", s):
        if ext.cases >= n:
            break
        ext.cases += 1
        wf.cases += 1
        try:
            Checker(s, observer=observe).check(Ctx(), BANG, e, a)
            accepted += 1
        except TypeCheckError:
            pass
    ext.seconds = wf.seconds = time.perf_counter() - t0
    ext.extra = {"judgments": judgments, "accepted": accepted}
    wf.extra = {"synth_results": synths}
    return ext, wf


def _outcome(run: Callable[[], object]):
    try:
        return ("ok", run())
    except TypeCheckError as err:
        return ("error", type(err).__name__, err.rule)


def determinacy(seed: int, n: int) -> SuiteResult:
    """Running a judgment twice from the same session state gives identical
    results: typing on generated programs, subtyping on generated types."""

    def body(res: SuiteResult) -> None:
        rng, s = _rng(seed, "det"), Session()
        progs = _programs(seed, "det", s)
        while res.cases < n:
            res.cases += 1
            if res.cases % 2:
                e, a = next(progs)
                runs = []
                for _ in range(2):
                    s2 = s.clone()
                    runs.append(_outcome(lambda: _synth_tuple(Checker(s2).check(Ctx(), BANG, e, a))))
                if runs[0] != runs[1]:
                    res.fail(f"typing not determinate on {print_expr(e)} : {print_type(a)}")
            else:
                g = context(rng, s, rng.randint(0, 5))
                a, b = mono_or_poly(rng, s, g, 5), mono_or_poly(rng, s, g, 5)
                a, b = apply_ctx(g, a), apply_ctx(g, b)
                pol = rng.choice((Polarity.POS, Polarity.NEG))
                runs = []
                for _ in range(2):
                    s2 = s.clone()
                    runs.append(_outcome(lambda: subtype(g, pol, a, b, s2)))
                if runs[0] != runs[1]:
                    res.fail(f"subtyping not determinate on {print_type(a)} <= {print_type(b)}")

    return _timed("determinacy", body)


def _synth_tuple(x):
    return (x.ty, x.princ, x.out) if isinstance(x, SynthResult) else x


def metatheory(seed: int = 0, n: int = 10_000) -> list[SuiteResult]:
    ext, wf = typing_laws(seed, n)
    return [
        extension_laws(seed, n),
        substitution_laws(seed, n),
        instantiation_laws(seed, n),
        checkeq_laws(seed, n),
        ext,
        wf,
        determinacy(seed, n),
    ]


# ---------------------------------------------------------------------------
# Unification differential
# ---------------------------------------------------------------------------


def unification(seed: int = 0, n: int = 10_000, max_size: int = 6, probe_size: int = 3) -> SuiteResult:
    """elim_eq against mgu on ground pairs: same success, and on success the
    appended equations act like the unifier on every in-scope term of size
    at most ``probe_size``."""

    def body(res: SuiteResult) -> None:
        rng, s = _rng(seed, "unify"), Session()
        unifiable = 0
        while res.cases < n:
            g = Ctx()
            uvars: dict[Sort, list] = {Sort.STAR: [], Sort.NAT: []}
            for _ in range(rng.randint(1, 4)):
                k = rng.choice((Sort.STAR, Sort.NAT))
                v = s.fresh(rng.choice("abc") if k is Sort.STAR else rng.choice("nm"), VarKind.UNIVERSAL)
                g = g.extend(CUVar(v, k))
                uvars[k].append(TUVar(v))
            a, b, k = ground_pair(rng, uvars, max_size)
            res.cases += 1
            out = elim_eq(g, a, b, k, s)
            theta = mgu(a, b)
            if (out is BOTTOM) != (theta is None):
                res.fail(f"elim_eq {'bottom' if out is BOTTOM else 'ok'} but mgu {'none' if theta is None else 'exists'}: {print_type(a)} = {print_type(b)}")
                continue
            if theta is None:
                continue
            unifiable += 1
            for sort in (Sort.STAR, Sort.NAT):
                vars_ = tuple(e.var for e in g.entries if isinstance(e, CUVar) and e.sort is sort)
                for size_ in range(1, probe_size + 1):
                    for u in _terms(vars_, sort, size_):
                        if apply_ctx(out, u) != apply_subst(theta, u):
                            res.fail(f"equations and mgu differ on {print_type(u)} for {print_type(a)} = {print_type(b)}")
                            break
        res.extra["unifiable"] = unifiable

    return _timed("elim_eq vs mgu", body)


# ---------------------------------------------------------------------------
# Closed-expression differential
# ---------------------------------------------------------------------------


def closed_differential(
    seed: int = 0, n: int = 2_000, fuel: Optional[Fuel] = None, on_disagreement: Optional[Callable[[str], None]] = None
) -> SuiteResult:
    """Algorithmic checking of generated closed programs against the
    declarative oracle. Only definite oracle answers are compared."""

    def body(res: SuiteResult) -> None:
        s = Session()
        counts = {"agree_accept": 0, "agree_reject": 0, "unknown": 0}
        for e, a in _programs(seed, "closed", s):
            if res.cases >= n:
                break
            res.cases += 1
            try:
                Checker(s).check(Ctx(), BANG, e, a)
                alg = True
            except TypeCheckError:
                alg = False
            v = verdict(lambda: decl_typecheck(Ctx(), BANG, e, a, fuel or Fuel(), s))
            if v is None:
                counts["unknown"] += 1
            elif v == alg:
                counts["agree_accept" if v else "agree_reject"] += 1
            else:
                msg = f"algorithm {'accepts' if alg else 'rejects'}, oracle {'accepts' if v else 'rejects'}: {print_expr(e)} : {print_type(a)}"
                res.fail(msg)
                if on_disagreement:
                    on_disagreement(msg)
        res.extra = {**counts, "unknown_rate": round(counts["unknown"] / max(1, res.cases), 3)}

    return _timed("closed-expression differential", body)
