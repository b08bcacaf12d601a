import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from idxcheck.context import CEVar, CHyp, CSolved, CUVar, Ctx
from idxcheck.parser import Parser, _whole, parse_expr
from idxcheck.syntax import BANG, Ident, Session, Sort, VarKind

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent
PROGRAMS = ROOT / "programs"

STAR, NAT = Sort.STAR, Sort.NAT


class Names:
    """Named variables for one test, so that types can be written as text and
    still share identifiers with the contexts built around them."""

    def __init__(self) -> None:
        self.session = Session()
        self.table: dict[str, Ident] = {}

    def uvar(self, name: str) -> Ident:
        return self._get(name, VarKind.UNIVERSAL)

    def evar(self, name: str) -> Ident:
        return self._get("^" + name, VarKind.EXISTENTIAL)

    def term(self, name: str) -> Ident:
        return self._get("~" + name, VarKind.TERM)

    def _get(self, key: str, kind: VarKind) -> Ident:
        if key not in self.table:
            self.table[key] = self.session.fresh(key.lstrip("^~"), kind)
        return self.table[key]

    def ty(self, text: str):
        return self._parse(text, lambda p: p.type_())

    def prop(self, text: str):
        return self._parse(text, lambda p: p.prop({}))

    def _parse(self, text: str, fn):
        p = Parser(text, self.session)
        for k, v in self.table.items():
            if k.startswith("^"):
                p.evars[k[1:]] = v
            elif not k.startswith("~"):
                p.pending[k] = v
        out = _whole(p, lambda: fn(p))
        # names first seen in this text keep their identity for later calls
        for k, v in p.pending.items():
            self.table.setdefault(k, v)
        for k, v in p.evars.items():
            self.table.setdefault("^" + k, v)
        return out

    def expr(self, text: str):
        scope = {k[1:]: v for k, v in self.table.items() if k.startswith("~")}
        return parse_expr(text, self.session, scope)

    # context entries
    def U(self, name: str, sort: Sort = STAR) -> CUVar:
        return CUVar(self.uvar(name), sort)

    def E(self, name: str, sort: Sort = STAR) -> CEVar:
        return CEVar(self.evar(name), sort)

    def S(self, name: str, sort: Sort, text: str) -> CSolved:
        v = self.evar(name)
        return CSolved(v, sort, self.ty(text))

    def H(self, name: str, text: str, p=BANG) -> CHyp:
        v = self.term(name)
        return CHyp(v, self.ty(text), p)


@pytest.fixture
def names() -> Names:
    return Names()


def ctx(*entries) -> Ctx:
    return Ctx(entries)
