"""Rule-application traces."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterator, Union

Detail = Union[None, str, Callable[[], str]]


@dataclass(frozen=True)
class TraceLine:
    depth: int
    rule: str
    detail: str

    def __str__(self) -> str:
        pad = "  " * self.depth
        return f"{pad}{self.rule}" + (f"  {self.detail}" if self.detail else "")


class Tracer:
    """Records one line per applied rule, indented by derivation depth."""

    enabled = True

    def __init__(self) -> None:
        self.lines: list[TraceLine] = []
        self.depth = 0

    def rule(self, name: str, detail: Detail = None) -> None:
        text = detail() if callable(detail) else (detail or "")
        self.lines.append(TraceLine(self.depth, name, text))

    @contextmanager
    def nest(self) -> Iterator[None]:
        self.depth += 1
        try:
            yield
        finally:
            self.depth -= 1

    def rules(self) -> list[str]:
        return [l.rule for l in self.lines]

    def render(self) -> str:
        return "\n".join(str(l) for l in self.lines)


class _NullTracer(Tracer):
    enabled = False

    def rule(self, name: str, detail: Detail = None) -> None:
        pass

    @contextmanager
    def nest(self) -> Iterator[None]:
        yield


NULL_TRACER = _NullTracer()


def is_subsequence(needle: list[str], haystack: list[str]) -> bool:
    it = iter(haystack)
    return all(any(h == n for h in it) for n in needle)
