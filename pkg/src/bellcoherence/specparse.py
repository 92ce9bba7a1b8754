"""Parser for channel spec strings such as ``"A:bf(p)^10; B:pf(q)^10"``.

Grammar (whitespace-insensitive, channel names case-insensitive)::

    spec  := side (';' side)?
    side  := ('A' | 'B') ':' chan
    chan  := name '(' var? ')' ('^' uint)?
    name  := 'bf' | 'pf' | 'bpf' | 'dep' | 'gad' | 'ad' | 'id'
    var   := 'p' | 'q' | decimal

An empty argument list is accepted only for ``id``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, Side
from .errors import ParseError, SemanticError

_NAMES = tuple(k.value for k in ChannelKind)
_DECIMAL = re.compile(r"[0-9]+(?:\.[0-9]*)?|\.[0-9]+")
_UINT = re.compile(r"[0-9]+")
_NAME = re.compile(r"[A-Za-z]+")


@dataclass(frozen=True)
class SideSpec:
    kind: ChannelKind
    rate: str | float | None  # "p", "q", a constant in [0, 1], or None for id
    reps: int = 1

    def render(self) -> str:
        if self.rate is None:
            arg = ""
        elif isinstance(self.rate, str):
            arg = self.rate
        else:
            arg = np.format_float_positional(float(self.rate), trim="-")
        tail = f"^{self.reps}" if self.reps != 1 else ""
        return f"{self.kind.value}({arg}){tail}"

    def rate_value(self, p: float, q: float) -> float:
        if self.rate is None:
            return 0.0
        if self.rate == "p":
            return p
        if self.rate == "q":
            return q
        return float(self.rate)


@dataclass(frozen=True)
class ChannelSpec:
    a: SideSpec | None = None
    b: SideSpec | None = None

    def __post_init__(self):
        if self.a is None and self.b is None:
            raise SemanticError("channel spec must name at least one side")

    def side(self, side: Side) -> SideSpec | None:
        return self.a if Side(side) is Side.FIRST else self.b

    def variables(self) -> set[str]:
        return {s.rate for s in (self.a, self.b) if s is not None and isinstance(s.rate, str)}

    def render(self) -> str:
        parts = []
        if self.a is not None:
            parts.append(f"A:{self.a.render()}")
        if self.b is not None:
            parts.append(f"B:{self.b.render()}")
        return "; ".join(parts)

    def __str__(self):
        return self.render()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def offset(self) -> int:
        return len(self.text[: self.pos].encode("utf-8"))

    def fail(self, what: str, expected):
        self.skip_ws()
        if self.pos >= len(self.text):
            found = "end of input"
        else:
            found = repr(self.text[self.pos])
        raise ParseError(f"{what}: unexpected {found}", self.offset(), expected)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}", {ch})
        self.pos += 1

    def match(self, pattern: re.Pattern):
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if m is None:
            return None, self.offset()
        start = self.offset()
        self.pos = m.end()
        return m.group(0), start


def _parse_side(sc: _Scanner):
    sc.skip_ws()
    start = sc.offset()
    letter = sc.peek()
    if letter.upper() not in ("A", "B") or not letter:
        sc.fail("side label", {"A", "B"})
    sc.pos += 1
    side = Side.FIRST if letter.upper() == "A" else Side.SECOND
    sc.expect(":")

    word, name_at = sc.match(_NAME)
    if word is None or word.lower() not in _NAMES:
        if word is not None:
            raise ParseError(f"unknown channel {word!r}", name_at, set(_NAMES))
        sc.fail("channel name", set(_NAMES))
    kind = ChannelKind(word.lower())

    sc.expect("(")
    rate: str | float | None
    ch = sc.peek()
    arg_at = sc.offset()
    if ch == ")":
        rate = None
    elif ch.lower() in ("p", "q"):
        nxt = sc.text[sc.pos + 1 : sc.pos + 2]
        if nxt.isalnum() or nxt == "_":
            sc.fail("rate variable", {"p", "q", "decimal", ")"})
        rate = ch.lower()
        sc.pos += 1
    else:
        tok, arg_at = sc.match(_DECIMAL)
        if tok is None:
            sc.fail("rate argument", {"p", "q", "decimal", ")"})
        rate = float(tok)
    sc.expect(")")

    reps = 1
    if sc.peek() == "^":
        sc.pos += 1
        tok, reps_at = sc.match(_UINT)
        if tok is None:
            sc.fail("repetition count", {"uint"})
        reps = int(tok)
        if reps < 1:
            raise SemanticError("repetition count must be at least 1", reps_at)

    if rate is None and kind is not ChannelKind.ID:
        raise SemanticError(f"channel {kind.value} needs a rate argument", arg_at)
    if isinstance(rate, float) and not 0.0 <= rate <= 1.0:
        raise SemanticError(f"constant rate {rate} outside [0, 1]", arg_at)
    if kind is ChannelKind.ID:
        rate = None
    return side, SideSpec(kind, rate, reps), start


def parse_channel_spec(text: str) -> ChannelSpec:
    """Parse a channel spec string; raises ParseError or SemanticError with an offset."""
    if not isinstance(text, str):
        raise TypeError(f"channel spec must be a string, got {type(text).__name__}")
    sc = _Scanner(text)
    sides = {}
    while True:
        side, spec, at = _parse_side(sc)
        if side in sides:
            raise SemanticError(f"duplicate side {side.value}", at)
        sides[side] = spec
        nxt = sc.peek()
        if nxt == "":
            break
        expected = {";", "end of input"} if len(sides) == 1 else {"end of input"}
        if spec.reps == 1:
            expected.add("^")
        if nxt != ";" or len(sides) == 2:
            sc.fail("after channel", expected)
        sc.pos += 1
    return ChannelSpec(sides.get(Side.FIRST), sides.get(Side.SECOND))
