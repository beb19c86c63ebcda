"""Sequent values and their text syntax.

Three flavours:

* :class:`Sequent` - multiset context, single goal (``g1, g2 => f``).
* :class:`HistSequent` - history set, set context, goal (``h1 | g1, g2 => f``
  in printed form; the history is never parsed from user input).
* :class:`SplitSequent` - a sequent whose context is partitioned into two
  parts for interpolation (``g1, g2 ; d1, d2 => f``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .formula import Formula, ParseError, language, parse, sort_key

__all__ = [
    "Sequent", "HistSequent", "SplitSequent", "parse_sequent", "parse_split",
    "parse_goal", "common_language",
]


def _canon(fs: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(fs, key=sort_key))


def _join(fs: Iterable[Formula]) -> str:
    return ", ".join(str(f) for f in fs)


@dataclass(frozen=True)
class Sequent:
    """``context => goal`` with a multiset context.

    The context is stored as a sorted tuple so that equal multisets compare
    and hash equal.
    """

    context: tuple[Formula, ...]
    goal: Formula

    def __init__(self, context: Iterable[Formula], goal: Formula):
        object.__setattr__(self, "context", _canon(context))
        object.__setattr__(self, "goal", goal)

    def counts(self) -> Counter:
        return Counter(self.context)

    def add(self, *fs: Formula, goal: Formula | None = None) -> Sequent:
        return Sequent(self.context + fs, self.goal if goal is None else goal)

    def remove(self, f: Formula) -> tuple[Formula, ...]:
        """Context with one occurrence of ``f`` removed."""
        ctx = list(self.context)
        ctx.remove(f)
        return tuple(ctx)

    def __str__(self):
        ctx = _join(self.context)
        return f"{ctx} => {self.goal}" if ctx else f"=> {self.goal}"


@dataclass(frozen=True)
class HistSequent:
    """``history | context => goal`` with set-valued history and context."""

    history: frozenset
    context: frozenset
    goal: Formula

    def __init__(self, history: Iterable[Formula], context: Iterable[Formula], goal: Formula):
        object.__setattr__(self, "history", frozenset(history))
        object.__setattr__(self, "context", frozenset(context))
        object.__setattr__(self, "goal", goal)

    @classmethod
    def initial(cls, seq: Sequent) -> HistSequent:
        return cls((), seq.context, seq.goal)

    def plain(self) -> Sequent:
        return Sequent(self.context, self.goal)

    def size(self) -> int:
        """Number of formula slots: history, context and goal."""
        return len(self.history) + len(self.context) + 1

    def __str__(self):
        hist = _join(_canon(self.history))
        ctx = _join(_canon(self.context))
        body = f"{ctx} => {self.goal}" if ctx else f"=> {self.goal}"
        return f"{hist} | {body}" if hist else f"| {body}"


@dataclass(frozen=True)
class SplitSequent:
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]
    goal: Formula

    def __init__(self, left: Iterable[Formula], right: Iterable[Formula], goal: Formula):
        object.__setattr__(self, "left", _canon(left))
        object.__setattr__(self, "right", _canon(right))
        object.__setattr__(self, "goal", goal)

    def merged(self) -> Sequent:
        return Sequent(self.left + self.right, self.goal)

    def __str__(self):
        return f"{_join(self.left)} ; {_join(self.right)} => {self.goal}"


def common_language(split: SplitSequent) -> set[str]:
    """Atoms shared by the left part and the right part together with the goal."""
    return language(split.left) & language(split.right + (split.goal,))


def _parse_list(text: str, base: int) -> list[Formula]:
    if not text.strip():
        return []
    out = []
    for piece in text.split(","):
        if not piece.strip():
            raise ParseError("empty formula in list", base)
        out.append(parse(piece, offset=base))
        base += len(piece.encode()) + 1
    return out


def parse_sequent(text: str) -> Sequent:
    """Parse ``g1, g2 => f``.  An empty context is written ``=> f``."""
    if "=>" not in text:
        raise ParseError("expected '=>'", len(text.encode()))
    lhs, rhs = text.split("=>", 1)
    base = len(lhs.encode()) + 2
    return Sequent(_parse_list(lhs, 0), parse(rhs, offset=base))


def parse_goal(text: str) -> Sequent:
    """Parse either a sequent or a bare formula (read as ``=> f``)."""
    if "=>" in text:
        return parse_sequent(text)
    return Sequent((), parse(text))


def parse_split(text: str) -> SplitSequent:
    """Parse ``g1, g2 ; d1, d2 => f``.  Either part may be empty."""
    if "=>" not in text:
        raise ParseError("expected '=>'", len(text.encode()))
    lhs, rhs = text.split("=>", 1)
    if ";" not in lhs:
        raise ParseError("expected ';' separating the two parts", len(lhs.encode()))
    gamma, delta = lhs.split(";", 1)
    delta_base = len(gamma.encode()) + 1
    goal = parse(rhs, offset=len(lhs.encode()) + 2)
    return SplitSequent(_parse_list(gamma, 0), _parse_list(delta, delta_base), goal)
