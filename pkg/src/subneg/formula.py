"""Formula syntax: AST, parser, printer and basic measures.

The language has atoms, the constant ``T`` (top), ``&``, ``|``, ``->`` and
``~``.  There is deliberately no falsum.  ``a <-> b`` is accepted by the parser
and expanded to ``(a -> b) & (b -> a)``.

Formulas are immutable and hash-cached, so they can be used freely as set
members and dictionary keys during proof search.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

__all__ = [
    "Formula", "Atom", "Top", "And", "Or", "Imp", "Neg", "TOP",
    "ParseError", "parse", "weight", "subformulas", "subformula_closure",
    "language", "neg_tower", "enumerate_formulas",
]


class Formula:
    __slots__ = ("_hash", "_weight", "_text")

    # binding strength used by the printer
    prec = 5

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self):
        text = self._text
        if text is None:
            text = self._text = _render(self)
        return text

    def __lt__(self, other):
        # total order used for canonical printing of contexts
        return sort_key(self) < sort_key(other)

    @property
    def weight(self) -> int:
        return self._weight


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("atom", name))
        self._weight = 1
        self._text = None

    def __eq__(self, other):
        return self is other or (type(other) is Atom and other.name == self.name)

    __hash__ = Formula.__hash__


class Top(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("top")
        self._weight = 1
        self._text = "T"

    def __eq__(self, other):
        return type(other) is Top

    __hash__ = Formula.__hash__


class _Binary(Formula):
    __slots__ = ("left", "right")
    tag = ""

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self._hash = hash((self.tag, left._hash, right._hash))
        self._weight = left._weight + right._weight + 1
        self._text = None

    def children(self):
        return (self.left, self.right)

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is type(self) and other._hash == self._hash
                and other.left == self.left and other.right == self.right)

    __hash__ = Formula.__hash__


class And(_Binary):
    __slots__ = ()
    tag = "and"
    prec = 3


class Or(_Binary):
    __slots__ = ()
    tag = "or"
    prec = 2


class Imp(_Binary):
    __slots__ = ()
    tag = "imp"
    prec = 1


class Neg(Formula):
    __slots__ = ("inner",)
    prec = 4

    def __init__(self, inner: Formula):
        self.inner = inner
        self._hash = hash(("neg", inner._hash))
        self._weight = inner._weight + 1
        self._text = None

    def children(self):
        return (self.inner,)

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Neg and other._hash == self._hash and other.inner == self.inner

    __hash__ = Formula.__hash__


TOP = Top()

_SYMBOL = {And: "&", Or: "|", Imp: "->"}


def _render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Neg):
        inner = str(f.inner)
        if f.inner.prec < Neg.prec:
            inner = f"({inner})"
        return "~" + inner
    left, right = str(f.left), str(f.right)
    if isinstance(f, Imp):
        # right associative
        if f.left.prec <= Imp.prec:
            left = f"({left})"
        if f.right.prec < Imp.prec:
            right = f"({right})"
    else:
        # & and | are left associative
        if f.left.prec < f.prec:
            left = f"({left})"
        if f.right.prec <= f.prec:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def sort_key(f: Formula) -> tuple[int, str]:
    return (f._weight, str(f))


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    """Malformed formula text.  ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


_TOKEN_RE = re.compile(
    r"(?P<iff><->|↔)|(?P<imp>->|→)|(?P<and>&|∧)|(?P<or>\||∨)"
    r"|(?P<neg>~|¬)|(?P<top>T(?![a-zA-Z0-9_])|⊤)|(?P<lpar>\()|(?P<rpar>\))"
    r"|(?P<atom>[a-z][a-zA-Z0-9_]*)"
)


def _tokenize(text: str, base: int) -> list[tuple[str, str, int]]:
    # byte offset of every character position
    byte_at = [base]
    for ch in text:
        byte_at.append(byte_at[-1] + len(ch.encode()))
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            tokens.append(("eof", "", byte_at[pos]))
            return tokens
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", byte_at[pos])
        tokens.append((m.lastgroup, m.group(), byte_at[pos]))
        pos = m.end()


class _Parser:
    def __init__(self, text: str, base: int = 0):
        self.tokens = _tokenize(text, base)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.iff()
        self.take("eof")
        return f

    def iff(self) -> Formula:
        left = self.imp()
        while self.peek() == "iff":
            self.take()
            right = self.imp()
            left = And(Imp(left, right), Imp(right, left))
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "imp":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "or":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "and":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, value, offset = self.take()
        if kind == "neg":
            return Neg(self.unary())
        if kind == "atom":
            return Atom(value)
        if kind == "top":
            return TOP
        if kind == "lpar":
            f = self.iff()
            self.take("rpar")
            return f
        what = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"unexpected {what}", offset)


def parse(text: str, *, offset: int = 0) -> Formula:
    """Parse ``text`` into a formula.

    ``offset`` shifts reported error positions, for callers that parse a slice
    of a larger string.

    >>> str(parse("~p & q -> r"))
    '~p & q -> r'
    """
    return _Parser(text, offset).formula()


# ---------------------------------------------------------------- measures

def weight(f: Formula) -> int:
    return f._weight


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformula occurrences of ``f``, including ``f`` itself (preorder)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def subformula_closure(fs: Iterable[Formula]) -> set[Formula]:
    closure: set[Formula] = set()
    stack = list(fs)
    while stack:
        g = stack.pop()
        if g not in closure:
            closure.add(g)
            stack.extend(g.children())
    return closure


def language(fs: Iterable[Formula]) -> set[str]:
    return {g.name for g in subformula_closure(fs) if isinstance(g, Atom)}


def neg_tower(f: Formula) -> tuple[int, Formula]:
    """Split ``f`` into (number of leading negations, body)."""
    n = 0
    while isinstance(f, Neg):
        f = f.inner
        n += 1
    return n, f


def enumerate_formulas(max_weight: int, leaves: Iterable[Formula]) -> Iterator[Formula]:
    """Every formula over ``leaves`` with weight at most ``max_weight``.

    Yields in order of increasing weight; within a weight the order is
    deterministic.
    """
    leaves = list(leaves)
    by_weight: list[list[Formula]] = [[], leaves]
    yield from leaves
    for w in range(2, max_weight + 1):
        layer = [Neg(g) for g in by_weight[w - 1]]
        for wl in range(1, w - 1):
            wr = w - 1 - wl
            for a in by_weight[wl]:
                for b in by_weight[wr]:
                    layer.append(And(a, b))
                    layer.append(Or(a, b))
                    layer.append(Imp(a, b))
        by_weight.append(layer)
        yield from layer
