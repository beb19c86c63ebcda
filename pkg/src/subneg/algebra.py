"""Finite algebras for the four logics and a brute-force countermodel search.

Each algebra is a finite distributive lattice (hence relatively
pseudo-complemented) with a unary ``neg`` operation satisfying the defining
equations of the logic's variety:

* N:    (p <-> q) -> (~p <-> ~q) = 1
* NeF:  N plus (p & ~p) -> ~q = 1
* CoPC: (p -> q) -> (~q -> ~p) = 1
* MPC:  CoPC plus (p -> ~p) -> ~p = 1

Since ``x -> y = 1`` iff ``x <= y``, each equation is checked as an order
constraint on every pair of elements.

Lattices are produced from posets: every finite distributive lattice is the
lattice of down-sets of its poset of join-irreducibles, so enumerating posets
up to isomorphism enumerates distributive lattices up to isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

import numpy as np

from .formula import And, Atom, Formula, Imp, Neg, Or, Top, language
from .logics import Logic
from .sequents import Sequent

__all__ = [
    "FiniteAlgebra", "distributive_lattices", "enumerate_algebras", "evaluate",
    "find_countermodel", "sequent_formula", "satisfies_equations", "MAX_SIZE",
]

MAX_SIZE = 6


@dataclass(frozen=True)
class FiniteAlgebra:
    """Elements are ``0 .. size-1``; ``0`` is the bottom and ``top`` the top."""

    size: int
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    rpc: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    top: int

    def with_neg(self, neg) -> FiniteAlgebra:
        return FiniteAlgebra(self.size, self.leq, self.meet, self.join, self.rpc, tuple(neg), self.top)

    def describe(self) -> str:
        """Text form: size, order matrix (row a, column b is 1 iff a <= b), neg table, top."""
        lines = [f"size: {self.size}", "leq:"]
        for row in self.leq:
            lines.append("  " + " ".join("1" if x else "0" for x in row))
        lines.append("neg: " + " ".join(map(str, self.neg)))
        lines.append(f"top: {self.top}")
        return "\n".join(lines)

    def is_distributive_lattice(self) -> bool:
        r = range(self.size)
        le = self.leq
        for a, b in itertools.product(r, r):
            m, j = self.meet[a][b], self.join[a][b]
            if not (le[m][a] and le[m][b] and le[a][j] and le[b][j]):
                return False
            for c in r:
                if le[c][a] and le[c][b] and not le[c][m]:
                    return False
                if le[a][c] and le[b][c] and not le[j][c]:
                    return False
                if self.meet[a][self.join[b][c]] != self.join[self.meet[a][b]][self.meet[a][c]]:
                    return False
        return all(le[a][self.top] for a in r)

    def residuation_holds(self) -> bool:
        r = range(self.size)
        return all(self.leq[self.meet[a][b]][c] == self.leq[a][self.rpc[b][c]]
                   for a, b, c in itertools.product(r, r, r))


# ---------------------------------------------------------------- lattices

def _poset_canon(below: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of a poset given as strict down-set bitmasks."""
    n = len(below)
    best = None
    for perm in itertools.permutations(range(n)):
        # perm[i] = new label of old element i
        new = [0] * n
        for i in range(n):
            m = 0
            for j in range(n):
                if below[i] >> j & 1:
                    m |= 1 << perm[j]
            new[perm[i]] = m
        key = tuple(new)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple[tuple[int, ...], ...]:
    """Posets on n elements up to isomorphism (strict down-set bitmasks)."""
    if n == 0:
        return ((),)
    found = set()
    for below in _posets(n - 1):
        # add a new maximal element whose strict down-set is a down-set of the old poset
        for mask in range(1 << (n - 1)):
            if all(below[j] & ~mask == 0 for j in range(n - 1) if mask >> j & 1):
                found.add(_poset_canon(below + (mask,)))
    return tuple(sorted(found))


def _downset_lattice(below: tuple[int, ...]) -> FiniteAlgebra:
    n = len(below)
    sets = [m for m in range(1 << n)
            if all(below[j] & ~m == 0 for j in range(n) if m >> j & 1)]
    sets.sort(key=lambda m: (bin(m).count("1"), m))
    index = {m: i for i, m in enumerate(sets)}
    s = len(sets)
    leq = tuple(tuple(a & ~b == 0 for b in sets) for a in sets)
    meet = tuple(tuple(index[a & b] for b in sets) for a in sets)
    join = tuple(tuple(index[a | b] for b in sets) for a in sets)
    rpc = []
    for a in sets:
        row = []
        for b in sets:
            c = 0
            for d in sets:
                if d & a & ~b == 0:
                    c |= d
            row.append(index[c])
        rpc.append(tuple(row))
    return FiniteAlgebra(s, leq, meet, join, tuple(rpc), tuple([s - 1] * s), s - 1)


@lru_cache(maxsize=None)
def distributive_lattices(max_size: int) -> tuple[FiniteAlgebra, ...]:
    """Distributive lattices with at most ``max_size`` elements, up to isomorphism.

    The ``neg`` field of the returned algebras is a placeholder (constant top).
    """
    out = []
    for n in range(max_size):
        for below in _posets(n):
            lat = _downset_lattice(below)
            if lat.size <= max_size:
                out.append(lat)
    out.sort(key=lambda a: a.size)
    return tuple(out)


# ---------------------------------------------------------------- negations

def _pair_constraint(lat: FiniteAlgebra, logic: Logic):
    le, meet, rpc = lat.leq, lat.meet, lat.rpc

    def iff(x, y):
        return meet[rpc[x][y]][rpc[y][x]]

    def compat(a, b, na, nb):
        return le[iff(a, b)][iff(na, nb)]

    def nef(a, b, na, nb):
        return compat(a, b, na, nb) and le[meet[a][na]][nb]

    def copc(a, b, na, nb):
        return le[rpc[a][b]][rpc[nb][na]]

    def mpc(a, b, na, nb):
        return copc(a, b, na, nb) and le[rpc[a][na]][na] and le[rpc[b][nb]][nb]

    return {Logic.N: compat, Logic.NEF: nef, Logic.COPC: copc, Logic.MPC: mpc}[logic]


def satisfies_equations(alg: FiniteAlgebra, logic: Logic) -> bool:
    """Check the variety's equations directly, by evaluating them as terms."""
    p, q = Atom("p"), Atom("q")
    np_, nq = Neg(p), Neg(q)

    def iff(x, y):
        return And(Imp(x, y), Imp(y, x))

    eqs = {
        Logic.N: [Imp(iff(p, q), iff(np_, nq))],
        Logic.NEF: [Imp(iff(p, q), iff(np_, nq)), Imp(And(p, np_), nq)],
        Logic.COPC: [Imp(Imp(p, q), Imp(nq, np_))],
        Logic.MPC: [Imp(Imp(p, q), Imp(nq, np_)), Imp(Imp(p, np_), np_)],
    }[logic]
    r = range(alg.size)
    return all(evaluate(e, alg, {"p": a, "q": b}) == alg.top
               for e in eqs for a in r for b in r)


def _negations(lat: FiniteAlgebra, logic: Logic) -> Iterator[tuple[int, ...]]:
    ok = _pair_constraint(lat, logic)
    s = lat.size
    neg = [0] * s

    def extend(i):
        if i == s:
            yield tuple(neg)
            return
        for v in range(s):
            neg[i] = v
            if all(ok(a, i, neg[a], v) and ok(i, a, v, neg[a]) for a in range(i + 1)):
                yield from extend(i + 1)

    yield from extend(0)


@lru_cache(maxsize=None)
def _algebras(max_size: int, logic: Logic) -> tuple[FiniteAlgebra, ...]:
    return tuple(lat.with_neg(neg)
                 for lat in distributive_lattices(max_size)
                 for neg in _negations(lat, logic))


def enumerate_algebras(max_size: int, logic: Logic) -> Iterator[FiniteAlgebra]:
    """All algebras of ``logic``'s variety with at most ``max_size`` elements.

    Lattices are distinct up to isomorphism; the same algebra may still appear
    more than once via automorphisms of its lattice.
    """
    if not 1 <= max_size <= MAX_SIZE:
        raise ValueError(f"max_size must be between 1 and {MAX_SIZE}")
    return iter(_algebras(max_size, logic))


# ---------------------------------------------------------------- evaluation

def evaluate(f: Formula, alg: FiniteAlgebra, valuation: Mapping[str, int]) -> int:
    if isinstance(f, Atom):
        try:
            return valuation[f.name]
        except KeyError:
            raise KeyError(f"valuation has no value for atom {f.name!r}") from None
    if isinstance(f, Top):
        return alg.top
    if isinstance(f, Neg):
        return alg.neg[evaluate(f.inner, alg, valuation)]
    a = evaluate(f.left, alg, valuation)
    b = evaluate(f.right, alg, valuation)
    if isinstance(f, And):
        return alg.meet[a][b]
    if isinstance(f, Or):
        return alg.join[a][b]
    return alg.rpc[a][b]


def sequent_formula(seq: Sequent) -> Formula:
    """``g1 & ... & gn -> goal``, or just ``goal`` for an empty context."""
    if not seq.context:
        return seq.goal
    conj = seq.context[0]
    for g in seq.context[1:]:
        conj = And(conj, g)
    return Imp(conj, seq.goal)


class _Batch:
    """All algebras of one size stacked into arrays for vectorised evaluation."""

    def __init__(self, algebras: list[FiniteAlgebra]):
        self.algebras = algebras
        self.size = algebras[0].size
        self.meet = np.array([a.meet for a in algebras], dtype=np.int8)
        self.join = np.array([a.join for a in algebras], dtype=np.int8)
        self.rpc = np.array([a.rpc for a in algebras], dtype=np.int8)
        self.neg = np.array([a.neg for a in algebras], dtype=np.int8)
        self.rows = np.arange(len(algebras))[:, None]

    def values(self, f: Formula, atoms: list[str]) -> np.ndarray:
        """Value of ``f`` in every algebra (axis 0) under every valuation (axis 1)."""
        s, k = self.size, len(atoms)
        grid = np.indices((s,) * k, dtype=np.int8).reshape(k, -1) if k else np.zeros((0, 1), np.int8)
        env = {name: np.broadcast_to(grid[i], (len(self.algebras), grid.shape[1]))
               for i, name in enumerate(atoms)}
        top = np.full((len(self.algebras), grid.shape[1]), s - 1, dtype=np.int8)
        memo: dict[Formula, np.ndarray] = {}

        def ev(g):
            hit = memo.get(g)
            if hit is not None:
                return hit
            if isinstance(g, Atom):
                out = env[g.name]
            elif isinstance(g, Top):
                out = top
            elif isinstance(g, Neg):
                out = self.neg[self.rows, ev(g.inner)]
            else:
                table = self.meet if isinstance(g, And) else self.join if isinstance(g, Or) else self.rpc
                out = table[self.rows, ev(g.left), ev(g.right)]
            memo[g] = out
            return out

        return ev(f)


@lru_cache(maxsize=None)
def _batches(max_size: int, logic: Logic) -> tuple[_Batch, ...]:
    by_size: dict[int, list[FiniteAlgebra]] = {}
    for alg in _algebras(max_size, logic):
        by_size.setdefault(alg.size, []).append(alg)
    return tuple(_Batch(algs) for _, algs in sorted(by_size.items()))


def find_countermodel(seq: Sequent | Formula, logic: Logic, max_size: int = 4):
    """Smallest-first search for an algebra and valuation refuting ``seq``.

    Returns ``(algebra, valuation)`` or ``None``.  ``None`` only says that no
    refutation exists up to ``max_size``; it is not a proof.
    """
    if not 1 <= max_size <= MAX_SIZE:
        raise ValueError(f"max_size must be between 1 and {MAX_SIZE}")
    f = seq if isinstance(seq, Formula) else sequent_formula(seq)
    atoms = sorted(language([f]))
    for batch in _batches(max_size, logic):
        vals = batch.values(f, atoms)
        bad = np.argwhere(vals != batch.size - 1)
        if len(bad):
            i, j = bad[0]
            s, k = batch.size, len(atoms)
            point = np.unravel_index(j, (s,) * k) if k else ()
            return batch.algebras[i], {name: int(v) for name, v in zip(atoms, point)}
    return None
