"""Terminating backward proof search with goal histories.

Sequents have the shape ``H | G => g`` where ``H`` records goals already
attempted over the current context.  Rules that keep the context fixed push
the current goal onto ``H`` and refuse to fire when it is already there; rules
that properly extend the context reset ``H`` to the empty set.  Together with
the restriction of left rules to atomic, negated or disjunctive goals this
makes every backward rule application decrease the triple returned by
:func:`measure`, so the search below always terminates.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple

from .formula import And, Atom, Formula, Imp, Neg, Or, Top, subformula_closure
from .logics import Logic
from .proofs import ProofTree
from .sequents import HistSequent, Sequent

__all__ = [
    "HistRuleInstance", "Measure", "Stats", "Decision", "MeasureViolation",
    "hist_rule_instances", "measure", "decide", "root_weight",
]


class HistRuleInstance(NamedTuple):
    rule: str
    principal: Formula | None
    premises: tuple[HistSequent, ...]


class Measure(NamedTuple):
    """(k - n, k - m, w), compared lexicographically.

    k is the number of distinct subformulas of context and goal, n the context
    size, m the history size and w the goal weight.
    """

    context_room: int
    history_room: int
    goal_weight: int


def measure(seq: HistSequent) -> Measure:
    k = len(subformula_closure(seq.context | {seq.goal}))
    return Measure(k - len(seq.context), k - len(seq.history), seq.goal.weight)


def hist_rule_instances(seq: HistSequent, logic: Logic) -> list[HistRuleInstance]:
    """All history-rule applications to ``seq`` whose side conditions hold.

    Ordered: axioms, invertible rules, then the remaining (backtracking) rules.
    """
    H, C, goal = seq.history, seq.context, seq.goal
    rules = logic.hist_rules
    zero, invertible, other = [], [], []

    def hs(hist, extra=None, new_goal=None):
        ctx = C if extra is None else C | {extra}
        return HistSequent(hist, ctx, goal if new_goal is None else new_goal)

    if isinstance(goal, Top):
        return [HistRuleInstance("top", None, ())]
    if isinstance(goal, Atom) and goal in C:
        zero.append(HistRuleInstance("ax", goal, ()))

    if isinstance(goal, Imp):
        if goal.left in C:
            invertible.append(HistRuleInstance("imp_r2", goal, (hs(H, new_goal=goal.right),)))
        else:
            invertible.append(HistRuleInstance("imp_r1", goal, (hs((), goal.left, goal.right),)))
        return zero + invertible
    if isinstance(goal, And):
        invertible.append(HistRuleInstance("and_r", goal, (hs(H, new_goal=goal.left),
                                                            hs(H, new_goal=goal.right))))
        return zero + invertible
    if isinstance(goal, Or):
        other.append(HistRuleInstance("or_r1", goal, (hs(H, new_goal=goal.left),)))
        other.append(HistRuleInstance("or_r2", goal, (hs(H, new_goal=goal.right),)))
    elif isinstance(goal, Neg) and "an" in rules and goal.inner not in C:
        other.append(HistRuleInstance("an", goal, (hs((), goal.inner),)))

    # left rules: goal is an atom, a negation or a disjunction here
    seen = goal in H
    pushed = H | {goal}
    for f in sorted(C):
        if isinstance(f, And):
            if f.left not in C:
                invertible.append(HistRuleInstance("and_l1", f, (hs((), f.left),)))
            if f.right not in C:
                invertible.append(HistRuleInstance("and_l2", f, (hs((), f.right),)))
        elif isinstance(f, Or):
            if f.left not in C and f.right not in C:
                invertible.append(HistRuleInstance("or_l", f, (hs((), f.left), hs((), f.right))))
        elif isinstance(f, Imp):
            if not seen and f.right not in C:
                other.append(HistRuleInstance("imp_l", f, (hs(pushed, new_goal=f.left), hs((), f.right))))
        elif isinstance(f, Neg) and isinstance(goal, Neg):
            a, b = f.inner, goal.inner
            a_new, b_new = a not in C, b not in C
            if "n1" in rules:
                if b_new and a_new:
                    other.append(HistRuleInstance("n1", f, (hs((), b, a), hs((), a, b))))
                elif b_new:
                    other.append(HistRuleInstance("n2", f, (hs((), b, a), hs(H, new_goal=b))))
                elif not seen and a_new:
                    other.append(HistRuleInstance("n3", f, (hs(pushed, new_goal=a), hs((), a, b))))
                elif not seen:
                    other.append(HistRuleInstance("n4", f, (hs(pushed, new_goal=a), hs(H, new_goal=b))))
            if "nef" in rules and not seen:
                other.append(HistRuleInstance("nef", f, (hs(pushed, new_goal=a),)))
            if "copc1" in rules:
                if b_new:
                    other.append(HistRuleInstance("copc1", f, (hs((), b, a),)))
                elif not seen:
                    other.append(HistRuleInstance("copc2", f, (hs(pushed, new_goal=a),)))
    return zero + invertible + other


@dataclass
class Stats:
    nodes_expanded: int = 0
    max_branch_length: int = 0
    max_sequent_size: int = 0
    measure_checks: int = 0
    measure_violations: list = field(default_factory=list)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "nodes_expanded": self.nodes_expanded,
            "max_branch_length": self.max_branch_length,
            "max_sequent_size": self.max_sequent_size,
            "measure_violations": len(self.measure_violations),
            "seconds": round(self.seconds, 6),
        }


@dataclass(frozen=True)
class Decision:
    proof: ProofTree | None
    stats: Stats

    @property
    def provable(self) -> bool:
        return self.proof is not None

    @property
    def verdict(self) -> str:
        return "PROVABLE" if self.proof is not None else "UNPROVABLE"


class MeasureViolation(AssertionError):
    pass


class _Search:
    def __init__(self, logic: Logic, check_measure: bool, strict: bool):
        self.logic = logic
        self.check_measure = check_measure
        self.strict = strict
        self.stats = Stats()

    def prove(self, seq: HistSequent, depth: int) -> ProofTree | None:
        st = self.stats
        st.nodes_expanded += 1
        if depth > st.max_branch_length:
            st.max_branch_length = depth
        size = seq.size()
        if size > st.max_sequent_size:
            st.max_sequent_size = size
        here = measure(seq) if self.check_measure else None
        for inst in hist_rule_instances(seq, self.logic):
            if here is not None:
                for premise in inst.premises:
                    st.measure_checks += 1
                    there = measure(premise)
                    if not there < here:
                        st.measure_violations.append((seq, inst.rule, premise, here, there))
                        if self.strict:
                            raise MeasureViolation(
                                f"{inst.rule}: measure {there} of {premise} not below {here} of {seq}")
            children = []
            for premise in inst.premises:
                sub = self.prove(premise, depth + 1)
                if sub is None:
                    break
                children.append(sub)
            else:
                return ProofTree(seq, inst.rule, inst.principal, tuple(children), "hist")
        return None


def root_weight(seq: Sequent) -> int:
    """Total weight of a sequent: goal plus every context formula."""
    return seq.goal.weight + sum(f.weight for f in seq.context)


def decide(target: Sequent | Formula, logic: Logic, *, check_measure: bool = True,
           strict: bool = True) -> Decision:
    """Decide ``target`` in ``logic`` by exhaustive history-guided search.

    A bare formula is read as ``=> formula``.  With ``check_measure`` the
    termination measure is compared at every rule application; ``strict``
    turns a non-decrease into a :class:`MeasureViolation` instead of merely
    recording it in the stats.
    """
    if isinstance(target, Formula):
        target = Sequent((), target)
    search = _Search(logic, check_measure, strict)
    start = time.perf_counter()
    proof = search.prove(HistSequent.initial(target), 1)
    search.stats.seconds = time.perf_counter() - start
    return Decision(proof, search.stats)
