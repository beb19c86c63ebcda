"""Plain G3 calculi and a fuel-bounded backward search.

The search here is not a decision procedure: G3 proof search can loop (for
instance on ``~~~p => ~~p`` in CoPC, where ``copc`` keeps adding ``~p``).  It
serves as an independent oracle for :mod:`subneg.hist`.  ``Exhausted`` only
means that the search found no proof of height at most ``fuel``.

A branch is cut when it revisits its own goal over the same set of context
formulas (multiplicities ignored).  By height-preserving weakening and
contraction such a revisit is never needed for a proof of minimal height;
without the cut the ``an`` rule of MPC, which can add the same formula again
and again, makes the search explode.  The cut only ever removes proofs, so
every ``Provable`` answer is still a genuine proof and is checked as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .formula import And, Atom, Formula, Imp, Neg, Or, Top
from .logics import Logic
from .proofs import ProofTree
from .sequents import Sequent

__all__ = ["RuleInstance", "rule_instances", "naive_prove", "Provable", "Exhausted"]


class RuleInstance(NamedTuple):
    rule: str
    principal: Formula | None
    premises: tuple[Sequent, ...]


@dataclass(frozen=True)
class Provable:
    proof: ProofTree


@dataclass(frozen=True)
class Exhausted:
    fuel: int


def rule_instances(seq: Sequent, logic: Logic) -> list[RuleInstance]:
    """Every backward application of a rule of ``logic`` to ``seq``.

    Ordered: axioms, then the invertible rules, then the rest.
    """
    ctx, goal = seq.context, seq.goal
    distinct = list(dict.fromkeys(ctx))
    neg_rules = logic.negation_rules
    zero, invertible, other = [], [], []

    if isinstance(goal, Top):
        zero.append(RuleInstance("top", None, ()))
    elif isinstance(goal, Atom) and goal in distinct:
        zero.append(RuleInstance("ax", goal, ()))

    if isinstance(goal, Imp):
        invertible.append(RuleInstance("imp_r", goal, (seq.add(goal.left, goal=goal.right),)))
    elif isinstance(goal, And):
        invertible.append(RuleInstance("and_r", goal, (seq.add(goal=goal.left), seq.add(goal=goal.right))))
    elif isinstance(goal, Or):
        other.append(RuleInstance("or_r1", goal, (seq.add(goal=goal.left),)))
        other.append(RuleInstance("or_r2", goal, (seq.add(goal=goal.right),)))
    elif isinstance(goal, Neg) and "an" in neg_rules:
        other.append(RuleInstance("an", goal, (seq.add(goal.inner),)))

    for f in distinct:
        if isinstance(f, And):
            rest = seq.remove(f)
            invertible.append(RuleInstance("and_l", f, (Sequent(rest + (f.left, f.right), goal),)))
        elif isinstance(f, Or):
            rest = seq.remove(f)
            invertible.append(RuleInstance("or_l", f, (Sequent(rest + (f.left,), goal),
                                                       Sequent(rest + (f.right,), goal))))
        elif isinstance(f, Imp):
            other.append(RuleInstance("imp_l", f, (seq.add(goal=f.left), seq.add(f.right))))
        elif isinstance(f, Neg) and isinstance(goal, Neg):
            a, b = f.inner, goal.inner
            if "n" in neg_rules:
                other.append(RuleInstance("n", f, (seq.add(b, goal=a), seq.add(a, goal=b))))
            if "nef" in neg_rules:
                other.append(RuleInstance("nef", f, (seq.add(goal=a),)))
            if "copc" in neg_rules:
                other.append(RuleInstance("copc", f, (seq.add(b, goal=a),)))
    return zero + invertible + other


_INF = float("inf")


class _Search:
    def __init__(self, logic: Logic):
        self.logic = logic
        # sequent -> largest fuel known to be insufficient
        self.failed: dict[Sequent, int] = {}
        # (context as a set, goal) -> depth on the current branch
        self.on_branch: dict[tuple, int] = {}

    def prove(self, seq: Sequent, fuel: int, depth: int):
        """Return (proof or None, shallowest branch depth a loop cut referred to)."""
        if fuel <= 0:
            return None, _INF
        key = (frozenset(seq.context), seq.goal)
        hit = self.on_branch.get(key)
        if hit is not None:
            return None, hit
        if self.failed.get(seq, 0) >= fuel:
            return None, _INF
        self.on_branch[key] = depth
        low = _INF
        try:
            for inst in rule_instances(seq, self.logic):
                children = []
                for premise in inst.premises:
                    sub, cut = self.prove(premise, fuel - 1, depth + 1)
                    low = min(low, cut)
                    if sub is None:
                        break
                    children.append(sub)
                else:
                    return ProofTree(seq, inst.rule, inst.principal, tuple(children), "plain"), low
        finally:
            del self.on_branch[key]
        if low >= depth:
            # failure does not depend on anything above this node
            self.failed[seq] = max(self.failed.get(seq, 0), fuel)
        return None, low


def naive_prove(seq: Sequent, logic: Logic, fuel: int) -> Provable | Exhausted:
    """Search for a G3 proof of ``seq`` of height at most ``fuel``.

    Height counts rule applications along the longest branch, so an axiom
    alone has height 1.
    """
    if fuel < 1:
        raise ValueError("fuel must be a positive integer")
    proof, _ = _Search(logic).prove(seq, fuel, 0)
    return Exhausted(fuel) if proof is None else Provable(proof)
