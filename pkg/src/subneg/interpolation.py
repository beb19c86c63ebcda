"""Craig interpolants read off cut-free proofs by splitting sequents.

Given a proof of ``L, R => g`` and the partition of its context into a left
part ``L`` and a right part ``R`` (the goal belongs with ``R``), we compute
``s`` such that ``L => s`` and ``R, s => g`` are provable and every atom of
``s`` occurs on both sides.  The recursion follows the last rule of the
proof; for rules whose premise has a goal that came from the left part (the
left premise of ``imp_l`` and of the negation rules) the premise is
interpolated with the two parts exchanged.

Trivial ``T`` parts are simplified away as the formula is built (``s & T``
becomes ``s``, ``T -> s`` becomes ``s`` and so on); these are equivalences of
positive logic, so they never affect correctness.

Every interpolant returned by :func:`interpolate` has been re-proved by the
decision procedure; extraction is never trusted on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import TOP, And, Formula, Imp, Neg, Or, language
from .hist import Decision, decide
from .logics import Logic
from .proofs import ProofTree, strip_history
from .sequents import Sequent, SplitSequent, common_language

__all__ = ["InterpolationResult", "NotProvable", "InterpolationError", "extract", "interpolate"]


class NotProvable(Exception):
    """The merged sequent has no proof in the chosen logic."""


class InterpolationError(RuntimeError):
    """An extracted formula failed verification (a bug, not a user error)."""


@dataclass(frozen=True)
class InterpolationResult:
    interpolant: Formula
    left_check: Decision
    right_check: Decision


def _and(a: Formula, b: Formula) -> Formula:
    if a == TOP:
        return b
    if b == TOP or a == b:
        return a
    return And(a, b)


def _or(a: Formula, b: Formula) -> Formula:
    if a == TOP or b == TOP:
        return TOP
    return a if a == b else Or(a, b)


def _imp(a: Formula, b: Formula) -> Formula:
    if a == TOP:
        return b
    if b == TOP or a == b:
        return TOP
    return Imp(a, b)


def _check_cover(node: ProofTree, left: frozenset, right: frozenset):
    """Every root context formula must be on at least one side."""
    ctx = set(node.conclusion.context)
    if not ctx <= left | right:
        missing = ctx - (left | right)
        raise ValueError(f"split assigns no side to {sorted(map(str, missing))}")


def _premise_parts(parent_left, parent_right, premise: ProofTree, to_left=(), to_right=()):
    """Sides for a premise: inherited formulas keep their side, new ones go where told."""
    ctx = set(premise.conclusion.context)
    left = (parent_left | set(to_left)) & ctx
    right = (parent_right | set(to_right)) & ctx
    stray = ctx - left - right
    if stray:
        raise ValueError(f"premise formulas without a side: {sorted(map(str, stray))}")
    return frozenset(left), frozenset(right)


def extract(tree: ProofTree, left, right) -> Formula:
    """Interpolant for the split ``left ; right => goal`` of ``tree``'s root.

    ``tree`` is a ``plain`` or ``plain_lenient`` proof; ``left`` and ``right``
    together must cover the root context (a formula may sit in both).
    """
    left, right = frozenset(left), frozenset(right)
    _check_cover(tree, left, right)
    return _extract(tree, left, right)


def _extract(node: ProofTree, L: frozenset, R: frozenset) -> Formula:
    rule, pr, kids = node.rule, node.principal, node.children
    goal = node.conclusion.goal

    def parts(i, to_left=(), to_right=()):
        return _premise_parts(L, R, kids[i], to_left, to_right)

    def sub(i, to_left=(), to_right=(), swap=False):
        l, r = parts(i, to_left, to_right)
        return _extract(kids[i], r, l) if swap else _extract(kids[i], l, r)

    if rule == "top":
        return TOP
    if rule == "ax":
        # prefer the side that gives the smaller language
        return TOP if pr in R else pr

    if rule == "imp_r":
        return sub(0, to_right=[goal.left])
    if rule == "and_r":
        return _and(sub(0), sub(1))
    if rule in ("or_r1", "or_r2"):
        return sub(0)
    if rule == "an":
        return sub(0, to_right=[goal.inner])

    on_left = pr in L
    if rule == "and_l":
        comps = [pr.left, pr.right]
        return sub(0, to_left=comps) if on_left else sub(0, to_right=comps)
    if rule == "or_l":
        if on_left:
            return _or(sub(0, to_left=[pr.left]), sub(1, to_left=[pr.right]))
        return _and(sub(0, to_right=[pr.left]), sub(1, to_right=[pr.right]))
    if rule == "imp_l":
        if on_left:
            # left premise proves the antecedent, a left-side formula: swap
            s1 = sub(0, swap=True)
            s2 = sub(1, to_left=[pr.right])
            return _imp(s1, s2)
        return _and(sub(0), sub(1, to_right=[pr.right]))

    a, b = pr.inner, goal.inner
    if rule == "n":
        # premise 0: G, ~a, b => a     premise 1: G, ~a, a => b
        if on_left:
            s1 = sub(1, to_left=[a])
            s2 = sub(0, to_right=[b], swap=True)
            return _imp(_imp(s1, s2), _and(_imp(s2, s1), Neg(s1)))
        return _and(sub(1, to_right=[a]), sub(0, to_right=[b]))
    if rule == "nef":
        if on_left:
            s1 = sub(0, swap=True)
            return _imp(s1, Neg(s1))
        return sub(0)
    if rule == "copc":
        if on_left:
            return Neg(sub(0, to_right=[b], swap=True))
        return sub(0, to_right=[b])
    raise ValueError(f"cannot interpolate through rule {rule!r}")


def interpolate(split: SplitSequent, logic: Logic) -> InterpolationResult:
    """Find and verify an interpolant for ``split`` in ``logic``.

    Raises :class:`NotProvable` if the merged sequent is unprovable and
    :class:`InterpolationError` if the extracted formula fails any check.
    """
    decision = decide(split.merged(), logic)
    if decision.proof is None:
        raise NotProvable(str(split))
    tree = strip_history(decision.proof)
    sigma = extract(tree, split.left, split.right)

    allowed = common_language(split)
    stray = language([sigma]) - allowed
    if stray:
        raise InterpolationError(f"interpolant {sigma} uses atoms {sorted(stray)} outside {sorted(allowed)}")
    left_check = decide(Sequent(split.left, sigma), logic)
    right_check = decide(Sequent(split.right + (sigma,), split.goal), logic)
    if not (left_check.provable and right_check.provable):
        raise InterpolationError(
            f"interpolant {sigma} for {split} fails: left {left_check.verdict}, right {right_check.verdict}")
    return InterpolationResult(sigma, left_check, right_check)
