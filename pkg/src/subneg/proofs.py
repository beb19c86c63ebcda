"""Proof trees, an independent checker, history stripping and JSON I/O.

The checker re-derives, for every node, what the premises of the named rule
must look like and compares them with the children.  It shares no code with
the provers beyond the value types, so a prover bug cannot hide behind it.

Flavours
--------
``plain``
    Nodes are instances of the G3 rules over multiset contexts; premises must
    match exactly.
``hist``
    Nodes carry history sequents; premises and all side conditions must match
    exactly, and left rules fire only on atom, negation or disjunction goals.
``plain_lenient``
    Like ``plain`` but a premise may differ from the schema by dropping
    context formulas (weakening) or by keeping formulas of the conclusion
    (contraction / invertibility), as produced by :func:`strip_history`.
    Concretely, a premise ``A => g`` matches schema premise ``E => g`` when
    ``set(A)`` is a subset of ``set(E) | set(conclusion context)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .formula import And, Atom, Formula, Imp, Neg, Or, ParseError, Top, parse
from .logics import HIST_TO_PLAIN, Logic, PLAIN_RULES, HIST_RULES
from .sequents import HistSequent, Sequent

__all__ = [
    "ProofTree", "ProofCheckError", "ProofFormatError", "check", "is_valid",
    "strip_history", "serialize", "deserialize", "FLAVORS",
]

FLAVORS = ("plain", "hist", "plain_lenient")
FORMAT = "subneg-proof/1"


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent | HistSequent
    rule: str
    principal: Formula | None
    children: tuple[ProofTree, ...] = ()
    flavor: str = "plain"

    def nodes(self) -> Iterator[tuple[tuple[int, ...], ProofTree]]:
        """(path, node) pairs in preorder; the root has path ``()``."""
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.children))):
                stack.append((path + (i,), node.children[i]))

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def rules_used(self) -> set[str]:
        return {node.rule for _, node in self.nodes()}

    def render(self, indent: str = "") -> str:
        """Indented text rendering, premises below their conclusion."""
        tag = self.rule if self.principal is None else f"{self.rule} [{self.principal}]"
        lines = [f"{indent}{self.conclusion}    ({tag})"]
        for c in self.children:
            lines.append(c.render(indent + "  "))
        return "\n".join(lines)


class ProofCheckError(Exception):
    """A node does not instantiate a rule of the calculus."""

    def __init__(self, path: tuple[int, ...], reason: str):
        super().__init__(f"at node {'/'.join(map(str, path)) or 'root'}: {reason}")
        self.path = path
        self.reason = reason


class ProofFormatError(ValueError):
    pass


# ---------------------------------------------------------------- checking

class _Mismatch(Exception):
    pass


def _need(cond: bool, reason: str):
    if not cond:
        raise _Mismatch(reason)


def _plain_schema(seq: Sequent, rule: str, principal: Formula | None) -> list[Sequent]:
    """Premises the G3 rule ``rule`` demands for ``seq`` with ``principal``."""
    ctx = Counter(seq.context)
    goal = seq.goal

    def with_(*extra, drop=None, new_goal=None):
        c = ctx.copy()
        if drop is not None:
            c[drop] -= 1
        for f in extra:
            c[f] += 1
        return Sequent(c.elements(), goal if new_goal is None else new_goal)

    if rule == "top":
        _need(isinstance(goal, Top), "goal is not T")
        return []
    if rule in ("imp_r", "and_r", "or_r1", "or_r2", "an"):
        _need(principal == goal, "principal formula must be the goal")
    elif principal is not None:
        _need(ctx[principal] > 0, f"principal {principal} not in context")
    else:
        raise _Mismatch("missing principal formula")

    if rule == "ax":
        _need(isinstance(goal, Atom) and principal == goal, "axiom needs an atomic goal in context")
        return []
    if rule == "imp_r":
        _need(isinstance(goal, Imp), "goal is not an implication")
        return [with_(goal.left, new_goal=goal.right)]
    if rule == "and_r":
        _need(isinstance(goal, And), "goal is not a conjunction")
        return [with_(new_goal=goal.left), with_(new_goal=goal.right)]
    if rule in ("or_r1", "or_r2"):
        _need(isinstance(goal, Or), "goal is not a disjunction")
        return [with_(new_goal=goal.left if rule == "or_r1" else goal.right)]
    if rule == "an":
        _need(isinstance(goal, Neg), "goal is not a negation")
        return [with_(goal.inner)]
    if rule == "imp_l":
        _need(isinstance(principal, Imp), "principal is not an implication")
        return [with_(new_goal=principal.left), with_(principal.right)]
    if rule == "and_l":
        _need(isinstance(principal, And), "principal is not a conjunction")
        return [with_(principal.left, principal.right, drop=principal)]
    if rule == "or_l":
        _need(isinstance(principal, Or), "principal is not a disjunction")
        return [with_(principal.left, drop=principal), with_(principal.right, drop=principal)]
    if rule in ("n", "nef", "copc"):
        _need(isinstance(principal, Neg), "principal is not a negation")
        _need(isinstance(goal, Neg), "goal is not a negation")
        a, b = principal.inner, goal.inner
        if rule == "n":
            return [with_(b, new_goal=a), with_(a, new_goal=b)]
        if rule == "nef":
            return [with_(new_goal=a)]
        return [with_(b, new_goal=a)]
    raise _Mismatch(f"unknown rule {rule!r}")


def _restricted_goal(goal: Formula) -> bool:
    return isinstance(goal, (Atom, Neg, Or))


def _hist_schema(seq: HistSequent, rule: str, principal: Formula | None) -> list[HistSequent]:
    """Premises of the history rule ``rule``, after checking its side conditions."""
    H, C, goal = seq.history, seq.context, seq.goal

    def hs(hist, *extra, new_goal=None):
        return HistSequent(hist, C | set(extra), goal if new_goal is None else new_goal)

    if rule == "top":
        _need(isinstance(goal, Top), "goal is not T")
        return []
    if rule in ("imp_r1", "imp_r2", "and_r", "or_r1", "or_r2", "an"):
        _need(principal == goal, "principal formula must be the goal")
    elif principal is not None:
        _need(principal in C, f"principal {principal} not in context")
    else:
        raise _Mismatch("missing principal formula")

    if rule == "ax":
        _need(isinstance(goal, Atom) and principal == goal, "axiom needs an atomic goal in context")
        return []
    if rule in ("imp_r1", "imp_r2"):
        _need(isinstance(goal, Imp), "goal is not an implication")
        a, b = goal.left, goal.right
        if rule == "imp_r1":
            _need(a not in C, "imp_r1 requires the antecedent to be new")
            return [hs((), a, new_goal=b)]
        _need(a in C, "imp_r2 requires the antecedent in context")
        return [hs(H, new_goal=b)]
    if rule == "and_r":
        _need(isinstance(goal, And), "goal is not a conjunction")
        return [hs(H, new_goal=goal.left), hs(H, new_goal=goal.right)]
    if rule in ("or_r1", "or_r2"):
        _need(isinstance(goal, Or), "goal is not a disjunction")
        return [hs(H, new_goal=goal.left if rule == "or_r1" else goal.right)]
    if rule == "an":
        _need(isinstance(goal, Neg), "goal is not a negation")
        _need(goal.inner not in C, "an requires the negated formula to be new")
        return [hs((), goal.inner)]

    if rule in ("imp_l", "and_l1", "and_l2", "or_l"):
        _need(_restricted_goal(goal), "left rule on a goal that is not an atom, negation or disjunction")
    if rule == "imp_l":
        _need(isinstance(principal, Imp), "principal is not an implication")
        _need(goal not in H, "goal already in history")
        _need(principal.right not in C, "consequent already in context")
        return [hs(H | {goal}, new_goal=principal.left), hs((), principal.right)]
    if rule in ("and_l1", "and_l2"):
        _need(isinstance(principal, And), "principal is not a conjunction")
        part = principal.left if rule == "and_l1" else principal.right
        _need(part not in C, "conjunct already in context")
        return [hs((), part)]
    if rule == "or_l":
        _need(isinstance(principal, Or), "principal is not a disjunction")
        _need(principal.left not in C and principal.right not in C, "a disjunct is already in context")
        return [hs((), principal.left), hs((), principal.right)]

    _need(isinstance(principal, Neg), "principal is not a negation")
    _need(isinstance(goal, Neg), "goal is not a negation")
    a, b = principal.inner, goal.inner
    b_new = b not in C
    a_new = a not in C
    pushed = H | {goal}
    if rule == "n1":
        _need(b_new and a_new, "n1 side condition fails")
        return [hs((), b, new_goal=a), hs((), a, new_goal=b)]
    if rule == "n2":
        _need(b_new and not a_new, "n2 side condition fails")
        return [hs((), b, new_goal=a), hs(H, new_goal=b)]
    if rule == "n3":
        _need(goal not in H and not b_new and a_new, "n3 side condition fails")
        return [hs(pushed, new_goal=a), hs((), a, new_goal=b)]
    if rule == "n4":
        _need(goal not in H and not b_new and not a_new, "n4 side condition fails")
        return [hs(pushed, new_goal=a), hs(H, new_goal=b)]
    if rule == "nef":
        _need(goal not in H, "goal already in history")
        return [hs(pushed, new_goal=a)]
    if rule == "copc1":
        _need(b_new, "copc1 side condition fails")
        return [hs((), b, new_goal=a)]
    if rule == "copc2":
        _need(goal not in H and not b_new, "copc2 side condition fails")
        return [hs(pushed, new_goal=a)]
    raise _Mismatch(f"unknown rule {rule!r}")


def _check_node(node: ProofTree, logic: Logic, flavor: str):
    if node.flavor != flavor:
        raise _Mismatch(f"node flavor {node.flavor!r} inside a {flavor!r} proof")
    if flavor == "hist":
        if not isinstance(node.conclusion, HistSequent):
            raise _Mismatch("hist node without a history sequent")
        if node.rule not in logic.hist_rules:
            raise _Mismatch(f"rule {node.rule!r} is not a rule of {logic.label}^Hist")
        expected = _hist_schema(node.conclusion, node.rule, node.principal)
        _need(len(node.children) == len(expected),
              f"{node.rule} needs {len(expected)} premises, got {len(node.children)}")
        for i, (child, want) in enumerate(zip(node.children, expected)):
            _need(child.conclusion == want, f"premise {i} should be {want}, got {child.conclusion}")
        return

    if not isinstance(node.conclusion, Sequent):
        raise _Mismatch("plain node without a plain sequent")
    if node.rule not in logic.rules:
        raise _Mismatch(f"rule {node.rule!r} is not a rule of {logic.label}")
    expected = _plain_schema(node.conclusion, node.rule, node.principal)
    _need(len(node.children) == len(expected),
          f"{node.rule} needs {len(expected)} premises, got {len(node.children)}")
    for i, (child, want) in enumerate(zip(node.children, expected)):
        got = child.conclusion
        if not isinstance(got, Sequent):
            raise _Mismatch(f"premise {i} is not a plain sequent")
        if flavor == "plain":
            _need(got == want, f"premise {i} should be {want}, got {got}")
        else:
            _need(got.goal == want.goal, f"premise {i} should have goal {want.goal}, got {got.goal}")
            allowed = set(want.context) | set(node.conclusion.context)
            extra = set(got.context) - allowed
            _need(not extra, f"premise {i} has unjustified formulas {sorted(map(str, extra))}")


def check(tree: ProofTree, logic: Logic) -> None:
    """Validate ``tree`` against the rules of ``logic``.

    Raises :class:`ProofCheckError` naming the first offending node (preorder).
    """
    flavor = tree.flavor
    if flavor not in FLAVORS:
        raise ProofCheckError((), f"unknown flavor {flavor!r}")
    for path, node in tree.nodes():
        if node.rule == "cut":
            raise ProofCheckError(path, "cut is not a rule of the calculus")
        try:
            _check_node(node, logic, flavor)
        except _Mismatch as exc:
            raise ProofCheckError(path, str(exc)) from None


def is_valid(tree: ProofTree, logic: Logic) -> bool:
    try:
        check(tree, logic)
    except ProofCheckError:
        return False
    return True


def strip_history(tree: ProofTree) -> ProofTree:
    """Drop histories from a history proof, renaming rule variants to their G3 rule.

    The result is a ``plain_lenient`` tree over the same (set) contexts.
    Trees without histories are returned unchanged.
    """
    if tree.flavor != "hist":
        return tree
    return ProofTree(
        tree.conclusion.plain(),
        HIST_TO_PLAIN[tree.rule],
        tree.principal,
        tuple(strip_history(c) for c in tree.children),
        "plain_lenient",
    )


# ---------------------------------------------------------------- JSON

def _sequent_json(seq) -> dict:
    out = {"context": [str(f) for f in sorted(seq.context)], "goal": str(seq.goal)}
    if isinstance(seq, HistSequent):
        out["history"] = [str(f) for f in sorted(seq.history)]
    return out


def _node_json(node: ProofTree) -> dict:
    out = {"rule": node.rule, "sequent": _sequent_json(node.conclusion)}
    if node.principal is not None:
        out["principal"] = str(node.principal)
    out["children"] = [_node_json(c) for c in node.children]
    return out


def serialize(tree: ProofTree) -> bytes:
    """Encode a proof as compact, key-sorted JSON (see docs/proof-format.md)."""
    doc = {"format": FORMAT, "flavor": tree.flavor, "root": _node_json(tree)}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def _formula(text) -> Formula:
    if not isinstance(text, str):
        raise ProofFormatError(f"expected a formula string, got {text!r}")
    try:
        return parse(text)
    except ParseError as exc:
        raise ProofFormatError(f"bad formula {text!r}: {exc}") from None


def _node_from(obj, flavor: str) -> ProofTree:
    if not isinstance(obj, dict):
        raise ProofFormatError("proof node must be an object")
    unknown = set(obj) - {"rule", "sequent", "principal", "children"}
    if unknown:
        raise ProofFormatError(f"unknown node keys {sorted(unknown)}")
    try:
        rule, seq, children = obj["rule"], obj["sequent"], obj["children"]
    except KeyError as exc:
        raise ProofFormatError(f"node is missing {exc.args[0]!r}") from None
    known = HIST_RULES if flavor == "hist" else PLAIN_RULES
    if rule not in known:
        raise ProofFormatError(f"unknown rule id {rule!r}")
    if not isinstance(seq, dict) or not isinstance(seq.get("context"), list) or "goal" not in seq:
        raise ProofFormatError("malformed sequent")
    ctx = [_formula(t) for t in seq["context"]]
    goal = _formula(seq["goal"])
    if flavor == "hist":
        if not isinstance(seq.get("history"), list):
            raise ProofFormatError("hist sequent needs a history list")
        conclusion = HistSequent([_formula(t) for t in seq["history"]], ctx, goal)
    else:
        if "history" in seq:
            raise ProofFormatError("plain sequent must not carry a history")
        conclusion = Sequent(ctx, goal)
    principal = _formula(obj["principal"]) if "principal" in obj else None
    if not isinstance(children, list):
        raise ProofFormatError("children must be a list")
    return ProofTree(conclusion, rule, principal, tuple(_node_from(c, flavor) for c in children), flavor)


def deserialize(data: bytes | str) -> ProofTree:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ProofFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ProofFormatError(f"not a {FORMAT} document")
    flavor = doc.get("flavor")
    if flavor not in FLAVORS:
        raise ProofFormatError(f"unknown flavor {flavor!r}")
    if "root" not in doc:
        raise ProofFormatError("document has no root node")
    return _node_from(doc["root"], flavor)
