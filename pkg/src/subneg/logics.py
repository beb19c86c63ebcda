"""The four logics and the rule names available in each calculus."""

from __future__ import annotations

import enum

__all__ = ["Logic", "PLAIN_RULES", "HIST_RULES", "HIST_TO_PLAIN"]

_POSITIVE = ("ax", "top", "imp_r", "imp_l", "and_r", "and_l", "or_r1", "or_r2", "or_l")
_HIST_POSITIVE = ("ax", "top", "imp_r1", "imp_r2", "imp_l", "and_r", "and_l1", "and_l2",
                  "or_r1", "or_r2", "or_l")

PLAIN_RULES = frozenset(_POSITIVE + ("n", "nef", "copc", "an"))
HIST_RULES = frozenset(_HIST_POSITIVE + ("n1", "n2", "n3", "n4", "nef", "copc1", "copc2", "an"))

# how a history-calculus rule reads once histories are dropped
HIST_TO_PLAIN = {
    "imp_r1": "imp_r", "imp_r2": "imp_r",
    "and_l1": "and_l", "and_l2": "and_l",
    "n1": "n", "n2": "n", "n3": "n", "n4": "n",
    "copc1": "copc", "copc2": "copc",
}
for _r in HIST_RULES:
    HIST_TO_PLAIN.setdefault(_r, _r)


class Logic(enum.Enum):
    N = "n"
    NEF = "nef"
    COPC = "copc"
    MPC = "mpc"

    @classmethod
    def from_name(cls, name: str) -> Logic:
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown logic {name!r} (expected one of n, nef, copc, mpc)") from None

    @property
    def label(self) -> str:
        return {"n": "N", "nef": "NeF", "copc": "CoPC", "mpc": "MPC"}[self.value]

    @property
    def negation_rules(self) -> tuple[str, ...]:
        return {
            "n": ("n",),
            "nef": ("n", "nef"),
            "copc": ("copc",),
            "mpc": ("copc", "an"),
        }[self.value]

    @property
    def rules(self) -> frozenset:
        return frozenset(_POSITIVE + self.negation_rules)

    @property
    def hist_rules(self) -> frozenset:
        neg = {
            "n": ("n1", "n2", "n3", "n4"),
            "nef": ("n1", "n2", "n3", "n4", "nef"),
            "copc": ("copc1", "copc2"),
            "mpc": ("copc1", "copc2", "an"),
        }[self.value]
        return frozenset(_HIST_POSITIVE + neg)

    def __str__(self):
        return self.label
