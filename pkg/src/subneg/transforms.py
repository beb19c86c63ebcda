"""Syntactic translations between the logics."""

from __future__ import annotations

from functools import lru_cache

from .formula import And, Formula, Imp, Neg, Or, neg_tower

__all__ = ["tilde", "reduce_negations"]


@lru_cache(maxsize=None)
def tilde(f: Formula) -> Formula:
    """Embed MPC into CoPC (and into N).

    Atoms and ``T`` are fixed, the binary connectives are translated
    homomorphically and ``~a`` becomes ``a' -> ~a'`` where ``a'`` is the
    translation of ``a``.
    """
    if isinstance(f, Neg):
        inner = tilde(f.inner)
        return Imp(inner, Neg(inner))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(tilde(f.left), tilde(f.right))
    return f


def reduce_negations(f: Formula) -> Formula:
    """Shorten negation towers using the CoPC equivalences.

    A maximal tower of ``m`` negations becomes ``~~`` when ``m >= 4`` is even
    and ``~~~`` when ``m >= 5`` is odd; shorter towers are kept.  Only valid
    for logics with contraposition (CoPC, MPC).
    """
    height, body = neg_tower(f)
    if isinstance(body, (And, Or, Imp)):
        body = type(body)(reduce_negations(body.left), reduce_negations(body.right))
    if height >= 4:
        height = 2 if height % 2 == 0 else 3
    for _ in range(height):
        body = Neg(body)
    return body
