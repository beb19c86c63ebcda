import itertools

import pytest

from subneg.formula import TOP, Atom, Neg, enumerate_formulas, language, parse
from subneg.hist import decide
from subneg.interpolation import NotProvable, extract, interpolate
from subneg.logics import Logic
from subneg.proofs import strip_history
from subneg.sequents import Sequent, common_language, parse_split

p, q = Atom("p"), Atom("q")


def is_interpolant(sigma, split, logic):
    return (language([sigma]) <= common_language(split)
            and decide(Sequent(split.left, sigma), logic).provable
            and decide(Sequent(split.right + (sigma,), split.goal), logic).provable)


def test_modus_ponens_split():
    split = parse_split("p ; p -> q => q")
    assert interpolate(split, Logic.N).interpolant == p
    # p is among the interpolants found by brute force over {p, T}
    found = [f for f in enumerate_formulas(3, [p, TOP]) if is_interpolant(f, split, Logic.N)]
    assert p in found


def test_axiom_split():
    tree = strip_history(decide(Sequent([p], p), Logic.N).proof)
    assert extract(tree, [p], []) == p
    assert extract(tree, [], [p]) == TOP


@pytest.mark.parametrize("left, right", [([], []), ([p], []), ([], [p])])
def test_top_split(left, right):
    tree = strip_history(decide(Sequent(left + right, TOP), Logic.N).proof)
    assert extract(tree, left, right) == TOP


def test_copc_on_left_gives_negation():
    split = parse_split("~p ; q -> p => ~q")
    tree = strip_history(decide(split.merged(), Logic.COPC).proof)
    assert tree.rule == "copc" and tree.principal == parse("~p")
    sigma = extract(tree, split.left, split.right)
    assert isinstance(sigma, Neg)
    assert is_interpolant(sigma, split, Logic.COPC)


def test_copc_example():
    res = interpolate(parse_split("p & q ; q -> r => r"), Logic.COPC)
    assert res.interpolant == q
    assert res.left_check.provable and res.right_check.provable


def test_disjoint_languages():
    sigma = interpolate(parse_split("p ; q => q"), Logic.N).interpolant
    assert language([sigma]) == set()


def test_not_provable():
    with pytest.raises(NotProvable):
        interpolate(parse_split("p ; => q"), Logic.N)


def test_split_must_cover_context():
    tree = strip_history(decide(Sequent([p, q], p), Logic.N).proof)
    with pytest.raises(ValueError):
        extract(tree, [p], [])


def test_negation_cases_in_n():
    for text in ["~p, q ; p <-> q => ~q", "p <-> q ; ~p => ~q", "~p ; p <-> q => ~q", "~p, p ; q => ~q"]:
        split = parse_split(text)
        for logic in (Logic.N, Logic.NEF):
            if decide(split.merged(), logic).provable:
                sigma = interpolate(split, logic).interpolant
                assert is_interpolant(sigma, split, logic), (text, logic, sigma)


@pytest.mark.parametrize("logic", list(Logic))
def test_small_splits(logic):
    small = list(enumerate_formulas(3, [p, q, TOP]))
    count = 0
    for a, b in itertools.product(small, small):
        for split in (parse_split(f"{a} ; => {b}"), parse_split(f"; {a} => {b}")):
            if decide(split.merged(), logic).provable:
                interpolate(split, logic)  # raises InterpolationError on any failed check
                count += 1
    assert count > 50
