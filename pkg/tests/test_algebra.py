import itertools

import pytest
from hypothesis import given, settings

from conftest import formulas
from subneg.algebra import (
    MAX_SIZE, distributive_lattices, enumerate_algebras, evaluate, find_countermodel,
    satisfies_equations, sequent_formula,
)
from subneg.formula import TOP, Atom, enumerate_formulas, language, parse
from subneg.hist import decide
from subneg.logics import Logic
from subneg.sequents import Sequent, parse_sequent

LOGICS = list(Logic)


def brute_force_lattices(n):
    """Distributive lattices on n elements up to isomorphism, from naturally labelled orders.

    Every finite poset has a linear extension, so it suffices to consider
    orders where i <= j implies i <= j as integers.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    classes = set()
    for bits in range(1 << len(pairs)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                le[i][j] = True
        r = range(n)
        if any(le[i][j] and le[j][k] and not le[i][k] for i in r for j in r for k in r):
            continue

        def bound(a, b, lower):
            cands = [c for c in r if (le[c][a] and le[c][b] if lower else le[a][c] and le[b][c])]
            best = [c for c in cands if all((le[d][c] if lower else le[c][d]) for d in cands)]
            return best[0] if best else None

        meet = [[bound(a, b, True) for b in r] for a in r]
        join = [[bound(a, b, False) for b in r] for a in r]
        if any(x is None for row in meet + join for x in row):
            continue
        if any(meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] for a in r for b in r for c in r):
            continue
        classes.add(canonical(le))
    return classes


def canonical(le):
    n = len(le)
    return min(tuple(tuple(le[perm[i]][perm[j]] for j in range(n)) for i in range(n))
               for perm in itertools.permutations(range(n)))


def test_lattice_counts():
    sizes = [lat.size for lat in distributive_lattices(6)]
    assert [sizes.count(n) for n in range(1, 7)] == [1, 1, 1, 2, 3, 5]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_lattices_match_brute_force(n):
    ours = {canonical(lat.leq) for lat in distributive_lattices(n) if lat.size == n}
    assert ours == brute_force_lattices(n)


@pytest.mark.parametrize("logic", LOGICS)
def test_every_algebra_is_well_formed(logic):
    for alg in enumerate_algebras(5, logic):
        assert alg.is_distributive_lattice()
        assert alg.residuation_holds()
        assert satisfies_equations(alg, logic)


@pytest.mark.parametrize("logic", LOGICS)
def test_negations_match_brute_force(logic):
    found = {}
    for alg in enumerate_algebras(4, logic):
        found.setdefault(alg.leq, set()).add(alg.neg)
    for lat in distributive_lattices(4):
        tables = {neg for neg in itertools.product(range(lat.size), repeat=lat.size)
                  if satisfies_equations(lat.with_neg(neg), logic)}
        assert found.get(lat.leq, set()) == tables


def test_two_chain_n_tables():
    chain = [lat for lat in distributive_lattices(2) if lat.size == 2][0]
    eq1 = parse("(p <-> q) -> (~p <-> ~q)")
    expected = {neg for neg in itertools.product(range(2), repeat=2)
                if all(evaluate(eq1, chain.with_neg(neg), {"p": a, "q": b}) == 1
                       for a in range(2) for b in range(2))}
    got = {alg.neg for alg in enumerate_algebras(2, Logic.N) if alg.size == 2}
    assert got == expected
    assert (1, 1) in got


def test_copc_algebras_are_n_algebras():
    for alg in enumerate_algebras(5, Logic.COPC):
        assert satisfies_equations(alg, Logic.N)


def test_variety_inclusions():
    counts = {lg: len(list(enumerate_algebras(5, lg))) for lg in LOGICS}
    assert counts[Logic.N] > counts[Logic.NEF] > counts[Logic.COPC] > counts[Logic.MPC]


@pytest.mark.parametrize("logic", LOGICS)
def test_trivial_algebra(logic):
    algs = list(enumerate_algebras(1, logic))
    assert len(algs) == 1 and algs[0].size == 1 and algs[0].neg == (0,)


def test_size_limits():
    with pytest.raises(ValueError):
        list(enumerate_algebras(MAX_SIZE + 1, Logic.N))
    with pytest.raises(ValueError):
        find_countermodel(parse("p"), Logic.N, 0)


def test_evaluate_examples():
    chain = [a for a in enumerate_algebras(2, Logic.N) if a.size == 2 and a.neg == (1, 1)][0]
    for alg in enumerate_algebras(3, Logic.N):
        for v in range(alg.size):
            assert evaluate(TOP, alg, {}) == alg.top
            assert evaluate(parse("p -> p"), alg, {"p": v}) == alg.top
    assert evaluate(parse("~p"), chain, {"p": 0}) == 1
    with pytest.raises(KeyError):
        evaluate(parse("q"), chain, {"p": 0})


def test_sequent_formula():
    assert sequent_formula(parse_sequent("p, q => r")) == parse("p & q -> r")
    assert sequent_formula(parse_sequent("=> r")) == parse("r")


def refutes(found, f):
    alg, val = found
    return evaluate(f, alg, val) != alg.top


def test_countermodel_examples():
    copc = parse("(p -> q) -> ~q -> ~p")
    found = find_countermodel(Sequent([], copc), Logic.N, 4)
    assert found is not None and refutes(found, copc)
    nef = parse("p & ~p -> ~q")
    found = find_countermodel(Sequent([], nef), Logic.N, 4)
    assert found is not None and refutes(found, nef)
    for logic in LOGICS:
        assert find_countermodel(parse_sequent("=> p -> p"), logic, 4) is None


def test_unprovable_loop_sequent_has_countermodel():
    seq = parse_sequent("~~~p => ~~p")
    found = find_countermodel(seq, Logic.COPC, 6)
    assert found is not None and refutes(found, sequent_formula(seq))


@settings(max_examples=60, deadline=None)
@given(formulas(5))
def test_vectorised_search_matches_scalar(f):
    atoms = sorted(language([f]))
    scalar = any(
        evaluate(f, alg, dict(zip(atoms, point))) != alg.top
        for alg in enumerate_algebras(3, Logic.N)
        for point in itertools.product(range(alg.size), repeat=len(atoms)))
    found = find_countermodel(f, Logic.N, 3)
    assert (found is not None) == scalar
    if found is not None:
        assert refutes(found, f)


@pytest.mark.parametrize("logic", LOGICS)
def test_provable_means_valid(logic):
    for f in enumerate_formulas(5, [Atom("p"), Atom("q"), TOP]):
        if decide(f, logic).provable:
            assert find_countermodel(f, logic, 4) is None, f
