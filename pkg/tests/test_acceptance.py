"""Acceptance gate.

Each test checks one criterion at its stated tolerance and prints a single
``PASS``/``FAIL`` line (visible with ``pytest -v`` or ``-s``).  Run just the
gate with ``pytest tests/test_acceptance.py -v``.

The corpus is every formula of weight at most 7 over ``p``, ``q`` and ``T``
(22107 formulas); decisions over it are computed once and shared.
"""

import itertools
import time
from functools import lru_cache

import pytest

from mutations import mutation_corpus
from subneg.algebra import evaluate, find_countermodel
from subneg.formula import TOP, And, Atom, Imp, Neg, Or, enumerate_formulas, language, parse
from subneg.g3 import Exhausted, Provable, naive_prove
from subneg.hist import decide, root_weight
from subneg.interpolation import interpolate
from subneg.logics import Logic
from subneg.proofs import is_valid
from subneg.sequents import Sequent, SplitSequent, common_language
from subneg.transforms import tilde

LOGICS = list(Logic)
p, q = Atom("p"), Atom("q")

# minimal refuting algebra sizes found by the smallest-first search
SEPARATION_SIZES = {"NeF axiom in N": 2, "CoPC axiom in NeF": 3, "MPC axiom in CoPC": 2}
SEQUENT_SIZE_FACTOR = 3  # the c in "formula count <= c * w**2"


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return emit


@lru_cache(maxsize=None)
def corpus():
    return tuple(enumerate_formulas(7, [p, q, TOP]))


@lru_cache(maxsize=None)
def decisions(logic):
    return {f: decide(f, logic) for f in corpus()}


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_1_axioms(report):
    cases = [("(p <-> q) -> (~p <-> ~q)", Logic.N), ("p & ~p -> ~q", Logic.NEF),
             ("(p -> q) -> ~q -> ~p", Logic.COPC), ("(p -> ~p) -> ~p", Logic.MPC)]
    results = []
    for text, logic in cases:
        d, secs = timed(lambda: decide(parse(text), logic))
        results.append((d.provable and is_valid(d.proof, logic) and secs < 1.0, secs))
    ok = all(r[0] for r in results)
    report(1, ok, "all four axioms proved, slowest %.4fs" % max(r[1] for r in results))


def test_2_separations(report):
    cases = [("NeF axiom in N", "p & ~p -> ~q", Logic.N),
             ("CoPC axiom in NeF", "(p -> q) -> ~q -> ~p", Logic.NEF),
             ("MPC axiom in CoPC", "(p -> ~p) -> ~p", Logic.COPC)]
    parts, ok = [], True
    for name, text, logic in cases:
        f = parse(text)
        found = find_countermodel(f, logic, 6)
        refuted = found is not None and evaluate(f, found[0], found[1]) != found[0].top
        size = found[0].size if found else None
        ok &= not decide(f, logic).provable and refuted and size == SEPARATION_SIZES[name]
        parts.append(f"{name}: size {size}")
    report(2, ok, "; ".join(parts))


def test_3_negation_towers(report):
    def tower(n):
        f = p
        for _ in range(n):
            f = Neg(f)
        return f

    goals = [Imp(tower(3), tower(1))]
    goals += [And(Imp(tower(2 * n), tower(2)), Imp(tower(2), tower(2 * n))) for n in (1, 2, 3)]
    results, secs = timed(lambda: [decide(g, Logic.COPC).provable for g in goals])
    report(3, all(results) and secs < 5.0, f"{sum(results)}/{len(goals)} provable in {secs:.3f}s")


def test_4_loop_regression(report):
    seq = Sequent([parse("~~~p")], parse("~~p"))
    naive = naive_prove(seq, Logic.COPC, 25)
    d, secs = timed(lambda: decide(seq, Logic.COPC, check_measure=True, strict=True))
    st = d.stats
    ok = (isinstance(naive, Exhausted) and secs < 1.0
          and st.measure_checks > 0 and not st.measure_violations)
    report(4, ok, f"naive {type(naive).__name__}, decide {d.verdict} in {secs:.4f}s, "
                  f"{st.measure_checks} measure checks, {len(st.measure_violations)} violations")


def test_5_cross_validation(report):
    start = time.perf_counter()
    contradictions, counts = [], {}
    for logic in LOGICS:
        dec = decisions(logic)
        n = 0
        for f in corpus():
            naive = isinstance(naive_prove(Sequent([], f), logic, 30), Provable)
            if naive and not dec[f].provable:
                contradictions.append((logic, f))
            n += dec[f].provable
        counts[logic.label] = n
    secs = time.perf_counter() - start
    ok = not contradictions and secs < 600
    report(5, ok, f"{len(corpus())} formulas x 4 logics, {len(contradictions)} contradictions, "
                  f"provable {counts}, {secs:.1f}s")


def test_6_soundness(report):
    violations, checked = [], 0
    for logic in LOGICS:
        for f, d in decisions(logic).items():
            if d.provable:
                checked += 1
                if find_countermodel(f, logic, 4) is not None:
                    violations.append((logic, f))
    report(6, not violations, f"{checked} provable sequents, {len(violations)} refuted at size <= 4")


def disjunction_free(f):
    return not any(isinstance(s, Or) for s in _subs(f))


def _subs(f):
    yield f
    for c in f.children():
        yield from _subs(c)


def test_7_disjunction_property(report):
    violations, checked = [], 0
    for logic in LOGICS:
        for f, d in decisions(logic).items():
            if not d.provable:
                continue
            if isinstance(f, Or):
                seq = Sequent([], f)
            elif isinstance(f, Imp) and isinstance(f.right, Or) and disjunction_free(f.left):
                seq = Sequent([f.left], f.right)
            else:
                continue
            if not decide(seq, logic).provable:
                continue
            checked += 1
            goal = seq.goal
            if not (decide(Sequent(seq.context, goal.left), logic).provable
                    or decide(Sequent(seq.context, goal.right), logic).provable):
                violations.append((logic, seq))
    report(7, not violations and checked > 0, f"{checked} provable disjunctive sequents, "
                                               f"{len(violations)} violations")


def test_8_no_negated_theorems(report):
    violations = [(logic, f) for logic in (Logic.N, Logic.NEF, Logic.COPC)
                  for f in corpus() if decide(Neg(f), logic).provable]
    report(8, not violations, f"{3 * len(corpus())} negated goals, {len(violations)} provable")


def splits_for(f):
    """Split sequents read off a corpus formula of implicational shape."""
    if not isinstance(f, Imp):
        return []
    a, b = f.left, f.right
    out = [SplitSequent([a], [], b), SplitSequent([], [a], b)]
    if isinstance(a, And):
        out.append(SplitSequent([a.left], [a.right], b))
        out.append(SplitSequent([a.right], [a.left], b))
    if isinstance(b, Imp):
        out.append(SplitSequent([a], [b.left], b.right))
        out.append(SplitSequent([b.left], [a], b.right))
    return out


def test_9_interpolation(report):
    per_logic, failures, nontrivial = {}, [], 0
    for logic in LOGICS:
        n = 0
        for f, d in decisions(logic).items():
            if not d.provable:
                continue
            for split in splits_for(f):
                if not decide(split.merged(), logic).provable:
                    continue
                n += 1
                try:
                    sigma = interpolate(split, logic).interpolant
                except Exception as exc:  # noqa: BLE001 - every failure counts
                    failures.append((logic, split, exc))
                    continue
                ok = (language([sigma]) <= common_language(split)
                      and decide(Sequent(split.left, sigma), logic).provable
                      and decide(Sequent(split.right + (sigma,), split.goal), logic).provable)
                if not ok:
                    failures.append((logic, split, sigma))
                nontrivial += sigma != TOP
        per_logic[logic.label] = n
    total = sum(per_logic.values())
    ok = not failures and total >= 500 and all(per_logic.values())
    report(9, ok, f"{total} splits {per_logic}, {len(failures)} failures, "
                  f"{nontrivial} with a non-T interpolant")


def test_10_translation(report):
    violations = []
    for f in corpus():
        t = tilde(f)
        mpc = decisions(Logic.MPC)[f].provable
        if not mpc == decide(t, Logic.COPC).provable == decide(t, Logic.N).provable:
            violations.append(f)
    report(10, not violations, f"{len(corpus())} formulas, {len(violations)} violations")


def test_11_complexity_shape(report):
    # worst ratios over weights >= 3; at w = 1 both ratios are trivially 1
    worst_branch = worst_size = (0.0, None)
    max_branch = max_size = 0
    bad = []
    for logic in LOGICS:
        for f, d in decisions(logic).items():
            w = root_weight(Sequent([], f))
            st = d.stats
            max_branch = max(max_branch, st.max_branch_length)
            max_size = max(max_size, st.max_sequent_size)
            if w >= 3:
                worst_branch = max(worst_branch, (st.max_branch_length / w ** 3, str(f)))
                worst_size = max(worst_size, (st.max_sequent_size / w ** 2, str(f)))
            if st.max_branch_length > w ** 3 or st.max_sequent_size > SEQUENT_SIZE_FACTOR * w ** 2:
                bad.append((logic, f))
    report(11, not bad, f"max branch {max_branch}, max sequent size {max_size}, "
                        f"worst branch/w^3 {worst_branch[0]:.3f} ({worst_branch[1]}), "
                        f"worst size/w^2 {worst_size[0]:.3f} ({worst_size[1]}) for w >= 3, "
                        f"c = {SEQUENT_SIZE_FACTOR}, "
                        f"{len(bad)} violations")


def test_12_checker_robustness(report):
    proofs = []
    for logic in LOGICS:
        for f in itertools.islice(corpus(), 0, None, 7):
            d = decisions(logic)[f]
            if d.provable and d.proof.size() > 2:
                proofs.append((logic, d.proof))
                naive = naive_prove(Sequent([], f), logic, 30)
                proofs.append((logic, naive.proof))
    mutants = mutation_corpus(proofs, 1000, seed=2024)
    accepted = [desc for desc, logic, _, mutant in mutants if is_valid(mutant, logic)]
    originals_ok = all(is_valid(t, lg) for lg, t in proofs)
    report(12, originals_ok and not accepted,
           f"{len(mutants)} mutants of {len(proofs)} proofs, {len(accepted)} accepted")
