"""Acceptance gate: one test per headline criterion, run at stated budgets.

Each test prints a single PASS line on success; pytest -v gives the
per-criterion pass/fail ledger.  Budgets, tolerances (all exact), and
expected values are stated inline and must not be weakened.
"""

import json
import random
import subprocess
import sys
import time

from regseq import formulas as F
from regseq.congruence import profile
from regseq.decide import Verdict, decide, verify_ax6
from regseq.equations import EquationProblem, brute_force, solve_full, solve_nondegenerate
from regseq.mann import MannMonoid, solve_homogeneous, solve_unit
from regseq.operators import CofiniteZero, FiniteRoots, Operator, apply, classify
from regseq.sequences import SequenceSpec, make_handle
from regseq.syndetic import EnumerableSet, cover_check, gap_runs

SEQUENCES = {
    "pow2": make_handle(SequenceSpec.power(2)),
    "pow3": make_handle(SequenceSpec.power(3)),
    "fib": make_handle(SequenceSpec.recurrence([1, 1], [1, 2])),
    "factorial": make_handle(SequenceSpec.factorial()),
    "sum23": make_handle(SequenceSpec.sum_of([SequenceSpec.power(2),
                                              SequenceSpec.power(3)])),
}


def operator_battery():
    """Thirty fixed operators, degrees <= 4, coefficients within [-9, 9]."""
    fixed = [[1], [-2, 1], [1, 1, -1], [-3, 1], [0, 0, 0, 0, 1],
             [1, -3, 1], [-1, 1], [2, -1], [-6, 5, -1], [9, 0, -9, 0, 1]]
    rng = random.Random(3030)
    battery = [Operator(c) for c in fixed]
    while len(battery) < 30:
        degree = rng.randint(0, 4)
        coeffs = [rng.randint(-9, 9) for _ in range(degree + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = rng.choice([-1, 1]) * rng.randint(1, 9)
        battery.append(Operator(coeffs))
    assert len(battery) == 30
    return battery


def test_criterion_1_operator_dichotomy_battery():
    start = time.monotonic()
    battery = operator_battery()
    for label, handle in SEQUENCES.items():
        proved = 0
        for op in battery:
            verdict = classify(op, handle)
            zeros = {n for n in range(301) if apply(op, handle, n) == 0}
            if isinstance(verdict, FiniteRoots):
                assert zeros == {r for r in verdict.roots if r <= 300}, \
                    (label, op.coeffs)
            else:
                assert isinstance(verdict, CofiniteZero)
                assert zeros == set(range(301)) - set(verdict.exceptions), \
                    (label, op.coeffs)
            if verdict.cert.is_proved:
                proved += 1
        assert proved >= 25, (label, proved)
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, elapsed
    print("criterion 1 PASS: 5 sequences x 30 operators match brute force "
          "on [0,300], >=25/30 proved each, %.1fs" % elapsed)


def test_criterion_2_shift_pattern_completeness():
    equations = [([[1], [1], [-1]], 0),
                 ([[1], [1], [-1], [-1]], 0),
                 ([[2], [-1]], 0),
                 ([[1], [-1]], 1)]
    for label, handle in SEQUENCES.items():
        for ops, z in equations:
            problem = EquationProblem(handle, ops, z)
            got = solve_full(problem).instantiate(20)
            want = {t for t, _tag in brute_force(problem, 20)}
            assert got == want, (label, ops, z)
    fib_problem = EquationProblem(SEQUENCES["fib"], [[1], [1], [-1]], 0)
    dsol = solve_nondegenerate(fib_problem)
    assert sorted(p.offsets for p in dsol.patterns) == [(0, 1, 2), (1, 0, 2)]
    assert all(p.exceptions == () for p in dsol.patterns)
    print("criterion 2 PASS: 4 equations x 5 sequences equal brute force on "
          "[0,20]^s; Fibonacci-style patterns are (0,1,2),(1,0,2) "
          "with no exceptions")


def test_criterion_3_nonzero_targets_are_sporadic():
    rng = random.Random(96485)
    names = sorted(SEQUENCES)
    checked = 0
    while checked < 20:
        handle = SEQUENCES[rng.choice(names)]
        s = rng.randint(2, 3)
        ops = []
        for _ in range(s):
            degree = rng.randint(0, 1)
            coeffs = [rng.randint(-4, 4) for _ in range(degree + 1)]
            if coeffs[-1] == 0:
                coeffs[-1] = rng.choice([-1, 1])
            ops.append(coeffs)
        problem = EquationProblem(handle, ops, rng.choice(
            [-25, -9, -2, -1, 1, 2, 7, 16, 30]))
        if any(isinstance(classify(op, handle), CofiniteZero)
               for op in problem.operators):
            continue
        dsol = solve_nondegenerate(problem)
        assert dsol.patterns == [], problem.to_json()
        level = dsol.certificate.to_json()["level"]
        assert level in ("Proved", "BoundedCheck")
        want = {t for t, tag in brute_force(problem, 20)
                if tag["status"] == "non-degenerate"}
        got = {t for t in dsol.sporadic if max(t) <= 20}
        assert got == want, problem.to_json()
        checked += 1
    print("criterion 3 PASS: 20 randomized nonzero targets gave zero "
          "pattern families and complete finite sporadic lists")


def test_criterion_4_congruence_profiles():
    start = time.monotonic()
    expectations = [("pow2", 3, 0, 2), ("fib", 2, 0, 3), ("factorial", 4, 2, 1)]
    for label, m, rho, p in expectations:
        handle = SEQUENCES[label]
        prof = profile(handle, m)
        assert (prof.rho, prof.p) == (rho, p), (label, m)
        for n in range(rho + 5 * p + 1):
            assert prof.predict(n) == handle.eval(n) % m, (label, m, n)
    elapsed = time.monotonic() - start
    assert elapsed < 1.0, elapsed
    print("criterion 4 PASS: profiles (0,2)/(0,3)/(2,1) verified over 5 "
          "periods in %.3fs" % elapsed)


def test_criterion_5_axiom_violation_reproduced():
    table = make_handle(SequenceSpec.table([], generator="2**n + n"))
    report = verify_ax6(table, [Operator([2, -3, 1]), Operator([-2, 3, -1])])
    assert report.status == "violation"
    witnesses = report.data["witnesses"]
    gaps = [b - a for a, b in witnesses]
    assert len(witnesses) >= 3
    assert all(x < y for x, y in zip(gaps, gaps[1:]))
    assert all(b <= 200 for _a, b in witnesses)
    print("criterion 5 PASS: (f,-f) on 2^n + n violates the offset-family "
          "axiom with %d witness pairs at strictly increasing gaps %s"
          % (len(witnesses), gaps))


def test_criterion_6_decision_fragment_examples():
    pow2 = SEQUENCES["pow2"]
    cases = [("E x1 in R. E x2 in R. x1 + x2 = 7", Verdict.FALSE),
             ("E x1 in R. E x2 in R. x1 + x2 = 12", Verdict.TRUE),
             ("E x in R. D3(x + 2) & x > 1", Verdict.TRUE)]
    for text, expected in cases:
        verdict = decide(F.parse(text), pow2, budget=64)
        assert verdict.kind == expected, text
        if expected == Verdict.TRUE:
            assignment = {var: value for var, (sort, value)
                          in verdict.witness.items() if sort == "index"}
            assert F.eval_ground(F.parse(text), pow2, assignment)
        doubled = decide(F.parse(text), pow2, budget=128)
        assert doubled.kind == expected, text
    print("criterion 6 PASS: decide returns False/True/True with verified "
          "witnesses, stable under doubled budgets")


def test_criterion_7_mann_suite():
    start = time.monotonic()
    monoid = MannMonoid([2, 3])
    unit, _cert = solve_unit([1, -1], monoid, 30)
    assert unit == [(2, 1), (3, 2), (4, 3), (9, 8)]
    sols = solve_homogeneous([1, 1, -1], monoid, 20)
    assert sols.base == [(1, 1, 2), (1, 2, 3), (1, 3, 4), (1, 8, 9)]
    rng = random.Random(1923)
    multipliers = rng.sample([m for m in monoid.enumerate(10 ** 6) if m > 1],
                             20)
    for m in multipliers:
        for base in sols.base:
            scaled = sols.scale(base, m)
            assert scaled[0] + scaled[1] - scaled[2] == 0
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, elapsed
    print("criterion 7 PASS: unit and homogeneous solution sets exact, "
          "family soundness for 20 multipliers, %.2fs" % elapsed)


def test_criterion_8_syndetic_evidence():
    pow2 = SEQUENCES["pow2"]
    sums = EnumerableSet.image_sum(pow2, [[1], [1]], label="2^a+2^b")
    report = gap_runs(sums, 2 ** 20, 16)
    assert report.longest_run <= 5, report.longest_run
    powers = EnumerableSet.image_sum(pow2, [[1]], label="2^n")
    cover = cover_check(3, 4, [powers], 10 ** 3)
    assert not cover.covered
    w = cover.witness
    assert w is not None and w % 4 == 3
    assert w not in set(powers.up_to(10 ** 3))
    print("criterion 8 PASS: longest 16-bounded run is %d (<= 5); covering "
          "witness %d is on the progression and missed by the image"
          % (report.longest_run, w))


def test_criterion_9_suite_determinism():
    runs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "regseq.cli", "suite"],
                              capture_output=True, check=True)
        runs.append(proc.stdout)
    assert runs[0] == runs[1]
    json.loads(runs[0])
    print("criterion 9 PASS: suite output byte-identical across two runs "
          "(%d bytes)" % len(runs[0]))
