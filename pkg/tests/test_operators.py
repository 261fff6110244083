"""Operator dichotomy: classify verdicts versus direct evaluation.

The brute-force oracle here recomputes f(n) = sum a_i r_{n+i} from handle
values alone and scans an initial window; classify must agree with it on
that window regardless of which certification route it took.
"""

import random

import pytest

from regseq.operators import (CofiniteZero, FiniteRoots, NotFinitelySolvable,
                              Operator, apply, classify, solve_inhomogeneous)
from regseq.sequences import SequenceSpec, make_handle

POW2 = make_handle(SequenceSpec.power(2))
FIB = make_handle(SequenceSpec.recurrence([1, 1], [1, 2]))
FACT = make_handle(SequenceSpec.factorial())


def scan_zeros(op, handle, upto):
    return [n for n in range(upto + 1) if apply(op, handle, n) == 0]


def test_apply_matches_definition():
    op = Operator([1, -3, 1])
    for n in range(10):
        assert apply(op, POW2, n) == 2 ** n - 3 * 2 ** (n + 1) + 2 ** (n + 2)


def test_shift_minus_double_vanishes_on_powers_of_two():
    verdict = classify(Operator([-2, 1]), POW2)
    assert isinstance(verdict, CofiniteZero)
    assert verdict.exceptions == ()
    assert verdict.cert.is_proved
    assert verdict.cert.reason == "minpoly-divides"


def test_recurrence_relation_vanishes_on_fibonacci():
    verdict = classify(Operator([1, 1, -1]), FIB)
    assert isinstance(verdict, CofiniteZero)
    assert verdict.exceptions == ()
    assert verdict.cert.is_proved


def test_nonvanishing_operator_on_powers():
    verdict = classify(Operator([1, -3, 1]), POW2)
    assert isinstance(verdict, FiniteRoots)
    assert verdict.roots == ()
    assert verdict.cert.is_proved


def test_factorial_dominance_is_proved():
    verdict = classify(Operator([7, -5, 1]), FACT)
    assert isinstance(verdict, FiniteRoots)
    assert verdict.cert.is_proved
    assert verdict.cert.reason == "theta-infinite-dominance"
    assert verdict.roots == tuple(scan_zeros(Operator([7, -5, 1]), FACT, 50))


def test_classification_matches_scan_on_random_battery():
    rng = random.Random(1414213)
    handles = [POW2, FIB, FACT]
    for _ in range(60):
        handle = rng.choice(handles)
        degree = rng.randint(0, 4)
        coeffs = [rng.randint(-9, 9) for _ in range(degree + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = rng.choice([-1, 1]) * rng.randint(1, 9)
        if all(c == 0 for c in coeffs[:-1]) and degree == 0 and coeffs[0] == 0:
            coeffs[0] = 1
        op = Operator(coeffs)
        verdict = classify(op, handle)
        zeros = scan_zeros(op, handle, 300)
        if isinstance(verdict, FiniteRoots):
            assert set(zeros) == {r for r in verdict.roots if r <= 300}
            assert all(r <= verdict.cutoff for r in verdict.roots)
        else:
            nonzeros = [n for n in range(301) if n not in zeros]
            assert set(nonzeros) == {e for e in verdict.exceptions if e <= 300}


def test_solve_inhomogeneous_hits_and_misses():
    # f(n) = 2^{n+1} - 2^n = 2^n; z = 8 is hit exactly at n = 3
    op = Operator([-1, 1])
    sols, cert = solve_inhomogeneous(op, POW2, 8)
    assert sols == [3]
    sols, cert = solve_inhomogeneous(op, POW2, 7)
    assert sols == []
    sols, cert = solve_inhomogeneous(Operator([1]), FIB, 21)
    assert sols == [6]


def test_solve_inhomogeneous_rejects_homogeneous_target():
    with pytest.raises(ValueError):
        solve_inhomogeneous(Operator([-2, 1]), POW2, 0)


def test_solve_inhomogeneous_flags_everywhere_solvable_tail():
    # r_n = n + 5 has constant difference 1, so f(n) = 1 has cofinitely
    # many solutions: the finiteness contract fails loudly
    line = make_handle(SequenceSpec.table([], generator="n + 5"))
    with pytest.raises(NotFinitelySolvable):
        solve_inhomogeneous(Operator([-1, 1]), line, 1)


def test_operator_validation():
    with pytest.raises(ValueError):
        Operator([])
    with pytest.raises(ValueError):
        Operator([1, 0])
    assert Operator([0, 1]).degree == 1


def test_operator_json_round_trip():
    op = Operator([3, 0, -2, 1])
    assert Operator.from_json(op.to_json()) == op
