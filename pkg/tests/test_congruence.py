"""Eventual periodicity mod m: profiles versus direct residue computation."""

import random

from regseq.congruence import divisibility_set, profile
from regseq.operators import Operator, apply
from regseq.sequences import SequenceSpec, make_handle

POW2 = make_handle(SequenceSpec.power(2))
FIB = make_handle(SequenceSpec.recurrence([1, 1], [1, 2]))
FACT = make_handle(SequenceSpec.factorial())
SUM23 = make_handle(SequenceSpec.sum_of([SequenceSpec.power(2),
                                         SequenceSpec.power(3)]))


def check_profile(handle, m, periods=5):
    """predict() must reproduce r_n mod m across several full periods."""
    prof = profile(handle, m)
    upto = prof.rho + max(1, prof.p) * periods
    for n in range(upto + 1):
        assert prof.predict(n) == handle.eval(n) % m
    return prof


def test_powers_of_two_mod_three():
    prof = check_profile(POW2, 3)
    assert (prof.rho, prof.p) == (0, 2)
    assert prof.residues == (1, 2)


def test_fibonacci_mod_two():
    prof = check_profile(FIB, 2)
    assert (prof.rho, prof.p) == (0, 3)
    assert prof.residues == (1, 0, 1)


def test_factorial_mod_four():
    prof = check_profile(FACT, 4)
    assert (prof.rho, prof.p) == (2, 1)
    assert prof.residues == (2, 2, 0)


def test_profile_minimality():
    # the reported period divides any other period of the residue tail
    prof = check_profile(FIB, 10)
    tail = [FIB.eval(n) % 10 for n in range(prof.rho, prof.rho + 4 * prof.p)]
    for candidate in range(1, prof.p):
        assert any(tail[i] != tail[i + candidate]
                   for i in range(len(tail) - candidate))


def test_random_profiles_match_scan():
    rng = random.Random(9001)
    handles = [POW2, FIB, FACT, SUM23]
    for _ in range(25):
        handle = rng.choice(handles)
        m = rng.randint(2, 24)
        check_profile(handle, m)


def test_divisibility_set_odd_exponents():
    # 3 | 2^n + 1 exactly when n is odd
    pis = divisibility_set(POW2, Operator([1]), 1, 3)
    for n in range(60):
        expected = (2 ** n + 1) % 3 == 0
        assert pis.contains(n) == expected
    assert pis.p == 2
    assert all(c % 2 == 1 for c in pis.classes)


def test_divisibility_set_random_agreement():
    rng = random.Random(4242)
    for _ in range(20):
        handle = rng.choice([POW2, FIB, SUM23])
        degree = rng.randint(0, 2)
        coeffs = [rng.randint(-4, 4) for _ in range(degree + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = 1
        op = Operator(coeffs)
        k = rng.randint(-6, 6)
        m = rng.randint(2, 12)
        pis = divisibility_set(handle, op, k, m)
        for n in range(80):
            expected = (apply(op, handle, n) + k) % m == 0
            assert pis.contains(n) == expected, (coeffs, k, m, n)
