"""Sequence construction and evaluation against independent closed forms.

Every frozen expectation below is computed by a loop or closed form written
directly in this file, never by the code under test.
"""

import random
from fractions import Fraction

import pytest

from regseq.sequences import (KeplerLimit, MonotonicityError, SequenceSpec,
                              TableExhausted, kepler_limit, make_handle)


def fib_list(count):
    vals = [1, 2]
    while len(vals) < count:
        vals.append(vals[-1] + vals[-2])
    return vals[:count]


def factorial_list(count):
    vals = []
    acc = 1
    for n in range(count):
        acc = acc * (n + 2) if n else 2
        vals.append(acc)
    return vals


def test_power_elements():
    for q in (2, 3, 10):
        handle = make_handle(SequenceSpec.power(q))
        assert handle.values(20) == [q ** n for n in range(21)]


def test_fibonacci_convention_starts_1_2():
    handle = make_handle(SequenceSpec.recurrence([1, 1], [1, 2]))
    assert handle.values(9) == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_factorial_convention_starts_at_two():
    handle = make_handle(SequenceSpec.factorial())
    assert handle.values(4) == [2, 6, 24, 120, 720]
    assert handle.values(4) == factorial_list(5)


def test_sum_of_two_powers():
    spec = SequenceSpec.sum_of([SequenceSpec.power(2), SequenceSpec.power(3)])
    handle = make_handle(spec)
    assert handle.values(12) == [2 ** n + 3 ** n for n in range(13)]


def test_table_with_generator_and_prefix():
    handle = make_handle(SequenceSpec.table([], generator="2**n + n"))
    assert handle.values(6) == [2 ** n + n for n in range(7)]
    mixed = make_handle(SequenceSpec.table([1, 3], generator="2**n + n"))
    assert mixed.values(4) == [1, 3, 6, 11, 20]


def test_table_without_generator_exhausts():
    handle = make_handle(SequenceSpec.table([1, 4, 9]))
    assert handle.values(2) == [1, 4, 9]
    with pytest.raises(TableExhausted):
        handle.eval(3)


def test_monotonicity_enforced():
    with pytest.raises(MonotonicityError):
        SequenceSpec.recurrence([1, 1], [2, 2])
    flat = make_handle(SequenceSpec.table([1, 3], generator="4"))
    flat.eval(2)
    with pytest.raises(MonotonicityError):
        flat.eval(3)


def test_json_round_trip():
    specs = [SequenceSpec.power(2),
             SequenceSpec.recurrence([1, 1], [1, 2]),
             SequenceSpec.factorial(),
             SequenceSpec.sum_of([SequenceSpec.power(2),
                                  SequenceSpec.power(3)]),
             SequenceSpec.table([7], generator="2**n + 6")]
    for spec in specs:
        back = SequenceSpec.from_json(spec.to_json())
        assert back == spec
        assert make_handle(back).values(10) == make_handle(spec).values(10)


def test_kepler_limit_power_is_exact():
    limit = kepler_limit(make_handle(SequenceSpec.power(2)))
    assert limit.is_algebraic
    lo, hi = limit.theta_interval()
    assert lo <= 2 <= hi


def test_kepler_limit_factorial_is_infinite():
    assert kepler_limit(make_handle(SequenceSpec.factorial())).is_infinite


def test_kepler_limit_fibonacci_brackets_golden_ratio():
    limit = kepler_limit(make_handle(SequenceSpec.recurrence([1, 1], [1, 2])))
    lo, hi = limit.theta_interval()
    assert lo <= Fraction(1618, 1000) <= hi or (float(lo) < 1.619 and float(hi) > 1.617)
    assert hi - lo < Fraction(1, 100)


def test_kepler_limit_sum_takes_dominant_part():
    spec = SequenceSpec.sum_of([SequenceSpec.power(2), SequenceSpec.power(3)])
    limit = kepler_limit(make_handle(spec))
    lo, hi = limit.theta_interval()
    assert lo <= 3 <= hi


def test_random_recurrences_strictly_increase():
    rng = random.Random(20260814)
    for _ in range(40):
        depth = rng.randint(1, 3)
        coeffs = [rng.randint(1, 5) for _ in range(depth)]
        initials = sorted(rng.sample(range(1, 50), depth))
        if depth == 1 and coeffs[0] == 1:
            coeffs[0] = 2
        handle = make_handle(SequenceSpec.recurrence(coeffs, initials))
        vals = handle.values(60)
        assert all(a < b for a, b in zip(vals, vals[1:]))
        # re-deriving from the recurrence reproduces the cache
        k = depth
        for n in range(k, 61):
            assert vals[n] == sum(coeffs[i] * vals[n - k + i] for i in range(k))


def test_cache_interleaving_is_consistent():
    handle = make_handle(SequenceSpec.recurrence([2, 1], [1, 3]))
    high = handle.eval(50)
    assert handle.eval(10) == handle.values(50)[10]
    assert handle.eval(50) == high
