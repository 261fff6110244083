"""Linear equations over a finitely generated multiplicative submonoid of Z.

Such a monoid M has the Mann property: an equation q_1 x_1 + ... + q_n x_n = 1
with nonzero rational coefficients has only finitely many non-degenerate
solutions in M (no proper sub-sum vanishing).  Homogeneous equations inherit
a structure theorem from this: dividing through by the first coordinate
turns a_1 x_1 + ... + a_n x_n = 0 into a unit equation over ratios, so the
non-degenerate solutions organize into finitely many translate families
(g_1, ..., g_n)M.

No effective bound for the Mann property is available here, so every
completeness claim is tagged BoundedCheck at the exponent level scanned:
all tuples whose coordinates use generator exponents up to E are covered,
nothing beyond is claimed.  Base tuples are canonicalized by sorting the
slots that share a coefficient and dividing out the largest monoid element
that leaves all coordinates in the monoid; families are base x M.
"""

import itertools
from fractions import Fraction

from .certs import BoundedCheck

DEFAULT_EXPONENT = 64
SCAN_CAP = 6_000_000


class MannMonoid:
    """The multiplicative closure of finitely many integer generators, each
    of absolute value at least 2 (signs allowed), together with 1."""

    def __init__(self, generators):
        gens = sorted(set(int(g) for g in generators))
        for g in gens:
            if abs(g) < 2:
                raise ValueError("generator %d has absolute value < 2" % g)
        self.generators = tuple(gens)
        self._member_memo = {1: True}

    def enumerate(self, bound):
        """Sorted elements with absolute value at most bound."""
        if bound < 1:
            raise ValueError("bound must be >= 1")
        seen = {1}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for g in self.generators:
                w = v * g
                if abs(w) <= bound and w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return sorted(seen)

    def elements_with_exponents(self, exp_bound):
        """Sorted products of generators with every exponent <= exp_bound."""
        if exp_bound < 0:
            raise ValueError("exponent bound must be >= 0")
        count = (exp_bound + 1) ** len(self.generators)
        if count > SCAN_CAP:
            raise ValueError("exponent window of %d elements exceeds the "
                             "scan budget" % count)
        out = set()
        for exps in itertools.product(range(exp_bound + 1),
                                      repeat=len(self.generators)):
            v = 1
            for g, e in zip(self.generators, exps):
                v *= g ** e
            out.add(v)
        return sorted(out)

    def contains(self, value):
        """Membership by generator-division search (exact, unbounded)."""
        value = int(value)
        if value == 0:
            return False
        memo = self._member_memo
        if value in memo:
            return memo[value]
        stack = [value]
        while stack:
            v = stack[-1]
            if v in memo:
                stack.pop()
                continue
            pending = False
            result = False
            for g in self.generators:
                if v % g == 0:
                    w = v // g
                    if w in memo:
                        if memo[w]:
                            result = True
                            break
                    elif abs(w) >= 1:
                        stack.append(w)
                        pending = True
            if result:
                memo[v] = True
                stack.pop()
            elif not pending:
                memo[v] = False
                stack.pop()
        return memo[value]

    def to_json(self):
        return {"generators": list(self.generators)}


# ---------------------------------------------------------------------------
# Unit equations
# ---------------------------------------------------------------------------

def _nondegenerate(weighted):
    """No proper nonempty sub-sum of the weighted terms vanishes."""
    n = len(weighted)
    for size in range(1, n):
        for sub in itertools.combinations(range(n), size):
            if sum(weighted[i] for i in sub) == 0:
                return False
    return True


def solve_unit(coefficients, monoid, exp_bound=DEFAULT_EXPONENT):
    """All non-degenerate solutions of q_1 x_1 + ... + q_n x_n = 1 with
    every x_i a monoid element built from exponents <= exp_bound.

    Returns (sorted solution tuples, BoundedCheck(exp_bound)): the Mann
    property guarantees finiteness but supplies no effective bound."""
    qs = [Fraction(q) for q in coefficients]
    if not qs or any(q == 0 for q in qs):
        raise ValueError("coefficients must be nonzero")
    elements = monoid.elements_with_exponents(exp_bound)
    element_set = set(elements)
    n = len(qs)
    if len(elements) ** max(0, n - 1) > SCAN_CAP:
        raise ValueError("unit-equation scan exceeds the budget")
    out = []
    for head in itertools.product(elements, repeat=n - 1):
        rest = 1 - sum(q * x for q, x in zip(qs, head))
        last = rest / qs[-1]
        if last.denominator != 1 or last.numerator not in element_set:
            continue
        tup = head + (int(last),)
        if _nondegenerate([q * x for q, x in zip(qs, tup)]):
            out.append(tup)
    return sorted(set(out)), BoundedCheck(exp_bound)


# ---------------------------------------------------------------------------
# Homogeneous equations
# ---------------------------------------------------------------------------

class MannSplit:
    """A degenerate regime: the sub-sum over `positions` vanishes on its
    own, so both sides solve their own homogeneous equations."""

    def __init__(self, positions, left, right):
        self.positions = tuple(positions)
        self.left = left
        self.right = right

    def to_json(self):
        return {"positions": [p + 1 for p in self.positions],
                "left": self.left.to_json(),
                "right": self.right.to_json()}


class MannSolutionSet:
    """base x M translate families covering the non-degenerate solutions of
    a homogeneous equation up to the scanned exponent level; degenerate
    solutions are described by the recursive splits."""

    def __init__(self, coefficients, monoid, base, splits, exp_bound,
                 certificate, scanned):
        self.coefficients = tuple(coefficients)
        self.monoid = monoid
        self.base = list(base)
        self.splits = list(splits)
        self.exp_bound = exp_bound
        self.certificate = certificate
        self.scanned = scanned   # raw non-degenerate scan hits at exp_bound

    def scale(self, base_tuple, m):
        return tuple(m * v for v in base_tuple)

    def canonical(self, tup):
        return _canonical(self.coefficients, self.monoid, tup)

    def covers(self, tup):
        """Whether the tuple belongs to some family, up to permuting slots
        that share a coefficient."""
        return self.canonical(tup) in set(self.base)

    def family_tuples(self, exp_bound=None):
        """All family instances (permutation closure included) whose
        coordinates stay within the element window."""
        window = set(self.monoid.elements_with_exponents(
            self.exp_bound if exp_bound is None else exp_bound))
        out = set()
        for b in self.base:
            for m in sorted(window):
                tup = self.scale(b, m)
                if all(v in window for v in tup):
                    for perm in _coef_permutations(self.coefficients, tup):
                        out.add(perm)
        return out

    def to_json(self):
        return {"coefficients": list(self.coefficients),
                "monoid": self.monoid.to_json(),
                "base": [list(b) for b in self.base],
                "families": "each base tuple times the monoid",
                "splits": [sp.to_json() for sp in self.splits],
                "exponent_bound": self.exp_bound,
                "certificate": self.certificate.to_json()}


def _coef_permutations(coeffs, tup):
    """Images of the tuple under permutations of equal-coefficient slots."""
    groups = {}
    for i, a in enumerate(coeffs):
        groups.setdefault(a, []).append(i)
    slot_perms = []
    for a, idxs in sorted(groups.items()):
        slot_perms.append([dict(zip(idxs, p))
                           for p in itertools.permutations(idxs)])
    for combo in itertools.product(*slot_perms):
        mapping = {}
        for d in combo:
            mapping.update(d)
        yield tuple(tup[mapping[i]] for i in range(len(tup)))


def _canonical(coeffs, monoid, tup):
    """Sort equal-coefficient slots, then divide out the largest monoid
    element keeping all coordinates in the monoid."""
    groups = {}
    for i, a in enumerate(coeffs):
        groups.setdefault(a, []).append(i)
    out = list(tup)
    for a, idxs in groups.items():
        vals = sorted(out[i] for i in idxs)
        for i, v in zip(idxs, vals):
            out[i] = v
    best = tuple(out)
    divisors = [m for m in monoid.enumerate(max(abs(v) for v in best) or 1)
                if m > 1]
    for m in sorted(divisors, reverse=True):
        if all(v % m == 0 and monoid.contains(v // m) for v in best):
            return tuple(v // m for v in best)
    return best


def solve_homogeneous(coefficients, monoid, exp_bound=DEFAULT_EXPONENT,
                      _depth=0):
    """Translate-family description of a_1 x_1 + ... + a_n x_n = 0 over the
    monoid: canonical base tuples (times M), plus recursive splits for the
    degenerate vanishing-sub-sum regimes."""
    coeffs = [int(a) for a in coefficients]
    if len(coeffs) < 2 or any(a == 0 for a in coeffs):
        raise ValueError("need >= 2 nonzero integer coefficients")
    elements = monoid.elements_with_exponents(exp_bound)
    element_set = set(elements)
    n = len(coeffs)
    if len(elements) ** (n - 1) > SCAN_CAP:
        raise ValueError("homogeneous scan exceeds the budget")
    scanned = []
    for head in itertools.product(elements, repeat=n - 1):
        num = -sum(a * x for a, x in zip(coeffs, head))
        if num % coeffs[-1] != 0:
            continue
        last = num // coeffs[-1]
        if last not in element_set:
            continue
        tup = head + (last,)
        if _nondegenerate([a * x for a, x in zip(coeffs, tup)]):
            scanned.append(tup)
    base = sorted({_canonical(coeffs, monoid, t) for t in scanned})
    splits = []
    if _depth < 2:
        for size in range(2, n - 1):
            for sub in itertools.combinations(range(n), size):
                rest = tuple(i for i in range(n) if i not in sub)
                left = solve_homogeneous([coeffs[i] for i in sub], monoid,
                                         exp_bound, _depth + 1)
                right = solve_homogeneous([coeffs[i] for i in rest], monoid,
                                          exp_bound, _depth + 1)
                if left.base and right.base:
                    splits.append(MannSplit(sub, left, right))
    return MannSolutionSet(coeffs, monoid, base, splits, exp_bound,
                           BoundedCheck(exp_bound), scanned)


# ---------------------------------------------------------------------------
# Induced-structure rendering
# ---------------------------------------------------------------------------

class InducedTrace:
    """The solution families re-expressed in the unary-function language:
    each family fixes ratios s_j with x_j = s_j * x_1 as x_1 ranges over the
    monoid.  evaluate() re-derives the tuples from this description alone,
    giving a round-trip check against the scan."""

    def __init__(self, solution_set):
        self.solution_set = solution_set
        self.clauses = [tuple(Fraction(b[j], b[0]) for j in range(len(b)))
                        for b in solution_set.base]

    def render(self):
        lines = []
        for factors in self.clauses:
            parts = ["x1 in M"]
            for j, s in enumerate(factors[1:], start=2):
                parts.append("x%d = (%s)*x1" % (j, s))
            lines.append(" & ".join(parts))
        return lines

    def evaluate(self, exp_bound=None):
        """Family instances regenerated from the s-atoms (with the same
        equal-coefficient permutation closure as the solution set)."""
        sols = self.solution_set
        bound = sols.exp_bound if exp_bound is None else exp_bound
        window = set(sols.monoid.elements_with_exponents(bound))
        out = set()
        for factors in self.clauses:
            for x1 in sorted(window):
                tup = []
                for s in factors:
                    v = s * x1
                    if v.denominator != 1 or v.numerator not in window:
                        break
                    tup.append(int(v))
                else:
                    for perm in _coef_permutations(sols.coefficients,
                                                   tuple(tup)):
                        out.add(perm)
        return out

    def to_json(self):
        return {"clauses": self.render(),
                "ratios": [[str(s) for s in factors]
                           for factors in self.clauses],
                "exponent_bound": self.solution_set.exp_bound,
                "certificate": self.solution_set.certificate.to_json()}


def induced_trace(coefficients, monoid, exp_bound=DEFAULT_EXPONENT):
    return InducedTrace(solve_homogeneous(coefficients, monoid, exp_bound))
