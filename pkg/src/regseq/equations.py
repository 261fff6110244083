"""Solutions of f_1(n_1) + ... + f_s(n_s) = z as shift-pattern families.

Non-degenerate solutions (pairwise distinct indices, no vanishing proper
sub-sum) of a homogeneous equation over a certified sequence lie on finitely
many *shift patterns*: offset tuples m such that (l+m_1, ..., l+m_s) solves
the equation for every anchor l outside a finite exception set.
Inhomogeneous equations (z != 0) have finitely many non-degenerate solutions
altogether.

The quantitative skeleton used to certify completeness:

* a ratio lower bound  r_{n+1} >= rho r_n  (rho > 1) past n0;
* a uniform value bound u with |g(l)| >= u * r_l past a cutoff k_dom, valid
  for every combined operator g arising from offsets in play that the
  sequence does not kill (a norm bound over the conjugates for contracting
  recurrences, integrality for geometric sums, top-term dominance for
  factorial growth);
* a gap bound G with u * rho^(G+1-d_max) > A + |z| (A = total coefficient
  mass): in a non-degenerate solution, a sorted-index gap above G whose top
  sits past the anchor bound L would let the block above the gap outweigh
  everything below it plus z, so all indices stay below the box bound
  L* = L + (s-1)(G+1);
* offset tuples with gaps <= G whose combined operator is killed exactly
  (polynomial divisibility / vanishing at every base) are the families;
  everything else inside the box [0, L*]^s is enumerated outright by a
  meet-in-the-middle scan.

The resulting description instantiates to exactly the brute-force answer on
any window, which is the invariant the test-suite oracles check.

Degenerate solutions are organized by partition casework: equal indices are
collapsed through shift_combine at offset 0 (an identically-zero collapse
yields the explicit any-distinct-values family), and vanishing proper
sub-sums are split off recursively by their canonical (smallest) vanishing
subset.  Products arising from such splits are kept structured, since the
flat pattern/sporadic shape cannot express an infinite product faithfully.
"""

import itertools
from fractions import Fraction

from . import polyops
from . import sequences as sq
from . import operators as op_mod
from .certs import Proved, BoundedCheck, merge

ORACLE_CEILING = 40
OFFSET_BUDGET = 64          # cap on the certified gap bound G
ANCHOR_SCAN_BUDGET = 512    # cap on the certified box bound L*
BOUNDED_BOX = 48            # box used when certification is unavailable


class TrivialOperatorPresent(ValueError):
    """solve_nondegenerate rejects cofinitely-vanishing operators; the
    caller must pre-reduce (solve_full's casework covers them)."""


class EquationProblem:
    def __init__(self, handle, operators, z):
        self.handle = handle
        self.operators = [op if isinstance(op, op_mod.Operator) else op_mod.Operator(op)
                          for op in operators]
        if not self.operators:
            raise ValueError("need at least one operator")
        self.z = int(z)

    @property
    def s(self):
        return len(self.operators)

    def value(self, var, n):
        return op_mod.apply(self.operators[var], self.handle, n)

    def to_json(self):
        return {"operators": [op.to_json() for op in self.operators],
                "target": str(self.z)}

    @staticmethod
    def from_json(handle, obj):
        return EquationProblem(handle,
                               [op_mod.Operator.from_json(o) for o in obj["operators"]],
                               int(obj["target"]))


# ---------------------------------------------------------------------------
# Patterns and solution containers
# ---------------------------------------------------------------------------

class ShiftPattern:
    """Offsets (m_1, ..., m_s) with min 0; the anchor is the variable at
    offset 0 (unique, offsets in a non-degenerate pattern being distinct).

    validity is either ("cofinite", exceptions) -- every anchor l works
    except those listed -- or ("finite", anchors) -- exactly those listed.
    """

    COFINITE = "cofinite"
    FINITE = "finite"

    def __init__(self, offsets, validity, support):
        self.offsets = tuple(int(m) for m in offsets)
        if min(self.offsets) != 0:
            raise ValueError("pattern offsets must be anchored at 0")
        if validity not in (self.COFINITE, self.FINITE):
            raise ValueError("unknown validity")
        self.validity = validity
        self.support = tuple(sorted(int(x) for x in support))

    @staticmethod
    def cofinite_from(offsets, exceptions):
        return ShiftPattern(offsets, ShiftPattern.COFINITE, exceptions)

    @staticmethod
    def finite_bases(offsets, anchors):
        return ShiftPattern(offsets, ShiftPattern.FINITE, anchors)

    @property
    def exceptions(self):
        if self.validity != self.COFINITE:
            raise ValueError("finite-base pattern has no exception list")
        return self.support

    @property
    def anchors(self):
        if self.validity != self.FINITE:
            raise ValueError("cofinite pattern has no anchor list")
        return self.support

    def instantiate(self, l):
        return tuple(l + m for m in self.offsets)

    def valid_anchor(self, l):
        if self.validity == self.COFINITE:
            return l >= 0 and l not in self.support
        return l in self.support

    def tuples_up_to(self, n):
        top = n - max(self.offsets)
        return [self.instantiate(l) for l in range(top + 1) if self.valid_anchor(l)]

    def matches(self, tup):
        l = min(tup)
        return tuple(v - l for v in tup) == self.offsets and self.valid_anchor(l)

    def __repr__(self):
        return "ShiftPattern(%s, %s %s)" % (self.offsets, self.validity, self.support)

    def to_json(self):
        out = {"offsets": [str(m) for m in self.offsets], "validity": self.validity}
        if self.validity == self.COFINITE:
            out["exceptions"] = [str(e) for e in self.support]
        else:
            out["anchors"] = [str(a) for a in self.support]
        return out


class Split:
    """Degenerate-but-distinct solutions whose canonical vanishing subset is
    ``subset`` (0-based positions): the subset solves its sub-equation with
    target 0, the complement carries the full target; cross-distinctness and
    canonical-subset membership are enforced on instantiation."""

    def __init__(self, subset, zero_side, target_side):
        self.subset = tuple(sorted(subset))
        self.zero_side = zero_side
        self.target_side = target_side

    def is_finite(self):
        return (not self.zero_side.patterns and not self.zero_side.splits
                and not self.target_side.patterns and not self.target_side.splits)

    def to_json(self):
        return {"subset": [str(i + 1) for i in self.subset],
                "zero_side": self.zero_side.to_json(),
                "target_side": self.target_side.to_json()}


class DistinctSolutions:
    """All solutions with pairwise distinct indices for one operator tuple:
    non-degenerate families (patterns) and finite tuples (sporadic), plus
    structured splits for the degenerate-but-distinct part."""

    def __init__(self, problem, patterns, sporadic, splits, certificate, bound):
        self.problem = problem
        self.patterns = list(patterns)
        self.sporadic = sorted(tuple(t) for t in sporadic)
        self.splits = list(splits)
        self.certificate = certificate
        self.bound = int(bound)

    def is_empty(self):
        return not self.patterns and not self.sporadic and not self.splits

    def tuples_up_to(self, n):
        """Every described tuple with all entries <= n, sorted."""
        out = set()
        for p in self.patterns:
            out.update(p.tuples_up_to(n))
        out.update(t for t in self.sporadic if all(v <= n for v in t))
        for sp in self.splits:
            out.update(self.split_tuples(sp, n))
        return sorted(out)

    def split_tuples(self, sp, n):
        comp = tuple(i for i in range(self.problem.s) if i not in sp.subset)
        out = []
        for a in sp.zero_side.tuples_up_to(n):
            sa = set(a)
            for b in sp.target_side.tuples_up_to(n):
                if sa & set(b):
                    continue
                tup = [None] * self.problem.s
                for pos, v in zip(sp.subset, a):
                    tup[pos] = v
                for pos, v in zip(comp, b):
                    tup[pos] = v
                tup = tuple(tup)
                if _canonical_split(self.problem, tup) == sp.subset:
                    out.append(tup)
        return out

    def to_json(self):
        return {"patterns": [p.to_json() for p in self.patterns],
                "sporadic": [[str(v) for v in t] for t in self.sporadic],
                "splits": [sp.to_json() for sp in self.splits],
                "certificate": self.certificate.to_json(),
                "bound": str(self.bound)}


class CaseSolution:
    """One partition case.  Classes are listed by minimum member; free
    positions are classes whose collapsed operator cancels identically (any
    distinct values solve); the remaining classes carry a DistinctSolutions
    over the collapsed operators."""

    def __init__(self, partition, free_positions, active_positions, distinct):
        self.partition = tuple(tuple(sorted(c)) for c in partition)
        self.free_positions = tuple(free_positions)
        self.active_positions = tuple(active_positions)
        self.distinct = distinct

    def to_json(self):
        out = {"partition": [[str(i + 1) for i in c] for c in self.partition],
               "free_classes": [str(i + 1) for i in self.free_positions]}
        if self.distinct is not None:
            out["solutions"] = self.distinct.to_json()
        return out


class SolutionDescription:
    def __init__(self, problem, cases, certificate):
        self.problem = problem
        self.cases = cases
        self.certificate = certificate

    def instantiate(self, n):
        """All solution tuples in [0, n]^s described here (the oracle-facing
        view, compared verbatim against brute force by the tests)."""
        out = set()
        for case in self.cases:
            for tup in _case_tuples(self.problem, case, n):
                if tup in out:
                    raise AssertionError("case overlap on %s" % (tup,))
                out.add(tup)
        return out

    def to_json(self):
        return {"problem": self.problem.to_json(),
                "cases": [c.to_json() for c in self.cases],
                "certificate": self.certificate.to_json()}


# ---------------------------------------------------------------------------
# Brute force oracle
# ---------------------------------------------------------------------------

def brute_force(problem, n):
    """All tuples in [0, n]^s summing to z, each tagged non-degenerate or
    with its witnessing index collision / canonical vanishing sub-sum."""
    if n > ORACLE_CEILING:
        raise ValueError("oracle window above the configured ceiling")
    vals = _value_table(problem, n)
    out = []
    for tup in itertools.product(range(n + 1), repeat=problem.s):
        if sum(vals[j][tup[j]] for j in range(problem.s)) != problem.z:
            continue
        out.append((tup, _tag(problem.s, vals, tup)))
    return out


def _value_table(problem, n):
    return [[op_mod.apply(op, problem.handle, i) for i in range(n + 1)]
            for op in problem.operators]


def _tag(s, vals, tup):
    for i in range(s):
        for j in range(i + 1, s):
            if tup[i] == tup[j]:
                return {"status": "collision", "pair": (i, j)}
    sub = _canonical_split_vals(vals, tup)
    if sub is not None:
        return {"status": "vanishing", "subset": sub}
    return {"status": "non-degenerate"}


def _canonical_split_vals(vals, tup):
    """Canonical minimal vanishing proper subset (smallest size, then
    lexicographic); None when every proper sub-sum is nonzero."""
    s = len(tup)
    for size in range(1, s):
        for sub in itertools.combinations(range(s), size):
            if sum(vals[j][tup[j]] for j in sub) == 0:
                return sub
    return None


def _canonical_split(problem, tup):
    values = [problem.value(j, tup[j]) for j in range(problem.s)]
    s = len(tup)
    for size in range(1, s):
        for sub in itertools.combinations(range(s), size):
            if sum(values[j] for j in sub) == 0:
                return sub
    return None


# ---------------------------------------------------------------------------
# Completeness data
# ---------------------------------------------------------------------------

class _Completeness:
    def __init__(self, gap, box, cert):
        self.gap = gap      # G
        self.box = box      # L*
        self.cert = cert


def _bounded_completeness(s):
    gap = 8
    box = BOUNDED_BOX + (s - 1) * (gap + 1)
    return _Completeness(gap, box, BoundedCheck(box))


def _completeness_data(handle, ops, z, s):
    """Certified gap/box bounds for the given operators, or a bounded
    fallback when no certification route applies."""
    A = sum(op.mass() for op in ops)
    d_max = max(op.degree for op in ops)
    try:
        rho, n0, rcert = sq.ratio_lower_bound(handle)
    except ValueError:
        return _bounded_completeness(s)
    if not rcert.is_proved:
        return _bounded_completeness(s)

    u_star = _uniform_value_bound(handle, A)
    if u_star is None:
        return _bounded_completeness(s)

    # gap bound: u* rho^(G+1-d_max) > A + |z|
    target = Fraction(A + abs(z)) / u_star
    G = d_max
    power = Fraction(rho)
    while power <= target:
        G += 1
        power *= rho
        if G > OFFSET_BUDGET:
            return _bounded_completeness(s)

    k_dom = _uniform_cutoff(handle, A, (s - 1) * G + d_max)
    if k_dom is None:
        return _bounded_completeness(s)

    L = max(n0, k_dom) + G + d_max + 2
    if z != 0:
        while u_star * handle.eval(L) <= abs(z):
            L += 1
    box = L + (s - 1) * (G + 1)
    if box > ANCHOR_SCAN_BUDGET:
        return _Completeness(G, ANCHOR_SCAN_BUDGET, BoundedCheck(ANCHOR_SCAN_BUDGET))
    return _Completeness(G, box, Proved("dominance-bounds"))


def _uniform_value_bound(handle, A):
    """A rational u with |g(l)| >= u r_l past the uniform cutoff, valid for
    every combined operator g of mass <= A that the sequence does not kill
    (and, in the geometric case, does not partially kill)."""
    expansion = sq.power_base_expansion(handle.spec)
    if expansion is not None:
        total_mass = sum(c for _, c in expansion)
        return Fraction(1, 2 * total_mass)
    kepler = sq._cached_kepler(handle)
    if kepler.kind == sq.KeplerLimit.INFINITE and handle.spec.kind == sq.KIND_FACTORIAL:
        return Fraction(1, 2)
    if kepler.kind == sq.KeplerLimit.ALGEBRAIC and sq.certify(handle).recurrence_certified:
        if sq._contraction_data(handle) is not None:
            # Contraction certifies that every conjugate of theta lies
            # strictly inside the unit circle.  The norm of the algebraic
            # integer g(theta) is then a nonzero rational integer while each
            # conjugate factor is at most the coefficient mass, giving
            # |g(theta)| >= 1 / A^(k-1); the classification slack halves it.
            k = kepler.minpoly.degree
            return Fraction(1, 2 * A ** (k - 1))
    return None


def _uniform_cutoff(handle, A, max_degree):
    """Index past which the uniform value bound holds for every combined
    operator whose offsets plus degree stay below max_degree."""
    expansion = sq.power_base_expansion(handle.spec)
    if expansion is not None:
        bases = [q for q, _ in expansion]
        theta = bases[-1]
        if len(bases) == 1:
            return 0
        q2 = bases[-2]
        w_max = 2 * A * theta ** max_degree  # bound on the competing value mass
        k = 0
        lhs, rhs = 1, w_max
        while lhs <= rhs:
            k += 1
            lhs *= theta
            rhs *= q2
        return k
    kepler = sq._cached_kepler(handle)
    if kepler.kind == sq.KeplerLimit.INFINITE:
        try:
            k, cert = sq.dominance_cutoff(handle, Fraction(1, 2 * A))
        except ValueError:
            return None
        return k if cert.is_proved else None
    if kepler.kind == sq.KeplerLimit.ALGEBRAIC:
        u_raw = Fraction(1, A ** (kepler.minpoly.degree - 1))
        try:
            k, cert = sq.dominance_cutoff(handle, u_raw / (2 * A), degree=max_degree)
        except ValueError:
            return None
        return k if cert.is_proved else None
    return None


# ---------------------------------------------------------------------------
# Exact kill tests for combined operators
# ---------------------------------------------------------------------------

class _KillTester:
    """Per-variable, per-offset value vectors whose sums decide instantly
    whether a combined operator is killed by the sequence (a family),
    partially killed (only the dominant summand dies: a certification gap),
    or clean."""

    def __init__(self, handle, ops, max_offset):
        self.ops = ops
        expansion = sq.power_base_expansion(handle.spec)
        if expansion is not None:
            self.mode = "geometric"
            bases = [q for q, _ in expansion]
            self.top = len(bases) - 1
            self.vectors = [
                [tuple(polyops.peval(op.poly(), q) * q ** m for q in bases)
                 for m in range(max_offset + 1)]
                for op in ops]
            return
        kepler = sq._cached_kepler(handle)
        if (kepler.kind == sq.KeplerLimit.ALGEBRAIC
                and sq.certify(handle).recurrence_certified):
            self.mode = "algebraic"
            P = kepler.minpoly.coeffs
            k = kepler.minpoly.degree
            # X^m mod P (monic, integer coefficients) for every offset+shift
            pows = []
            cur = [1] + [0] * (k - 1)
            for _ in range(max_offset + max(op.degree for op in ops) + 1):
                pows.append(list(cur))
                carry = cur[-1]
                cur = [0] + cur[:-1]
                for i in range(k):
                    cur[i] -= carry * P[i]
            self.vectors = []
            for op in ops:
                per_offset = []
                for m in range(max_offset + 1):
                    acc = [0] * k
                    for i, a in enumerate(op.coeffs):
                        if a:
                            row = pows[m + i]
                            for t in range(k):
                                acc[t] += a * row[t]
                    per_offset.append(tuple(acc))
                self.vectors.append(per_offset)
            return
        self.mode = "marker"

    def status(self, members, offsets):
        """'killed' | 'clean' | 'partial' for sum_j S^{m_j} f_j over members."""
        if self.mode == "marker":
            base = min(offsets)
            g = op_mod.shift_combine([self.ops[j] for j in members],
                                     [m - base for m in offsets])
            return "killed" if g is op_mod.ZERO else "clean"
        acc = None
        for j, m in zip(members, offsets):
            v = self.vectors[j][m]
            acc = v if acc is None else tuple(a + b for a, b in zip(acc, v))
        if all(c == 0 for c in acc):
            return "killed"
        if self.mode == "geometric" and acc[self.top] == 0:
            return "partial"
        return "clean"


# ---------------------------------------------------------------------------
# Core solver over pairwise distinct indices
# ---------------------------------------------------------------------------

def _box_solutions(problem, top):
    """All tuples in [0, top]^s summing to z (meet-in-the-middle), plus the
    per-variable value table used to compute them."""
    s = problem.s
    vals = _value_table(problem, top)
    half = s // 2
    table = {}
    for tup in itertools.product(range(top + 1), repeat=half):
        key = sum(vals[j][tup[j]] for j in range(half))
        table.setdefault(key, []).append(tup)
    out = []
    for tup in itertools.product(range(top + 1), repeat=s - half):
        rest = problem.z - sum(vals[half + j][tup[j]] for j in range(s - half))
        for left in table.get(rest, ()):
            out.append(left + tup)
    out.sort()
    return out, vals


def _offset_patterns(s, gap):
    """Offset tuples: pairwise distinct, min 0, consecutive sorted gaps in
    [1, gap]."""
    if s == 1:
        yield (0,)
        return
    for gaps in itertools.product(range(1, gap + 1), repeat=s - 1):
        positions = [0]
        for g in gaps:
            positions.append(positions[-1] + g)
        for perm in itertools.permutations(range(s)):
            yield tuple(positions[perm[i]] for i in range(s))


def _partial_kill_present(tester, s, gap):
    for size in range(1, s + 1):
        for members in itertools.combinations(range(s), size):
            for offsets in _offset_patterns(size, gap):
                if tester.status(members, offsets) == "partial":
                    return True
    return False


def _solve_distinct(problem, memo, depth=0):
    """Patterns + sporadic + splits over pairwise distinct indices."""
    key = (tuple(op.coeffs for op in problem.operators), problem.z)
    if key in memo:
        return memo[key]
    handle = problem.handle
    ops = problem.operators
    s, z = problem.s, problem.z

    comp = _completeness_data(handle, ops, z, s)
    max_offset = (s - 1) * comp.gap
    tester = _KillTester(handle, ops, max_offset)

    # A partial kill anywhere in the block landscape breaks the uniform
    # bound; fall back to an explicitly bounded description.
    if tester.mode == "geometric" and comp.cert.is_proved:
        if _partial_kill_present(tester, s, comp.gap):
            box = max(comp.box, BOUNDED_BOX)
            comp = _Completeness(comp.gap, box, BoundedCheck(box))

    # Families: offset tuples whose combined operator the sequence kills,
    # demoted when some proper sub-block is killed too (every instance would
    # then carry a vanishing sub-sum).
    family_offsets = []
    if z == 0:
        for offsets in _offset_patterns(s, comp.gap):
            if tester.status(range(s), offsets) != "killed":
                continue
            demoted = False
            for size in range(1, s):
                for sub in itertools.combinations(range(s), size):
                    if tester.status(sub, [offsets[j] for j in sub]) == "killed":
                        demoted = True
                        break
                if demoted:
                    break
            if not demoted:
                family_offsets.append(offsets)

    solutions, vals = _box_solutions(problem, comp.box + max_offset)

    # Exceptions: anchors whose instance degenerates.  Beyond the box every
    # proper sub-sum of a family is certified nonzero (non-killed blocks obey
    # the uniform lower bound there), so the scan is exhaustive.
    patterns = []
    for offsets in sorted(family_offsets):
        exceptions = [l for l in range(comp.box + 1)
                      if _canonical_split_vals(vals, tuple(l + m for m in offsets))
                      is not None]
        patterns.append(ShiftPattern.cofinite_from(offsets, exceptions))

    # Sporadic: non-degenerate box solutions not riding a family.
    sporadic = []
    for tup in solutions:
        if len(set(tup)) != s:
            continue
        if _canonical_split_vals(vals, tup) is not None:
            continue
        if any(p.matches(tup) for p in patterns):
            continue
        sporadic.append(tup)

    # Degenerate-but-distinct: recurse on the canonical vanishing subset.
    splits = []
    certs = [comp.cert]
    if s >= 2 and depth < 6:
        for size in range(1, s):
            for sub in itertools.combinations(range(s), size):
                zero_side = _solve_distinct(
                    EquationProblem(handle, [ops[i] for i in sub], 0),
                    memo, depth + 1)
                if zero_side.is_empty():
                    continue
                comp_vars = [i for i in range(s) if i not in sub]
                target_side = _solve_distinct(
                    EquationProblem(handle, [ops[i] for i in comp_vars], z),
                    memo, depth + 1)
                if target_side.is_empty():
                    continue
                splits.append(Split(sub, zero_side, target_side))
                certs.append(zero_side.certificate)
                certs.append(target_side.certificate)

    if z != 0:
        assert not patterns, "inhomogeneous equation produced pattern families"

    result = DistinctSolutions(problem, patterns, sporadic, splits,
                               merge(certs, reason="dominance-bounds"), comp.box)
    memo[key] = result
    return result


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def solve_nondegenerate(problem):
    """Non-degenerate solutions: shift-pattern families + sporadic tuples.

    Raises TrivialOperatorPresent when an operator vanishes cofinitely:
    every tuple would carry a vanishing singleton sub-sum.  Pre-reduce, or
    use solve_full, whose casework covers such operators."""
    for op in problem.operators:
        if isinstance(op_mod.classify(op, problem.handle), op_mod.CofiniteZero):
            raise TrivialOperatorPresent(
                "operator %s vanishes cofinitely; pre-reduce it" % (op,))
    res = _solve_distinct(problem, {})
    return DistinctSolutions(problem, res.patterns, res.sporadic, [],
                             res.certificate, res.bound)


def solve_full(problem):
    """Complete solution description organized by partition casework."""
    handle = problem.handle
    memo = {}
    cases = []
    certs = []
    for classes in _set_partitions(problem.s):
        collapsed = [op_mod.shift_combine([problem.operators[i] for i in c],
                                          [0] * len(c))
                     for c in classes]
        free_pos = tuple(i for i, g in enumerate(collapsed) if g is op_mod.ZERO)
        active_pos = tuple(i for i, g in enumerate(collapsed) if g is not op_mod.ZERO)
        if not active_pos:
            if problem.z == 0:
                cases.append(CaseSolution(classes, free_pos, (), None))
            continue
        sub = EquationProblem(handle, [collapsed[i] for i in active_pos], problem.z)
        dsol = _solve_distinct(sub, memo)
        if dsol.is_empty():
            continue
        cases.append(CaseSolution(classes, free_pos, active_pos, dsol))
        certs.append(dsol.certificate)
    cert = merge(certs, reason="dominance-bounds") if certs else Proved("dominance-bounds")
    return SolutionDescription(problem, cases, cert)


def _set_partitions(s):
    """Partitions of {0..s-1} as sorted tuples of sorted tuples, classes
    ordered by minimum member; deterministic order."""
    def rec(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in rec(rest):
            yield [[first]] + [list(c) for c in part]
            for i in range(len(part)):
                yield ([list(c) for c in part[:i]] + [[first] + list(part[i])]
                       + [list(c) for c in part[i + 1:]])
    for part in rec(list(range(s))):
        yield tuple(sorted(tuple(sorted(c)) for c in part))


def _case_tuples(problem, case, n):
    """Original-variable tuples in [0, n]^s contributed by one case."""
    classes = case.partition
    if case.distinct is None:
        active_tuples = [()]
    else:
        active_tuples = case.distinct.tuples_up_to(n)
    out = []
    for act in active_tuples:
        used = set(act)
        pool = [v for v in range(n + 1) if v not in used]
        for free_vals in itertools.permutations(pool, len(case.free_positions)):
            assign = {}
            for pos, v in zip(case.active_positions, act):
                assign[pos] = v
            for pos, v in zip(case.free_positions, free_vals):
                assign[pos] = v
            tup = [None] * problem.s
            for ci, cls in enumerate(classes):
                for var in cls:
                    tup[var] = assign[ci]
            out.append(tuple(tup))
    return out


# ---------------------------------------------------------------------------
# Successor-structure interpretation
# ---------------------------------------------------------------------------

class SuccessorInterpretation:
    """A SolutionDescription rendered with equality, the within-R successor
    S, element constants, and pairwise-distinctness constraints.  evaluate()
    re-enumerates the index tuples using only this successor-level data,
    giving an independent round-trip check against the description."""

    def __init__(self, handle, s, clauses):
        self.handle = handle
        self.s = s
        self.clauses = clauses

    def render(self):
        return [cl.render(self.handle) for cl in self.clauses]

    def evaluate(self, n):
        out = set()
        for cl in self.clauses:
            out.update(cl.evaluate(n))
        return out

    def to_json(self):
        return {"clauses": self.render()}


class _SuccClause:
    """One disjunct.  bound maps variables to anchor offsets ("pattern"
    kind, the anchor ranging over R minus finitely many exceptions) or to
    fixed indices ("constant" kind); equal_pairs are x_var = x_rep copies;
    free variables range over R, distinct from everything else."""

    def __init__(self, kind, s, bound, exceptions=(), equal_pairs=(), free=()):
        self.kind = kind
        self.s = s
        self.bound = dict(bound)
        self.exceptions = tuple(exceptions)
        self.equal_pairs = tuple(equal_pairs)
        self.free = tuple(free)

    def render(self, handle):
        parts = []
        if self.kind == "constant":
            for var in sorted(self.bound):
                parts.append("x%d = %d" % (var + 1, handle.eval(self.bound[var])))
        else:
            anchor = min((v for v in self.bound if self.bound[v] == 0))
            for var in sorted(self.bound):
                if var == anchor:
                    parts.append("x%d in R" % (var + 1))
                    continue
                off = self.bound[var]
                if off == 0:
                    parts.append("x%d = x%d" % (var + 1, anchor + 1))
                else:
                    parts.append("x%d = %s" % (var + 1,
                                               _succ_chain("x%d" % (anchor + 1), off)))
            for e in self.exceptions:
                parts.append("x%d != %d" % (anchor + 1, handle.eval(e)))
        for var, rep in self.equal_pairs:
            parts.append("x%d = x%d" % (var + 1, rep + 1))
        for var in self.free:
            parts.append("x%d in R" % (var + 1))
        others = sorted(self.bound) + [rep for _, rep in self.equal_pairs]
        for i, var in enumerate(self.free):
            for other in sorted(set(others)):
                parts.append("x%d != x%d" % (var + 1, other + 1))
            for prev in self.free[:i]:
                parts.append("x%d != x%d" % (var + 1, prev + 1))
        return " & ".join(parts)

    def evaluate(self, n):
        out = set()
        if self.kind == "constant":
            anchors = [0]
        else:
            max_off = max(self.bound.values())
            anchors = [l for l in range(n - max_off + 1) if l not in self.exceptions]
        for l in anchors:
            assign = {}
            ok = True
            for var, off in self.bound.items():
                idx = off if self.kind == "constant" else l + off
                if idx > n:
                    ok = False
                    break
                assign[var] = idx
            if not ok:
                continue
            for var, rep in self.equal_pairs:
                assign[var] = assign[rep]
            used = set(assign.values())
            pool = [v for v in range(n + 1) if v not in used]
            if self.free:
                for combo in itertools.permutations(pool, len(self.free)):
                    full = dict(assign)
                    full.update(zip(self.free, combo))
                    for var, rep in self.equal_pairs:
                        full[var] = full[rep]
                    out.add(tuple(full[i] for i in range(self.s)))
            else:
                out.add(tuple(assign[i] for i in range(self.s)))
        return out


def _succ_chain(inner, k):
    for _ in range(k):
        inner = "S(%s)" % inner
    return inner


def interpret_in_successor(desc):
    """Translate a SolutionDescription into successor-language clauses.

    Index-level data becomes element-level data: an anchor ranges over R,
    offset m becomes an m-fold within-R successor chain, sporadic tuples
    become element constants, and free classes range over R under explicit
    distinctness.  Finite splits are expanded to constants; infinite splits
    have no flat successor rendering and are rejected.
    """
    problem = desc.problem
    s = problem.s
    clauses = []
    for case in desc.cases:
        classes = case.partition
        free_reps = [classes[ci][0] for ci in case.free_positions]
        equal_pairs = [(var, cls[0]) for cls in classes for var in cls[1:]]

        def rep_map(class_values):
            return {classes[ci][0]: class_values[i]
                    for i, ci in enumerate(case.active_positions)}

        if case.distinct is None:
            clauses.append(_SuccClause("constant", s, {}, equal_pairs=equal_pairs,
                                       free=free_reps))
            continue
        for p in case.distinct.patterns:
            clauses.append(_SuccClause("pattern", s, rep_map(p.offsets),
                                       exceptions=p.exceptions,
                                       equal_pairs=equal_pairs, free=free_reps))
        for t in case.distinct.sporadic:
            clauses.append(_SuccClause("constant", s, rep_map(t),
                                       equal_pairs=equal_pairs, free=free_reps))
        for sp in case.distinct.splits:
            if not sp.is_finite():
                raise ValueError("structured split has no flat successor rendering")
            top = max(max(t) for side in (sp.zero_side, sp.target_side)
                      for t in side.sporadic)
            for t in case.distinct.split_tuples(sp, top):
                clauses.append(_SuccClause("constant", s, rep_map(t),
                                           equal_pairs=equal_pairs, free=free_reps))
    return SuccessorInterpretation(problem.handle, s, clauses)
