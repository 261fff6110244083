"""Regular integer sequences: specs, exact evaluation, growth certification.

A *regular* sequence here is a strictly increasing sequence of positive
integers r_0 < r_1 < ... whose consecutive ratios r_{n+1}/r_n tend to a limit
theta in (1, oo].  Supported spec kinds:

* ``recurrence`` -- linear recurrence r_{n+k} = a_0 r_n + ... + a_{k-1} r_{n+k-1}
  with strictly increasing positive initial terms;
* ``power``      -- r_n = q^n for an integer base q >= 2;
* ``factorial``  -- evaluated as r_n = (n+2)!, which is strictly increasing
  from r_0 = 2 (n! itself repeats 1, 1 at the start);
* ``sum``        -- pointwise sum of sub-specs;
* ``table``      -- an explicit value table, optionally extended by a closed
  generator expression in n.  Table sequences exist as negative controls (for
  instance 2^n + n); no growth claim is certified for them beyond a scan.

All arithmetic is exact (Python bignums and Fractions).  The certification
layer provides three things the rest of the package builds on:

* ``kepler_limit``     -- the ratio limit, as an isolated algebraic root with
  a rational isolating interval whenever that is provable;
* ``dominance_cutoff`` -- an index k beyond which |r_{n+i} - theta^i r_n| stays
  below eps * r_n (or ratios exceed 1/eps when theta = oo);
* ``ratio_lower_bound`` -- a certified rho > 1 with r_{n+1} >= rho r_n for all
  n past some start index.

Certified answers carry Proved certificates; everything else is an explicit
BoundedCheck over the scanned window.
"""

import ast
from fractions import Fraction

from . import polyops
from .certs import Proved, BoundedCheck, merge

KIND_RECURRENCE = "recurrence"
KIND_POWER = "power"
KIND_FACTORIAL = "factorial"
KIND_SUM = "sum"
KIND_TABLE = "table"

# Default number of terms a ratio scan may evaluate.  Exponential sequences
# exceed thousands of bits quickly, so this is intentionally modest.
RATIO_SCAN_BUDGET = 512

# Default width for isolating intervals of algebraic ratio limits.
DEFAULT_EPS = Fraction(1, 1024)


class MonotonicityError(ValueError):
    """The evaluated prefix stopped being strictly increasing and positive."""

    def __init__(self, index, value, previous):
        self.index = index
        super().__init__(
            "sequence not strictly increasing at index %d (r_%d = %s, previous %s)"
            % (index, index, value, previous))


class TableExhausted(ValueError):
    """A table-backed sequence was asked past its data and has no generator."""


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------

class SequenceSpec:
    """Declarative description of a sequence; immutable once constructed."""

    def __init__(self, kind, coeffs=None, initials=None, q=None, parts=None,
                 values=None, generator=None):
        self.kind = kind
        self.coeffs = tuple(int(c) for c in coeffs) if coeffs is not None else None
        self.initials = tuple(int(c) for c in initials) if initials is not None else None
        self.q = int(q) if q is not None else None
        self.parts = tuple(parts) if parts is not None else None
        self.values = tuple(int(v) for v in values) if values is not None else None
        self.generator = generator
        self._validate()

    # -- constructors -------------------------------------------------------

    @staticmethod
    def recurrence(coeffs, initials):
        return SequenceSpec(KIND_RECURRENCE, coeffs=coeffs, initials=initials)

    @staticmethod
    def power(q):
        return SequenceSpec(KIND_POWER, q=q)

    @staticmethod
    def factorial():
        return SequenceSpec(KIND_FACTORIAL)

    @staticmethod
    def sum_of(parts):
        return SequenceSpec(KIND_SUM, parts=list(parts))

    @staticmethod
    def table(values, generator=None):
        return SequenceSpec(KIND_TABLE, values=values, generator=generator)

    def _validate(self):
        if self.kind == KIND_RECURRENCE:
            if not self.coeffs or not self.initials:
                raise ValueError("recurrence needs coeffs and initials")
            if len(self.coeffs) != len(self.initials):
                raise ValueError("coeffs and initials must have equal length")
            prev = 0
            for i, v in enumerate(self.initials):
                if v <= prev:
                    raise MonotonicityError(i, v, prev)
                prev = v
        elif self.kind == KIND_POWER:
            if self.q is None or self.q < 2:
                raise ValueError("power base must be an integer >= 2")
        elif self.kind == KIND_FACTORIAL:
            pass
        elif self.kind == KIND_SUM:
            if not self.parts:
                raise ValueError("sum needs at least one part")
            for p in self.parts:
                if not isinstance(p, SequenceSpec):
                    raise ValueError("sum parts must be SequenceSpec")
        elif self.kind == KIND_TABLE:
            if not self.values and not self.generator:
                raise ValueError("table needs values or a generator")
            if self.generator is not None:
                _compile_generator(self.generator)  # fail early on bad syntax
        else:
            raise ValueError("unknown sequence kind %r" % (self.kind,))

    def key(self):
        """Canonical hashable identity of the spec."""
        if self.kind == KIND_SUM:
            return (self.kind, tuple(p.key() for p in self.parts))
        return (self.kind, self.coeffs, self.initials, self.q, self.values,
                self.generator)

    def __eq__(self, other):
        return isinstance(other, SequenceSpec) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == KIND_POWER:
            return "SequenceSpec(power %d)" % self.q
        if self.kind == KIND_RECURRENCE:
            return "SequenceSpec(recurrence %s / %s)" % (self.coeffs, self.initials)
        if self.kind == KIND_SUM:
            return "SequenceSpec(sum of %d parts)" % len(self.parts)
        return "SequenceSpec(%s)" % self.kind

    # -- JSON ----------------------------------------------------------------

    def to_json(self):
        if self.kind == KIND_RECURRENCE:
            return {"kind": self.kind,
                    "coeffs": [str(c) for c in self.coeffs],
                    "initials": [str(c) for c in self.initials]}
        if self.kind == KIND_POWER:
            return {"kind": self.kind, "q": str(self.q)}
        if self.kind == KIND_FACTORIAL:
            return {"kind": self.kind}
        if self.kind == KIND_SUM:
            return {"kind": self.kind, "parts": [p.to_json() for p in self.parts]}
        out = {"kind": self.kind, "values": [str(v) for v in self.values or ()]}
        if self.generator is not None:
            out["generator"] = self.generator
        return out

    @staticmethod
    def from_json(obj):
        kind = obj.get("kind")
        if kind == KIND_RECURRENCE:
            return SequenceSpec.recurrence([int(c) for c in obj["coeffs"]],
                                           [int(c) for c in obj["initials"]])
        if kind == KIND_POWER:
            return SequenceSpec.power(int(obj["q"]))
        if kind == KIND_FACTORIAL:
            return SequenceSpec.factorial()
        if kind == KIND_SUM:
            return SequenceSpec.sum_of([SequenceSpec.from_json(p) for p in obj["parts"]])
        if kind == KIND_TABLE:
            return SequenceSpec.table([int(v) for v in obj.get("values", [])],
                                      obj.get("generator"))
        raise ValueError("unknown sequence kind %r" % (kind,))


# Generator expressions for table sequences go through an AST whitelist:
# integer literals, the variable n, + - * ** // %, and parentheses.

_ALLOWED_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.FloorDiv, ast.Mod}


def _compile_generator(text):
    tree = ast.parse(text, mode="eval")

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BinOp):
            if type(node.op) not in _ALLOWED_BINOPS:
                raise ValueError("generator operator not allowed: %s"
                                 % type(node.op).__name__)
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp):
            if not isinstance(node.op, (ast.UAdd, ast.USub)):
                raise ValueError("generator unary operator not allowed")
            check(node.operand)
        elif isinstance(node, ast.Constant):
            if not isinstance(node.value, int):
                raise ValueError("generator constants must be integers")
        elif isinstance(node, ast.Name):
            if node.id != "n":
                raise ValueError("generator may only use the variable n")
        else:
            raise ValueError("generator syntax not allowed: %s"
                             % type(node).__name__)

    check(tree)

    def run(n):
        return _eval_node(tree.body, n)

    return run


def _eval_node(node, n):
    if isinstance(node, ast.BinOp):
        a = _eval_node(node.left, n)
        b = _eval_node(node.right, n)
        op = type(node.op)
        if op is ast.Add:
            return a + b
        if op is ast.Sub:
            return a - b
        if op is ast.Mult:
            return a * b
        if op is ast.Pow:
            return a ** b
        if op is ast.FloorDiv:
            return a // b
        return a % b
    if isinstance(node, ast.UnaryOp):
        v = _eval_node(node.operand, n)
        return v if isinstance(node.op, ast.UAdd) else -v
    if isinstance(node, ast.Constant):
        return node.value
    return n  # ast.Name "n"


# ---------------------------------------------------------------------------
# Handles and evaluation
# ---------------------------------------------------------------------------

class SequenceHandle:
    """Memoized exact evaluator for a spec.

    The cache is append-only and every freshly computed value is checked to be
    strictly larger than its predecessor (and positive); a violation raises
    MonotonicityError naming the index, per the regularity contract.
    """

    def __init__(self, spec):
        self.spec = spec
        self.cache = []
        self.regularity_report = None
        self.parts = [SequenceHandle(p) for p in spec.parts] if spec.kind == KIND_SUM else None
        self._generator = (_compile_generator(spec.generator)
                           if spec.kind == KIND_TABLE and spec.generator else None)
        self._kepler = None
        self._contraction = None  # False = tried and failed
        self._profiles = {}

    def eval(self, n):
        if n < 0:
            raise ValueError("index must be a natural number")
        while len(self.cache) <= n:
            self._extend()
        return self.cache[n]

    def values(self, upto):
        """The prefix [r_0, ..., r_upto] as a list."""
        self.eval(upto)
        return self.cache[:upto + 1]

    def _extend(self):
        n = len(self.cache)
        v = self._raw(n)
        prev = self.cache[-1] if self.cache else 0
        if v <= prev:
            raise MonotonicityError(n, v, prev)
        self.cache.append(v)

    def _raw(self, n):
        s = self.spec
        if s.kind == KIND_POWER:
            return s.q ** n
        if s.kind == KIND_FACTORIAL:
            if n == 0:
                return 2
            return self.cache[n - 1] * (n + 2)
        if s.kind == KIND_RECURRENCE:
            k = len(s.coeffs)
            if n < k:
                return s.initials[n]
            return sum(s.coeffs[i] * self.cache[n - k + i] for i in range(k))
        if s.kind == KIND_SUM:
            return sum(p.eval(n) for p in self.parts)
        # table
        if n < len(s.values):
            return s.values[n]
        if self._generator is None:
            raise TableExhausted(
                "table sequence has %d values and no generator (asked for r_%d)"
                % (len(s.values), n))
        return self._generator(n)

    def ratio(self, n):
        return Fraction(self.eval(n + 1), self.eval(n))


def make_handle(spec):
    return SequenceHandle(spec)


def evaluate(handle, n):
    """Module-level spelling of handle.eval, for symmetry with the CLI."""
    return handle.eval(n)


# ---------------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------------

class CharPoly:
    """Monic integer polynomial X^k - sum a_i X^i, ascending coefficients."""

    def __init__(self, coeffs):
        cs = polyops.trim([int(c) for c in coeffs])
        if not cs or cs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")
        if len(cs) < 2:
            raise ValueError("characteristic polynomial must have degree >= 1")
        self.coeffs = cs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def recurrence_coeffs(self):
        """The a_i with r_{n+k} = sum a_i r_{n+i}."""
        return [-c for c in self.coeffs[:-1]]

    def __eq__(self, other):
        return isinstance(other, CharPoly) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return "CharPoly(%s)" % (self.coeffs,)

    def render(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "X^%d" % i if i > 1 else ("X" if i == 1 else "1")
            if i == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = "%d%s" % (abs(c), mono)
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs]}


def char_poly(spec):
    """Characteristic polynomial of the spec, or None when there is none
    (factorial growth, bare tables)."""
    if isinstance(spec, SequenceHandle):
        spec = spec.spec
    if spec.kind == KIND_RECURRENCE:
        return CharPoly([-c for c in spec.coeffs] + [1])
    if spec.kind == KIND_POWER:
        return CharPoly([-spec.q, 1])
    if spec.kind == KIND_SUM:
        acc = None
        for p in spec.parts:
            cp = char_poly(p)
            if cp is None:
                return None
            acc = cp.coeffs if acc is None else polyops.lcm(acc, cp.coeffs)
        return CharPoly(acc)
    return None


def power_base_expansion(spec):
    """When the sequence is exactly a sum of geometric terms, return the list
    of (base, multiplicity) pairs with distinct bases, sorted by base;
    otherwise None.  Covers power specs, order-1 recurrences (c * a^n) and
    sums of such."""
    if isinstance(spec, SequenceHandle):
        spec = spec.spec
    if spec.kind == KIND_POWER:
        return [(spec.q, 1)]
    if spec.kind == KIND_RECURRENCE and len(spec.coeffs) == 1:
        return [(spec.coeffs[0], spec.initials[0])]
    if spec.kind == KIND_SUM:
        bases = {}
        for p in spec.parts:
            sub = power_base_expansion(p)
            if sub is None:
                return None
            for q, c in sub:
                bases[q] = bases.get(q, 0) + c
        return sorted(bases.items())
    return None


# ---------------------------------------------------------------------------
# Kepler limits
# ---------------------------------------------------------------------------

class KeplerLimit:
    """Limit of consecutive ratios: Infinite, an isolated algebraic root, or
    an empirical interval from a bounded ratio scan."""

    INFINITE = "infinite"
    ALGEBRAIC = "algebraic"
    EMPIRICAL = "empirical"

    def __init__(self, kind, minpoly=None, interval=None, lo=None, hi=None,
                 checked_up_to=None, warning=False):
        self.kind = kind
        self.minpoly = minpoly
        self.interval = interval
        self.lo = lo
        self.hi = hi
        self.checked_up_to = checked_up_to
        self.warning = warning

    @staticmethod
    def infinite():
        return KeplerLimit(KeplerLimit.INFINITE)

    @staticmethod
    def algebraic(minpoly, interval):
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        return KeplerLimit(KeplerLimit.ALGEBRAIC, minpoly=minpoly, interval=(lo, hi))

    @staticmethod
    def empirical(lo, hi, checked_up_to, warning=False):
        return KeplerLimit(KeplerLimit.EMPIRICAL, lo=Fraction(lo), hi=Fraction(hi),
                           checked_up_to=checked_up_to, warning=warning)

    @property
    def is_infinite(self):
        return self.kind == KeplerLimit.INFINITE

    @property
    def is_algebraic(self):
        return self.kind == KeplerLimit.ALGEBRAIC

    def theta_interval(self):
        if self.is_algebraic:
            return self.interval
        if self.kind == KeplerLimit.EMPIRICAL:
            return (self.lo, self.hi)
        raise ValueError("infinite limit has no interval")

    def __repr__(self):
        if self.is_infinite:
            return "KeplerLimit(infinite)"
        if self.is_algebraic:
            return "KeplerLimit(algebraic %s in [%s, %s])" % (
                self.minpoly.render(), self.interval[0], self.interval[1])
        return "KeplerLimit(empirical [%s, %s] up to %s%s)" % (
            self.lo, self.hi, self.checked_up_to, ", warning" if self.warning else "")

    def to_json(self):
        if self.is_infinite:
            return {"kind": "infinite"}
        if self.is_algebraic:
            return {"kind": "algebraic",
                    "minpoly": self.minpoly.to_json(),
                    "interval": [_frac_str(self.interval[0]), _frac_str(self.interval[1])]}
        return {"kind": "empirical", "lo": _frac_str(self.lo), "hi": _frac_str(self.hi),
                "checked_up_to": str(self.checked_up_to),
                "warning": bool(self.warning)}


def _frac_str(f):
    f = Fraction(f)
    return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else str(f.numerator)


class RegularityReport:
    def __init__(self, kepler, recurrence_certified, notes):
        self.kepler = kepler
        self.recurrence_certified = recurrence_certified
        self.notes = notes

    def to_json(self):
        return {"kepler": self.kepler.to_json(),
                "recurrence_certified": bool(self.recurrence_certified),
                "notes": self.notes}


def kepler_limit(handle, eps=DEFAULT_EPS, scan_budget=RATIO_SCAN_BUDGET):
    """The ratio limit with the strongest certification available.

    Factorial growth is Infinite outright.  Power bases are exact (degenerate
    interval).  Irreducible recurrences get the largest real root of the
    characteristic polynomial isolated by Sturm bisection, cross-checked
    against an actual ratio scan -- if the scan disagrees the result degrades
    to an empirical interval rather than fabricating an algebraic claim.
    Sums take the maximum of their parts' limits.
    """
    eps = Fraction(eps)
    spec = handle.spec
    if spec.kind == KIND_FACTORIAL:
        return KeplerLimit.infinite()
    if spec.kind == KIND_POWER:
        q = Fraction(spec.q)
        return KeplerLimit.algebraic(CharPoly([-spec.q, 1]), (q, q))
    if spec.kind == KIND_RECURRENCE:
        return _kepler_recurrence(handle, eps, scan_budget)
    if spec.kind == KIND_SUM:
        limits = [kepler_limit(p, eps, scan_budget) for p in handle.parts]
        if any(l.is_infinite for l in limits):
            return KeplerLimit.infinite()
        if all(l.is_algebraic for l in limits):
            best = limits[0]
            for other in limits[1:]:
                best = _max_algebraic(best, other)
            return best
        return _empirical_scan(handle, scan_budget)
    return _empirical_scan(handle, scan_budget)


def _kepler_recurrence(handle, eps, scan_budget):
    spec = handle.spec
    if len(spec.coeffs) == 1:
        q = spec.coeffs[0]
        if q >= 2:
            return KeplerLimit.algebraic(CharPoly([-q, 1]), (Fraction(q), Fraction(q)))
        return _empirical_scan(handle, scan_budget)
    cp = char_poly(spec)
    if polyops.is_irreducible(cp.coeffs):
        iso = polyops.isolate_largest_root_above(cp.coeffs, 1, eps)
        if iso is not None and iso[0] > 1:
            # Sanity: the actual ratios must settle into the claimed interval.
            lo, hi = iso
            ok = True
            top = min(100, max(scan_budget, 20))
            for n in range(10, top):
                r = handle.ratio(n)
                if not (lo - eps < r < hi + eps):
                    ok = False
                    break
            if ok:
                return KeplerLimit.algebraic(cp, iso)
    return _empirical_scan(handle, scan_budget)


def _empirical_scan(handle, scan_budget):
    """Ratio scan fallback: report the spread of the last quarter of the
    window, flagging non-convergence when the spread stopped shrinking."""
    n_terms = scan_budget
    if handle.spec.kind == KIND_TABLE and handle._generator is None:
        n_terms = min(n_terms, len(handle.spec.values) - 1)
    n_terms = max(n_terms, 4)
    ratios = []
    for n in range(n_terms):
        try:
            ratios.append(handle.ratio(n))
        except (TableExhausted, MonotonicityError):
            break
    if len(ratios) < 2:
        raise ValueError("not enough terms for a ratio scan")
    q = max(2, len(ratios) // 4)
    tail = ratios[-q:]
    prev = ratios[-2 * q:-q] if len(ratios) >= 2 * q else ratios[:q]
    spread = max(tail) - min(tail)
    prev_spread = max(prev) - min(prev)
    warning = spread > 0 and spread >= prev_spread
    return KeplerLimit.empirical(min(tail), max(tail), len(ratios), warning)


def _max_algebraic(a, b):
    """The larger of two isolated algebraic numbers, refining intervals until
    they separate (equal minpolys with overlapping intervals mean equality)."""
    for _ in range(128):
        alo, ahi = a.interval
        blo, bhi = b.interval
        if ahi < blo:
            return b
        if bhi < alo:
            return a
        if a.minpoly == b.minpoly:
            return a
        a = KeplerLimit.algebraic(a.minpoly, _refine(a.minpoly, a.interval))
        b = KeplerLimit.algebraic(b.minpoly, _refine(b.minpoly, b.interval))
    raise ValueError("could not separate algebraic ratio limits")


def _refine(minpoly, interval):
    lo, hi = interval
    if lo == hi:
        return interval
    return polyops.refine_root_interval(minpoly.coeffs, lo, hi, (hi - lo) / 4)


def certify(handle, eps=DEFAULT_EPS, scan_budget=RATIO_SCAN_BUDGET):
    """Compute (and cache on the handle) the regularity report."""
    if handle.regularity_report is not None:
        return handle.regularity_report
    kepler = _cached_kepler(handle, eps, scan_budget)
    notes = []
    if handle.spec.kind == KIND_FACTORIAL:
        notes.append("factorial evaluated as r_n = (n+2)!")
    certified = False
    if kepler.is_algebraic:
        cp = char_poly(handle.spec)
        certified = cp is not None and cp == kepler.minpoly and polyops.is_irreducible(cp.coeffs)
    if kepler.kind == KeplerLimit.EMPIRICAL and kepler.warning:
        notes.append("ratio scan did not show a shrinking spread")
    report = RegularityReport(kepler, certified, "; ".join(notes))
    handle.regularity_report = report
    return report


def _cached_kepler(handle, eps=DEFAULT_EPS, scan_budget=RATIO_SCAN_BUDGET):
    if handle._kepler is None:
        handle._kepler = kepler_limit(handle, eps, scan_budget)
    return handle._kepler


# ---------------------------------------------------------------------------
# Contraction data for algebraic recurrences
# ---------------------------------------------------------------------------

class _Contraction:
    """Certified decay of the defect e_n = r_{n+1} - theta r_n.

    For an order-k recurrence with irreducible characteristic polynomial P and
    isolated root theta, e satisfies the order-(k-1) recurrence given by
    Q = P / (X - theta).  When kappa = sum of |q_i| over the non-leading
    quotient coefficients is certified < 1 by interval arithmetic, the window
    maximum W_n = max(|e_n|, ..., |e_{n+k-2}|) is non-increasing and shrinks
    by a factor kappa every k-1 steps.  That turns one verified inequality
    into a statement about every larger index -- the effective form of
    "for n big enough" used throughout.
    """

    def __init__(self, theta_iv, kappa, w0, step):
        self.theta_iv = theta_iv  # refined isolating interval of theta
        self.kappa = kappa        # certified upper bound < 1
        self.w0 = w0              # upper bound on the initial window max
        self.step = step          # k - 1

    def defect_bound(self, n):
        """Upper bound on |e_n| = |r_{n+1} - theta r_n|."""
        m = max(0, n - (self.step - 1))
        return self.w0 * self.kappa ** (m // self.step)


def _contraction_data(handle):
    """Build (and cache) contraction data, or None when not certifiable."""
    if handle._contraction is not None:
        return handle._contraction if handle._contraction is not False else None
    data = _try_contraction(handle)
    handle._contraction = data if data is not None else False
    return data


def _try_contraction(handle):
    kepler = _cached_kepler(handle)
    if not kepler.is_algebraic or handle.spec.kind != KIND_RECURRENCE:
        return None
    cp = char_poly(handle.spec)
    if cp is None or cp != kepler.minpoly or cp.degree < 2:
        return None
    iv = kepler.interval
    for _ in range(80):
        quot = polyops.synthetic_quotient_intervals(cp.coeffs, iv)
        kappa = sum(polyops.iabs_hi(c) for c in quot[:-1])
        if kappa < 1:
            k = cp.degree
            w0 = Fraction(0)
            for t in range(k - 1):
                e_iv = polyops.iadd(polyops.ival(handle.eval(t + 1)),
                                    polyops.ineg(polyops.iscale(iv, handle.eval(t))))
                w0 = max(w0, polyops.iabs_hi(e_iv))
            return _Contraction(iv, kappa, w0, k - 1)
        if iv[0] == iv[1]:
            return None
        iv = polyops.refine_root_interval(cp.coeffs, iv[0], iv[1], (iv[1] - iv[0]) / 4)
    return None


# ---------------------------------------------------------------------------
# Dominance cutoffs
# ---------------------------------------------------------------------------

def dominance_cutoff(handle, eps, mode="proved", degree=1, budget=RATIO_SCAN_BUDGET):
    """Smallest certified k with, for all n >= k and 1 <= i <= degree,

        |r_{n+i} - theta^i r_n| < eps * r_n       (theta finite), or
        r_{n+1} / r_n > 1 / eps                   (theta infinite).

    Returns (k, certificate).  Proved certificates come from exact ratio
    formulas (powers, factorial, geometric sums) or from the contraction
    argument; otherwise the inequality is verified on [k, budget] only and
    the certificate is a BoundedCheck.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    kepler = _cached_kepler(handle)
    spec = handle.spec

    if kepler.is_infinite:
        if spec.kind == KIND_FACTORIAL:
            # ratio r_{n+1}/r_n = n+3, exactly and strictly increasing
            k = 0
            while Fraction(k + 3) <= 1 / eps:
                k += 1
            return k, Proved("exact-ratio")
        return _scan_ratio_cutoff(handle, 1 / eps, budget)

    expansion = power_base_expansion(spec)
    if expansion is not None:
        return _dominance_geometric(handle, expansion, eps, degree)

    if kepler.is_algebraic and mode != "bounded":
        data = _contraction_data(handle)
        if data is not None:
            return _dominance_contraction(handle, data, eps, degree, budget)

    return _scan_dominance_cutoff(handle, kepler, eps, degree, budget)


def _dominance_geometric(handle, expansion, eps, degree):
    """Exact route for r_n = sum c_j q_j^n: the non-dominant bases decay
    geometrically against the top one, so the cutoff is a plain power scan."""
    if len(expansion) == 1:
        return 0, Proved("exact-ratio")
    bases = [q for q, _ in expansion]
    theta = bases[-1]
    q2 = bases[-2]
    mass = sum(c for q, c in expansion[:-1])
    # |r_{n+i} - theta^i r_n| <= sum_{j<J} c_j q_j^n (theta^i - q_j^i)
    #                        <= mass * theta^degree * q2^n,
    # and r_n >= theta^n; enough that mass * theta^degree * q2^n < eps theta^n.
    target = Fraction(mass * theta ** degree) / eps
    k = 0
    lhs, rhs = 1, 1  # (theta/q2)^k as exact integer pair theta^k / q2^k
    while Fraction(lhs, rhs) <= target:
        k += 1
        lhs *= theta
        rhs *= q2
    return k, Proved("exact-geometric")


def _dominance_contraction(handle, data, eps, degree, budget):
    hi = data.theta_iv[1]
    factor = degree * max(Fraction(1), hi) ** (degree - 1)
    n = 0
    while n <= max(budget, 64):
        if factor * data.defect_bound(n) < eps * handle.eval(n):
            return n, Proved("contraction")
        n += 1
    return _scan_dominance_cutoff(handle, _cached_kepler(handle), eps, degree, budget)


def _scan_ratio_cutoff(handle, threshold, budget):
    """Bounded fallback for infinite limits: first k with every scanned ratio
    beyond k above the threshold."""
    last_bad = -1
    for n in range(budget):
        try:
            if handle.ratio(n) <= threshold:
                last_bad = n
        except (TableExhausted, MonotonicityError):
            budget = n
            break
    if last_bad + 1 >= budget:
        raise ValueError("budget exhausted at %d without establishing the ratio bound"
                         % budget)
    return last_bad + 1, BoundedCheck(budget)


def _scan_dominance_cutoff(handle, kepler, eps, degree, budget):
    if kepler.is_infinite:
        raise ValueError("scan cutoff needs a finite ratio interval")
    lo, hi = kepler.theta_interval()
    iv = (Fraction(lo), Fraction(hi))
    last_bad = -1
    top = budget
    for n in range(top):
        try:
            rn = handle.eval(n)
            bad = False
            for i in range(1, degree + 1):
                diff = polyops.iadd(polyops.ival(handle.eval(n + i)),
                                    polyops.ineg(polyops.iscale(polyops.ipow(iv, i), rn)))
                if polyops.iabs_hi(diff) >= eps * rn:
                    bad = True
                    break
            if bad:
                last_bad = n
        except (TableExhausted, MonotonicityError):
            top = n
            break
    if last_bad + 1 >= top:
        raise ValueError("budget exhausted at %d without establishing dominance" % top)
    return last_bad + 1, BoundedCheck(top)


# ---------------------------------------------------------------------------
# Certified ratio lower bounds
# ---------------------------------------------------------------------------

def ratio_lower_bound(handle, budget=RATIO_SCAN_BUDGET):
    """A certified (rho, n0, certificate) with r_{n+1} >= rho r_n for all
    n >= n0 and rho > 1.  Proved for exact-ratio kinds and contracting
    recurrences; BoundedCheck (window only) otherwise."""
    spec = handle.spec
    if spec.kind == KIND_POWER:
        return Fraction(spec.q), 0, Proved("exact-ratio")
    if spec.kind == KIND_FACTORIAL:
        return Fraction(3), 0, Proved("exact-ratio")
    expansion = power_base_expansion(spec)
    if expansion is not None:
        return Fraction(expansion[0][0]), 0, Proved("exact-geometric")
    if spec.kind == KIND_SUM:
        parts = [ratio_lower_bound(p, budget) for p in handle.parts]
        rho = min(p[0] for p in parts)
        n0 = max(p[1] for p in parts)
        if rho > 1:
            return rho, n0, merge([p[2] for p in parts], reason="exact-geometric")
    kepler = _cached_kepler(handle)
    if kepler.is_algebraic:
        data = _contraction_data(handle)
        if data is not None:
            lo = data.theta_iv[0]
            rho = 1 + (lo - 1) * Fraction(3, 4)
            margin = lo - rho  # = (lo-1)/4 > 0
            n = 0
            while n <= max(budget, 64):
                if data.defect_bound(n) < margin * handle.eval(n):
                    return rho, n, Proved("contraction")
                n += 1
    # Bounded scan: the smallest ratio over the window.
    rho = None
    top = budget
    for n in range(budget):
        try:
            r = handle.ratio(n)
        except (TableExhausted, MonotonicityError):
            top = n
            break
        rho = r if rho is None else min(rho, r)
    if rho is None or rho <= 1:
        raise ValueError("no ratio lower bound above 1 found in the window")
    return rho, 0, BoundedCheck(top)
