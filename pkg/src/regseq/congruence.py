"""Eventual periodicity of (r_n mod m) and divisibility index sets.

Every supported sequence kind reduces to a finite-state machine modulo m:
a recurrence walks its window of k residues, a power base multiplies one
residue, factorial growth carries (residue, n mod m) since the step
multiplier n+3 only matters mod m, and sums run their parts' machines in
lockstep.  The finite state space forces the orbit onto a rho-shaped tail,
which a first-repeat dictionary walk finds with minimal state preperiod and
period; a residue-level minimization pass afterwards shrinks them further
when the state carries extra bookkeeping (factorial does, and sum parts with
unequal preperiods do).

Table-backed sequences have no finite state guarantee.  With a generator we
detect the period empirically and insist on a 5-period verification window;
without one the profile is refused outright (BoundedProfileError).
"""

from . import sequences as sq
from . import operators as op_mod

STREAM_BUDGET = 4096


class BoundedProfileError(ValueError):
    """No certified profile; carries the scanned residue prefix."""

    def __init__(self, message, prefix):
        self.prefix = list(prefix)
        super().__init__(message)


class CongruenceProfile:
    """(r_n mod m) is periodic with period p from preperiod rho on; the
    residues table covers n < rho + p, which determines every value."""

    def __init__(self, m, rho, p, residues):
        self.m = int(m)
        self.rho = int(rho)
        self.p = int(p)
        self.residues = tuple(int(r) for r in residues)
        assert len(self.residues) == self.rho + self.p

    def predict(self, n):
        if n < self.rho:
            return self.residues[n]
        return self.residues[self.rho + (n - self.rho) % self.p]

    def __repr__(self):
        return "CongruenceProfile(m=%d, rho=%d, p=%d)" % (self.m, self.rho, self.p)

    def to_json(self):
        return {"m": str(self.m), "preperiod": str(self.rho), "period": str(self.p),
                "residues": [str(r) for r in self.residues]}


class PeriodicIndexSet:
    """{ n : m | f(n)+k } as residue classes of n mod p past the preperiod,
    plus an explicit finite list for the indices below it."""

    def __init__(self, rho, p, classes, exceptions):
        self.rho = int(rho)
        self.p = int(p)
        self.classes = tuple(sorted(int(c) for c in classes))
        self.exceptions = tuple(sorted(int(e) for e in exceptions))

    def contains(self, n):
        if n >= self.rho:
            return (n % self.p) in self.classes
        return n in self.exceptions

    def is_empty(self):
        return not self.classes and not self.exceptions

    def smallest_members(self, count):
        out = []
        n = 0
        # classes nonempty guarantees termination; cap generously anyway
        limit = self.rho + self.p * (count + 2) + count
        while len(out) < count and n <= limit:
            if self.contains(n):
                out.append(n)
            n += 1
        return out

    def __repr__(self):
        return "PeriodicIndexSet(rho=%d, p=%d, classes=%s, exceptions=%s)" % (
            self.rho, self.p, self.classes, self.exceptions)

    def to_json(self):
        return {"preperiod": str(self.rho), "period": str(self.p),
                "classes": [str(c) for c in self.classes],
                "exceptions": [str(e) for e in self.exceptions]}


# ---------------------------------------------------------------------------
# State machines mod m
# ---------------------------------------------------------------------------

def _machine(spec, m):
    """(initial_state, step, residue_of) for the sequence modulo m, or None
    when the kind has no finite-state presentation (tables)."""
    if spec.kind == sq.KIND_POWER:
        return (1 % m,), (lambda s: ((s[0] * spec.q) % m,)), (lambda s: s[0])
    if spec.kind == sq.KIND_RECURRENCE:
        k = len(spec.coeffs)
        init = tuple(v % m for v in spec.initials)
        coeffs = spec.coeffs

        def step(s):
            nxt = sum(c * r for c, r in zip(coeffs, s)) % m
            return s[1:] + (nxt,)

        return init, step, (lambda s: s[0])
    if spec.kind == sq.KIND_FACTORIAL:
        # r_0 = 2 and r_{n+1} = (n+3) r_n; the multiplier is n+3 mod m.
        def step(s):
            res, nm = s
            return ((res * ((nm + 3) % m)) % m, (nm + 1) % m)

        return (2 % m, 0), step, (lambda s: s[0])
    if spec.kind == sq.KIND_SUM:
        subs = [_machine(p, m) for p in spec.parts]
        if any(s is None for s in subs):
            return None
        inits = tuple(s[0] for s in subs)

        def step(states):
            return tuple(sub[1](st) for sub, st in zip(subs, states))

        def residue(states):
            return sum(sub[2](st) for sub, st in zip(subs, states)) % m

        return inits, step, residue
    return None


def _minimize(residues, rho, p):
    """Shrink (rho, p) to the residue-level minimum.

    residues must cover [0, rho + 2p).  The minimal eventual period divides
    any eventual period, so only divisors of p are candidates; a candidate
    verified on [rho', rho + p) extends to all n by the known p-periodicity.
    """
    for cand in sorted(d for d in range(1, p + 1) if p % d == 0):
        if all(residues[n + cand] == residues[n] for n in range(rho, rho + p)):
            r = rho
            while r > 0 and residues[r - 1 + cand] == residues[r - 1]:
                r -= 1
            return r, cand
    return rho, p


def profile(handle, m):
    """The congruence profile of the sequence mod m (cached on the handle)."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    key = m
    if key in handle._profiles:
        return handle._profiles[key]
    spec = handle.spec
    machine = _machine(spec, m)
    if machine is not None:
        init, step, residue_of = machine
        seen = {}
        state = init
        residues = []
        n = 0
        while state not in seen:
            seen[state] = n
            residues.append(residue_of(state))
            state = step(state)
            n += 1
        rho0 = seen[state]
        p0 = n - rho0
        # ensure residues cover rho0 + 2 p0 for the minimization pass
        while len(residues) < rho0 + 2 * p0:
            residues.append(residue_of(state))
            state = step(state)
        rho, p = _minimize(residues, rho0, p0)
    else:
        residues, rho, p = _table_profile(handle, m)
    prof = CongruenceProfile(m, rho, p, residues[:rho + p])
    handle._profiles[key] = prof
    return prof


def _table_profile(handle, m):
    spec = handle.spec
    if handle._generator is None:
        prefix = [v % m for v in spec.values]
        raise BoundedProfileError(
            "table sequence without generator: no certified profile "
            "(scanned %d residues)" % len(prefix), prefix)
    budget = STREAM_BUDGET
    residues = [handle.eval(n) % m for n in range(budget)]
    for p in range(1, budget // 6 + 1):
        # tail check first (cheap reject), then extend to the minimal rho
        if all(residues[n] == residues[n + p] for n in range(budget - 4 * p, budget - p)):
            rho = budget - 4 * p
            while rho > 0 and residues[rho - 1] == residues[rho - 1 + p]:
                rho -= 1
            if all(residues[n] == residues[n + p] for n in range(rho, budget - p)) \
                    and rho + 5 * p <= budget:
                rho2, p2 = _minimize(residues, rho, p)
                return residues, rho2, p2
    raise BoundedProfileError(
        "no period detected within the stream budget", residues[:64])


def divisibility_set(handle, op, k, m):
    """{ n : m | f(n) + k } for the operator f, as a periodic index set.

    Past the profile preperiod, f(n) + k mod m is a function of n mod p
    because every tap r_{n+i} is; below it the membership is listed
    explicitly.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    prof = profile(handle, m)
    rho, p = prof.rho, prof.p

    def hit(n):
        total = sum(a * prof.predict(n + i) for i, a in enumerate(op.coeffs))
        return (total + k) % m == 0

    classes = []
    for c in range(p):
        n_c = rho + ((c - rho) % p)  # smallest n >= rho with n = c mod p
        if hit(n_c):
            classes.append(c)
    exceptions = [n for n in range(rho) if hit(n)]
    return PeriodicIndexSet(rho, p, classes, exceptions)
