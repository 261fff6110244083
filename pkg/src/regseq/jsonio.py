"""Canonical JSON for reports: deterministic bytes, exact numbers.

Every integer is rendered as a decimal string so arbitrary-precision values
survive any JSON reader, fractions render as "p/q", and floats are rejected
outright — all arithmetic in this package is exact and a float in a report
is a bug.  Keys are sorted and separators fixed, so equal reports produce
byte-identical output.
"""

import json
from fractions import Fraction


def canonical(obj):
    """Recursively convert a report structure to its canonical form."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return "%d/%d" % (obj.numerator, obj.denominator)
    if isinstance(obj, float):
        raise TypeError("floats are not canonical; use int or Fraction")
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError("object keys must be strings, got %r" % (k,))
            out[k] = canonical(v)
        return out
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError("cannot serialize %r" % (type(obj).__name__,))


def dumps(obj):
    """Canonical JSON text (no trailing newline)."""
    return json.dumps(canonical(obj), sort_keys=True,
                      separators=(",", ":"), ensure_ascii=True)


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
