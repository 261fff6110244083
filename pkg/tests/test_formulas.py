"""Parser, normal form, and ground evaluation of the decision language.

The soundness property pits eval_ground (which normalizes first) against a
reference evaluator defined right here on the raw parse tree, over the
integer-sorted bounded fragment where both semantics are total.  Comparison
atoms in random formulas keep a bare variable on the left because the
greater-than expansion presumes a value that is never negative, which bounded
integer variables guarantee.
"""

import random

import pytest

from regseq import formulas as F
from regseq.sequences import SequenceSpec, make_handle

POW2 = make_handle(SequenceSpec.power(2))
FIB = make_handle(SequenceSpec.recurrence([1, 1], [1, 2]))


# ---------------------------------------------------------------------------
# Reference semantics on the raw AST (integer-sorted bounded fragment)
# ---------------------------------------------------------------------------

def raw_term(node, env):
    if isinstance(node, F.TConst):
        return node.value
    if isinstance(node, F.TVar):
        return env[node.name]
    if isinstance(node, F.TNeg):
        return -raw_term(node.arg, env)
    if isinstance(node, F.TAdd):
        return raw_term(node.left, env) + raw_term(node.right, env)
    if isinstance(node, F.TSub):
        return raw_term(node.left, env) - raw_term(node.right, env)
    if isinstance(node, F.TScale):
        return node.factor * raw_term(node.arg, env)
    raise AssertionError("term kind outside the reference fragment")


def raw_eval(node, handle, env):
    if isinstance(node, F.And):
        return all(raw_eval(x, handle, env) for x in node.items)
    if isinstance(node, F.Or):
        return any(raw_eval(x, handle, env) for x in node.items)
    if isinstance(node, F.Not):
        return not raw_eval(node.body, handle, env)
    if isinstance(node, F.Eq):
        return raw_term(node.left, env) == raw_term(node.right, env)
    if isinstance(node, F.Neq):
        return raw_term(node.left, env) != raw_term(node.right, env)
    if isinstance(node, F.Gt):
        return raw_term(node.left, env) > raw_term(node.right, env)
    if isinstance(node, F.DivAtom):
        return raw_term(node.term, env) % node.m == 0
    if isinstance(node, F.InR):
        value = raw_term(node.term, env)
        n = 0
        while handle.eval(n) < value:
            n += 1
        return handle.eval(n) == value
    if isinstance(node, F.ExistsBounded):
        return any(raw_eval(node.body, handle, dict(env, **{node.var: v}))
                   for v in range(node.bound + 1))
    raise AssertionError("node kind outside the reference fragment")


# ---------------------------------------------------------------------------
# Canonical shape of normalized formulas (swaps repr for deep comparison)
# ---------------------------------------------------------------------------

def canon(node):
    if isinstance(node, F.And):
        return ("and",) + tuple(canon(x) for x in node.items)
    if isinstance(node, F.Or):
        return ("or",) + tuple(canon(x) for x in node.items)
    if isinstance(node, F.NotExists):
        return ("notexists", canon(node.body))
    if isinstance(node, F.ExistsInR):
        return ("existsR", node.var, canon(node.body))
    if isinstance(node, F.ExistsBounded):
        return ("existsB", node.var, node.bound, canon(node.body))
    return node.render()


# ---------------------------------------------------------------------------
# Parsing and sorts
# ---------------------------------------------------------------------------

def test_parse_quantifiers_and_atoms():
    ast = F.parse("E x in R. D3(x + 2) & x > 1")
    assert isinstance(ast, F.ExistsInR)
    ast = F.parse("E k <= 9. k = 4")
    assert isinstance(ast, F.ExistsBounded) and ast.bound == 9
    ast = F.parse("A x in R. x > 0")
    assert isinstance(ast, F.ForallInR)


def test_connective_precedence():
    # ! binds tighter than &, and & tighter than |
    text = "E k <= 3. !k = 1 & k = 2 | k = 3"
    assert F.eval_ground(F.parse(text), POW2)
    narrowed = "E k <= 2. !k = 1 & k = 2 | k = 3"
    assert F.eval_ground(F.parse(narrowed), POW2)
    none = "E k <= 1. !k = 1 & k = 2 | k = 3"
    assert not F.eval_ground(F.parse(none), POW2)


def test_sort_errors():
    # shifting an integer-sorted variable is caught when the bounded
    # quantifier substitutes a value into the shifted occurrence
    with pytest.raises(F.SortError):
        F.eval_ground(F.parse("E k <= 5. S(k) = 2"), POW2)
    with pytest.raises(F.SortError):
        F.normalize(F.parse("E x in R. f[1,1](3) = 2"))
    # scaling and shifting an R variable is fine
    F.normalize(F.parse("E x in R. 2*S(x) = 4"))


def test_successor_folds_into_operator_coefficients():
    norm = F.normalize(F.parse("E x in R. f[5](S(S(x))) = 0"))
    atom = norm.body
    assert isinstance(atom, F.EqZ)
    assert atom.lin.ops == {"x": (0, 0, 5)}
    assert atom.lin.const == 0


def test_negated_divisibility_expands_to_residue_disjunction():
    norm = F.normalize(F.parse("E x in R. !D3(x + 1)"))
    body = norm.body
    assert isinstance(body, F.Or) and len(body.items) == 2
    assert all(isinstance(x, F.DivZ) for x in body.items)


def test_ground_greater_than_expansion():
    assert F.eval_ground(F.parse("E k <= 8. k > 6"), POW2)
    assert not F.eval_ground(F.parse("E k <= 5. k > 6"), POW2)
    # negative right side is vacuously true for bounded variables
    assert F.eval_ground(F.parse("E k <= 0. k > 0 - 3"), POW2)


def test_normalize_universal_as_dual():
    norm = F.normalize(F.parse("A x in R. x != 7"))
    assert isinstance(norm, F.NotExists)
    inner = norm.body
    assert isinstance(inner, F.ExistsInR)
    assert isinstance(inner.body, F.EqZ)


def test_normalize_is_idempotent_on_fixtures():
    texts = ["E x in R. D3(x + 2) & x > 1",
             "A x in R. x != 7 | D2(x)",
             "E k <= 6. !(k = 2 | D3(k + 1))",
             "E x in R. E y in R. x + y = 12"]
    for text in texts:
        once = F.normalize(F.parse(text))
        twice = F.normalize(once)
        assert canon(once) == canon(twice), text


def test_eval_ground_spec_examples():
    assert not F.eval_ground(F.parse("E x in R. E y in R. x + y = 7"), POW2)
    assert F.eval_ground(F.parse("E x in R. E y in R. x + y = 12"), POW2)
    assert F.eval_ground(F.parse("E x in R. D3(x + 2) & x > 1"), POW2)
    assert F.eval_ground(F.parse("E x in R. S(S(x)) = 8"), POW2)
    assert not F.eval_ground(F.parse("E x in R. S(x) = 3"), POW2)


def test_sigma_atom_membership():
    text = "Sigma{D=[(y1 + y2)]}(12)"
    assert F.eval_ground(F.parse(text), POW2)
    text = "Sigma{D=[(y1 + y2)]}(7)"
    assert not F.eval_ground(F.parse(text), POW2)
    # a congruence side condition filters the witnesses: y1 even-indexed
    text = "Sigma{C=[D3(y1 + 1)],D=[(y1 + y2)]}(3)"
    assert F.eval_ground(F.parse(text), POW2)  # y1 = r_1 = 2 (2+1 divisible by 3), y2 = 1


def test_free_variables_reported():
    norm = F.normalize(F.parse("E x in R. x + z = 9"))
    assert "z" in F.free_variables(norm)
    closed = F.normalize(F.parse("E x in R. x = 9"))
    assert not F.free_variables(closed)


def test_parse_errors():
    for bad in ["E x in R. (x = 1", "E x in R. x + = 2", "x =",
                "E k <= 3. 3 k = 3"]:
        with pytest.raises(F.FormulaSyntaxError):
            F.parse(bad)


# ---------------------------------------------------------------------------
# Randomized soundness of normalization
# ---------------------------------------------------------------------------

def random_sentence(rng):
    """A closed formula in the bounded integer fragment, as text."""
    vars_in_scope = []

    def term(depth):
        choices = ["const", "var", "add", "sub", "scale"]
        if depth <= 0 or not vars_in_scope:
            choices = ["const", "var"] if vars_in_scope else ["const"]
        kind = rng.choice(choices)
        if kind == "const":
            return str(rng.randint(0, 9))
        if kind == "var":
            return rng.choice(vars_in_scope)
        if kind == "add":
            return "(%s + %s)" % (term(depth - 1), term(depth - 1))
        if kind == "sub":
            return "(%s - %s)" % (term(depth - 1), term(depth - 1))
        return "%d*%s" % (rng.randint(2, 4), term(depth - 1))

    def atom():
        kind = rng.choice(["eq", "neq", "gt", "div", "inr"])
        if kind == "eq":
            return "%s = %s" % (term(1), term(1))
        if kind == "neq":
            return "%s != %s" % (term(1), term(1))
        if kind == "gt" and vars_in_scope:
            return "%s > %d" % (rng.choice(vars_in_scope), rng.randint(0, 6))
        if kind == "div":
            return "D%d(%s)" % (rng.randint(2, 5), term(1))
        return "%s in R" % term(1)

    def body(depth):
        if depth <= 0:
            return atom()
        kind = rng.choice(["atom", "atom", "and", "or", "not"])
        if kind == "atom":
            return atom()
        if kind == "not":
            return "!(%s)" % body(depth - 1)
        join = " & " if kind == "and" else " | "
        return "(%s)" % join.join(body(depth - 1) for _ in range(2))

    quantifiers = []
    for i in range(rng.randint(1, 2)):
        var = "k%d" % i
        vars_in_scope.append(var)
        quantifiers.append("E %s <= %d. " % (var, rng.randint(0, 6)))
    return "".join(quantifiers) + body(2)


def test_normalization_preserves_truth_on_random_sentences():
    rng = random.Random(20260814)
    for i in range(100):
        text = random_sentence(rng)
        ast = F.parse(text)
        handle = POW2 if i % 2 == 0 else FIB
        expected = raw_eval(ast, handle, {})
        assert F.eval_ground(ast, handle) == expected, text


def test_normalize_idempotent_on_random_sentences():
    rng = random.Random(777)
    for _ in range(60):
        text = random_sentence(rng)
        once = F.normalize(F.parse(text))
        assert canon(F.normalize(once)) == canon(once), text
