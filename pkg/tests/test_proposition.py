import itertools
import pickle
import random

import pytest

from eqgen.proposition import (
    FALSE,
    TRUE,
    And,
    Binary,
    Constant,
    Iff,
    Implies,
    MissingVariable,
    Negation,
    Operator,
    Or,
    ReservedName,
    Variable,
    depth,
    evaluate,
    replace_at,
    size,
    substitute,
    subterms,
    variables,
)
from trees import random_prop

p, q, r = Variable("p"), Variable("q"), Variable("r")


def test_precedence_table():
    assert [op.precedence for op in Operator] == [1, 2, 3, 4, 5]
    assert [op.symbol for op in Operator] == ["¬", "∧", "∨", "→", "↔"]


@pytest.mark.parametrize(
    "prop,env,want",
    [
        (And(p, TRUE), {"p": True}, True),
        (Or(p, Negation(p)), {"p": False}, True),
        (Implies(p, q), {"p": True, "q": False}, False),
        (Iff(p, q), {"p": False, "q": False}, True),
    ],
)
def test_evaluate_examples(prop, env, want):
    assert evaluate(prop, env) is want


def test_missing_variable():
    with pytest.raises(MissingVariable):
        evaluate(And(p, q), {"p": True})


def test_reserved_names():
    for name in ("T", "F"):
        with pytest.raises(ReservedName):
            Variable(name)


def test_variables_first_occurrence_order():
    assert variables(Or(p, And(p, q))) == ["p", "q"]
    assert variables(TRUE) == []
    assert variables(And(And(q, p), q)) == ["q", "p"]


def test_size_and_depth():
    assert size(p) == 1
    assert size(Negation(Negation(p))) == 3
    assert size(Or(p, And(p, q))) == 5
    assert depth(Or(p, And(p, q))) == 3


def _reference_eval(t, env):
    # direct truth-table definitions, written independently of Operator.apply
    if isinstance(t, Constant):
        return t.value
    if isinstance(t, Variable):
        return env[t.name]
    if isinstance(t, Negation):
        return not _reference_eval(t.child, env)
    a, b = _reference_eval(t.left, env), _reference_eval(t.right, env)
    table = {
        Operator.AND: {(1, 1): 1, (1, 0): 0, (0, 1): 0, (0, 0): 0},
        Operator.OR: {(1, 1): 1, (1, 0): 1, (0, 1): 1, (0, 0): 0},
        Operator.IMPLIES: {(1, 1): 1, (1, 0): 0, (0, 1): 1, (0, 0): 1},
        Operator.IFF: {(1, 1): 1, (1, 0): 0, (0, 1): 0, (0, 0): 1},
    }[t.op]
    return bool(table[int(a), int(b)])


def test_evaluate_matches_truth_tables():
    rng = random.Random(3)
    checked = 0
    while checked < 500:
        t = random_prop(rng, 4)
        if size(t) > 9:
            continue
        checked += 1
        for values in itertools.product((True, False), repeat=3):
            env = dict(zip("pqr", values))
            assert evaluate(t, env) == _reference_eval(t, env)


def test_structural_equality_and_hash():
    a = Or(p, And(p, q))
    b = Or(Variable("p"), And(Variable("p"), Variable("q")))
    assert a == b and hash(a) == hash(b)
    assert a != Or(p, And(q, p))
    assert And(p, q) != Or(p, q)


def test_immutability():
    with pytest.raises(AttributeError):
        p.name = "x"


def test_pickle_round_trip():
    t = Iff(Negation(p), Implies(q, FALSE))
    assert pickle.loads(pickle.dumps(t)) == t


def test_subterms_and_replace():
    t = Or(p, And(q, r))
    positions = dict(subterms(t))
    assert positions[(1, 0)] == q
    assert replace_at(t, (1, 0), r) == Or(p, And(r, r))
    assert substitute(t, {"q": Negation(p)}) == Or(p, And(Negation(p), r))


def test_binary_rejects_not():
    with pytest.raises(ValueError):
        Binary(Operator.NOT, p, q)
