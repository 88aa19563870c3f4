import pytest

from eqgen.parser import ParseError, parse
from eqgen.proposition import FALSE, TRUE, And, Iff, Implies, Negation, Or, ReservedName, Variable

p, q, r = Variable("p"), Variable("q"), Variable("r")


@pytest.mark.parametrize(
    "text,tree",
    [
        ("p ∨ p ∧ q", Or(p, And(p, q))),
        ("¬¬p", Negation(Negation(p))),
        ("p → q → r", Implies(p, Implies(q, r))),
        ("p ∧ q ∧ r", And(And(p, q), r)),
        ("p ↔ q ↔ r", Iff(p, Iff(q, r))),
        ("~p | q & T", Or(Negation(p), And(q, TRUE))),
        ("p -> q <-> F", Iff(Implies(p, q), FALSE)),
        ("!(p)", Negation(p)),
        ("Alpha ∧ beta", And(Variable("Alpha"), Variable("beta"))),
    ],
)
def test_parse(text, tree):
    assert parse(text) == tree


@pytest.mark.parametrize(
    "text,position",
    [("p ∨", 4), ("p q", 3), ("(p ∧ q", 7), ("p ∧ )", 5), ("p # q", 3), ("", 1)],
)
def test_syntax_error_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position


def test_constants_are_not_variables():
    assert parse("T") == TRUE and parse("F") == FALSE
    assert not isinstance(parse("T"), Variable)


def test_reserved_name_from_constructor():
    with pytest.raises(ReservedName):
        Variable("T")
