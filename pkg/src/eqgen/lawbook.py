"""The 21 equivalence laws and the paired generation rules built from them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from eqgen.proposition import (
    FALSE,
    TRUE,
    And,
    Binary,
    Iff,
    Implies,
    Negation,
    Operator,
    Or,
    Prop,
    Variable,
    substitute,
    variables,
)


class Category(enum.Enum):
    EASY = "Easy"
    MEDIAN = "Median"
    HARD = "Hard"


# order in which semantic steps draw their category
ROTATION = (Category.MEDIAN, Category.HARD, Category.EASY)


class IncompatibleCompanion(ValueError):
    """A Commutative/Associative rule was paired with an unusable companion law."""


@dataclass(frozen=True)
class Law:
    name: str
    lhs: Prop
    rhs: Prop
    category: Category

    @property
    def metavariables(self) -> list[str]:
        return variables(Binary(Operator.AND, self.lhs, self.rhs))

    def __str__(self) -> str:
        from eqgen.render import render

        return f"{render(self.lhs)} ≡ {render(self.rhs)}"


class RuleKind(enum.Enum):
    STRUCTURAL = "Structural"
    SEMANTIC = "Semantic"


@dataclass(frozen=True)
class GenRule:
    """A paired production.

    ``tree1`` and ``tree2`` are schemas over meta-variables; each distinct
    meta-variable becomes one linked non-terminal group when the rule fires,
    shared by every place it occurs in either schema.
    """

    kind: RuleKind
    name: str
    tree1: Prop
    tree2: Prop
    weight: float = 1
    laws: tuple[str, ...] = field(default=())

    @property
    def is_literal(self) -> bool:
        return self.name == "r_lit"

    @property
    def metavariables(self) -> list[str]:
        return variables(Binary(Operator.AND, self.tree1, self.tree2))


_p, _q, _r, _s = (Variable(n) for n in "pqrs")


def _build_catalog() -> tuple[Law, ...]:
    E, M, H = Category.EASY, Category.MEDIAN, Category.HARD
    return (
        Law("IdentityAnd", And(_p, TRUE), _p, E),
        Law("IdentityOr", Or(_p, FALSE), _p, E),
        Law("DominationAnd", And(_p, FALSE), FALSE, E),
        Law("DominationOr", Or(_p, TRUE), TRUE, E),
        Law("CommutativeAnd", And(_p, _q), And(_q, _p), H),
        Law("CommutativeOr", Or(_p, _q), Or(_q, _p), H),
        Law("IdempotentOr", Or(_p, _p), _p, M),
        Law("IdempotentAnd", And(_p, _p), _p, M),
        Law("NegationAnd", And(_p, Negation(_p)), FALSE, M),
        Law("NegationOr", Or(_p, Negation(_p)), TRUE, M),
        Law("AbsorptionOr", Or(_p, And(_p, _q)), _p, H),
        Law("AbsorptionAnd", And(_p, Or(_p, _q)), _p, H),
        Law("AssociativeAnd", And(And(_p, _q), _r), And(_p, And(_q, _r)), H),
        Law("AssociativeOr", Or(Or(_p, _q), _r), Or(_p, Or(_q, _r)), H),
        Law("DeMorganAnd", Negation(And(_p, _q)), Or(Negation(_p), Negation(_q)), M),
        Law("DeMorganOr", Negation(Or(_p, _q)), And(Negation(_p), Negation(_q)), M),
        Law("DoubleNegation", Negation(Negation(_p)), _p, E),
        Law("Implication", Implies(_p, _q), Or(Negation(_p), _q), H),
        Law("BiImplication", Iff(_p, _q), And(Implies(_p, _q), Implies(_q, _p)), H),
        Law("DistributiveOr", Or(_p, And(_q, _r)), And(Or(_p, _q), Or(_p, _r)), M),
        Law("DistributiveAnd", And(_p, Or(_q, _r)), Or(And(_p, _q), And(_p, _r)), M),
    )


_CATALOG = _build_catalog()
_BY_NAME = {law.name: law for law in _CATALOG}

COMPOSITE_LAWS = ("CommutativeAnd", "CommutativeOr", "AssociativeAnd", "AssociativeOr")
COMPANION_FAMILIES = ("Absorption", "Idempotent", "DoubleNegation", "Identity")


def catalog() -> list[Law]:
    """All 21 laws in the order of the textbook law table."""
    return list(_CATALOG)


def law(name: str) -> Law:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown law {name!r}") from None


def by_category(category: Category) -> list[Law]:
    return [x for x in _CATALOG if x.category is category]


def structural_rules(weights: dict[str, float] | None = None) -> list[GenRule]:
    weights = weights or {}
    S = RuleKind.STRUCTURAL
    lit = Variable("lit")
    pairs = [
        ("r_lit", lit),
        ("r_and", And(_p, _q)),
        ("r_or", Or(_p, _q)),
        ("r_imp", Implies(_p, _q)),
        ("r_neg", Negation(_p)),
    ]
    return [GenRule(S, name, schema, schema, weights.get(name, 1)) for name, schema in pairs]


def _principal(p: Prop) -> Operator | None:
    return p.op if isinstance(p, (Binary, Negation)) else None


def companions(composite: str) -> list[Law]:
    """Companion laws that can ride along with a Commutative/Associative rule.

    The companion's long side must be rooted at the same binary operator as
    the composite, which rules out Double Negation.
    """
    op = law(composite).lhs.op
    return [
        x
        for x in _CATALOG
        if any(x.name.startswith(f) for f in COMPANION_FAMILIES) and _principal(x.lhs) is op
    ]


def semantic_rule(law_: Law, companion: Law | None = None, weight: float = 1) -> GenRule:
    """Paired rule instantiating one law: long form into tree 1, short into tree 2.

    Commutative and Associative never fire alone. The companion's long side
    is built first, then its top node is permuted (children swapped, or the
    left operand split and re-associated to the right).
    """
    if law_.name not in COMPOSITE_LAWS:
        if companion is not None:
            raise IncompatibleCompanion(f"{law_.name} takes no companion law")
        return GenRule(RuleKind.SEMANTIC, law_.name, law_.lhs, law_.rhs, weight, (law_.name,))

    if companion is None:
        raise IncompatibleCompanion(f"{law_.name} needs a companion law")
    op = law_.lhs.op
    if not any(companion.name.startswith(f) for f in COMPANION_FAMILIES):
        raise IncompatibleCompanion(f"{companion.name} cannot accompany {law_.name}")
    if _principal(companion.lhs) is not op:
        raise IncompatibleCompanion(
            f"{companion.name} is not rooted at {op.symbol}, cannot accompany {law_.name}"
        )

    long_form, short_form = companion.lhs, companion.rhs
    if law_.name.startswith("Commutative"):
        tree1 = Binary(op, long_form.right, long_form.left)
        tree2 = short_form
    else:
        # split the companion's first meta-variable p into (p op s) and rotate
        split = {"p": Binary(op, _p, _s)}
        long_form = substitute(long_form, split)
        tree2 = substitute(short_form, split)
        inner = long_form.left
        tree1 = Binary(op, inner.left, Binary(op, inner.right, long_form.right))
    name = f"{law_.name}+{companion.name}"
    return GenRule(RuleKind.SEMANTIC, name, tree1, tree2, weight, (law_.name, companion.name))

