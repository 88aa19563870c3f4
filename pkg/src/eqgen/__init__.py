"""Deterministic generator of propositional logical-equivalence questions."""

from eqgen.proposition import Binary, Constant, Negation, Operator, Prop, Variable
from eqgen.seedstream import HexStream, derive

__all__ = [
    "Binary",
    "Constant",
    "HexStream",
    "Negation",
    "Operator",
    "Prop",
    "Variable",
    "derive",
]

__version__ = "0.1.0"
