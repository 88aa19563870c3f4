"""Random proposition trees for property tests."""

from __future__ import annotations

import random

from eqgen.proposition import BINARY_OPERATORS, FALSE, TRUE, Binary, Negation, Prop, Variable

NAMES = ("p", "q", "r")


def random_prop(rng: random.Random, max_depth: int, names=NAMES) -> Prop:
    """A tree of depth at most ``max_depth`` (a leaf has depth 1)."""
    if max_depth <= 1 or rng.random() < 0.25:
        k = rng.randrange(len(names) + 2)
        if k < len(names):
            return Variable(names[k])
        return TRUE if k == len(names) else FALSE
    if rng.random() < 0.2:
        return Negation(random_prop(rng, max_depth - 1, names))
    op = rng.choice(BINARY_OPERATORS)
    return Binary(op, random_prop(rng, max_depth - 1, names), random_prop(rng, max_depth - 1, names))
