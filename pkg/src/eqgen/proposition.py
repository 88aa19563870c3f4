"""Proposition trees, operator precedence and truth evaluation."""

from __future__ import annotations

import enum
from collections.abc import Iterator, Mapping

CONSTANT_TOKENS = ("T", "F")
DEFAULT_POOL = ("p", "q", "r", "s", "u", "v", "w", "x", "y", "z")
INFINITY = float("inf")


class MissingVariable(KeyError):
    """An assignment does not cover a variable of the proposition."""


class ReservedName(ValueError):
    """A variable was named after a constant token."""


class Operator(enum.Enum):
    # value: (symbol, precedence, latex); smaller precedence binds tighter
    NOT = ("¬", 1, r"\neg")
    AND = ("∧", 2, r"\wedge")
    OR = ("∨", 3, r"\vee")
    IMPLIES = ("→", 4, r"\rightarrow")
    IFF = ("↔", 5, r"\leftrightarrow")

    @property
    def symbol(self) -> str:
        return self.value[0]

    @property
    def precedence(self) -> int:
        return self.value[1]

    @property
    def latex(self) -> str:
        return self.value[2]

    @property
    def right_assoc(self) -> bool:
        return self in (Operator.IMPLIES, Operator.IFF)

    def apply(self, a: bool, b: bool) -> bool:
        if self is Operator.AND:
            return a and b
        if self is Operator.OR:
            return a or b
        if self is Operator.IMPLIES:
            return (not a) or b
        if self is Operator.IFF:
            return a == b
        raise ValueError(f"{self.name} is not binary")


BINARY_OPERATORS = (Operator.AND, Operator.OR, Operator.IMPLIES, Operator.IFF)


class Prop:
    """Immutable proposition node.

    Hashes are computed once at construction, so equality checks and set
    membership on large shared trees stay cheap.
    """

    __slots__ = ("_hash",)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash

    def children(self) -> tuple[Prop, ...]:
        return ()

    def with_children(self, children: tuple[Prop, ...]) -> Prop:
        return self

    def key(self) -> str:
        """Canonical prefix serialization; equal trees give equal keys."""
        return "".join(_key_parts(self))


class Constant(Prop):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        object.__setattr__(self, "value", bool(value))
        object.__setattr__(self, "_hash", hash(("C", self.value)))

    def __eq__(self, other):
        return self is other or (type(other) is Constant and other.value == self.value)

    __hash__ = Prop.__hash__

    def __repr__(self):
        return "T" if self.value else "F"

    def __reduce__(self):
        return (Constant, (self.value,))


class Variable(Prop):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name or not isinstance(name, str):
            raise ValueError("variable name must be a nonempty string")
        if name in CONSTANT_TOKENS:
            raise ReservedName(f"{name!r} is a constant token, not a variable name")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(("V", name)))

    def __eq__(self, other):
        return self is other or (type(other) is Variable and other.name == self.name)

    __hash__ = Prop.__hash__

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (Variable, (self.name,))


class Negation(Prop):
    __slots__ = ("child",)

    def __init__(self, child: Prop):
        object.__setattr__(self, "child", child)
        object.__setattr__(self, "_hash", hash(("N", child._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Negation and other._hash == self._hash and other.child == self.child

    __hash__ = Prop.__hash__

    def __repr__(self):
        return f"¬{self.child!r}"

    def __reduce__(self):
        return (Negation, (self.child,))

    @property
    def op(self) -> Operator:
        return Operator.NOT

    def children(self):
        return (self.child,)

    def with_children(self, children):
        (child,) = children
        return self if child is self.child else Negation(child)


class Binary(Prop):
    __slots__ = ("op", "left", "right")

    def __init__(self, op: Operator, left: Prop, right: Prop):
        if op is Operator.NOT:
            raise ValueError("negation is unary")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_hash", hash((op.symbol, left._hash, right._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Binary
            and other._hash == self._hash
            and other.op is self.op
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = Prop.__hash__

    def __repr__(self):
        return f"({self.left!r} {self.op.symbol} {self.right!r})"

    def __reduce__(self):
        return (Binary, (self.op, self.left, self.right))

    def children(self):
        return (self.left, self.right)

    def with_children(self, children):
        left, right = children
        if left is self.left and right is self.right:
            return self
        return Binary(self.op, left, right)


TRUE = Constant(True)
FALSE = Constant(False)


def And(left: Prop, right: Prop) -> Binary:
    return Binary(Operator.AND, left, right)


def Or(left: Prop, right: Prop) -> Binary:
    return Binary(Operator.OR, left, right)


def Implies(left: Prop, right: Prop) -> Binary:
    return Binary(Operator.IMPLIES, left, right)


def Iff(left: Prop, right: Prop) -> Binary:
    return Binary(Operator.IFF, left, right)


def _key_parts(p: Prop) -> Iterator[str]:
    stack = [p]
    while stack:
        node = stack.pop()
        if isinstance(node, Constant):
            yield "T" if node.value else "F"
        elif isinstance(node, Variable):
            yield f"'{node.name}"
        elif isinstance(node, Negation):
            yield "¬"
            stack.append(node.child)
        elif isinstance(node, Binary):
            yield node.op.symbol
            stack.append(node.right)
            stack.append(node.left)
        else:
            raise TypeError(f"not a proposition node: {node!r}")


def evaluate(p: Prop, assignment: Mapping[str, bool]) -> bool:
    """Truth value of ``p`` under ``assignment``."""
    if isinstance(p, Constant):
        return p.value
    if isinstance(p, Variable):
        try:
            return bool(assignment[p.name])
        except KeyError:
            raise MissingVariable(p.name) from None
    if isinstance(p, Negation):
        return not evaluate(p.child, assignment)
    if isinstance(p, Binary):
        return p.op.apply(evaluate(p.left, assignment), evaluate(p.right, assignment))
    raise TypeError(f"not a proposition node: {p!r}")


def variables(p: Prop) -> list[str]:
    """Distinct variable names in left-to-right first-occurrence order."""
    seen: dict[str, None] = {}
    for node in walk(p):
        if isinstance(node, Variable):
            seen.setdefault(node.name)
    return list(seen)


def walk(p: Prop) -> Iterator[Prop]:
    """Preorder, left to right."""
    stack = [p]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def size(p: Prop) -> int:
    return sum(1 for _ in walk(p))


def depth(p: Prop) -> int:
    kids = p.children()
    return 1 + max((depth(c) for c in kids), default=0)


def subterms(p: Prop) -> Iterator[tuple[tuple[int, ...], Prop]]:
    """Every (position, subterm) pair; a position is the path of child indices."""
    stack: list[tuple[tuple[int, ...], Prop]] = [((), p)]
    while stack:
        pos, node = stack.pop()
        yield pos, node
        kids = node.children()
        for i in range(len(kids) - 1, -1, -1):
            stack.append((pos + (i,), kids[i]))


def replace_at(p: Prop, position: tuple[int, ...], new: Prop) -> Prop:
    if not position:
        return new
    kids = list(p.children())
    head, rest = position[0], position[1:]
    kids[head] = replace_at(kids[head], rest, new)
    return p.with_children(tuple(kids))


def substitute(p: Prop, mapping: Mapping[str, Prop]) -> Prop:
    """Replace variables by name; unmapped variables are kept."""
    if isinstance(p, Variable):
        return mapping.get(p.name, p)
    kids = p.children()
    if not kids:
        return p
    return p.with_children(tuple(substitute(c, mapping) for c in kids))
