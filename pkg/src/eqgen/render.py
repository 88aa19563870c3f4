"""Minimal-parenthesis rendering of proposition trees.

Each node synthesizes two attributes bottom-up: its text and the precedence
of its top operator (infinity for literals). A child is parenthesized only
when dropping the parentheses would let it reparse differently: it binds
looser than its parent, or it ties and sits on the associating side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from eqgen.proposition import INFINITY, Binary, Constant, Negation, Operator, Prop, Variable

if TYPE_CHECKING:
    from eqgen.generator import Question

PLAIN = "plain"
LATEX = "latex"
STYLES = (PLAIN, LATEX)


@dataclass(frozen=True)
class RenderAttr:
    exp: str
    pre: float


def _symbol(op: Operator, style: str) -> str:
    return op.latex if style == LATEX else op.symbol


def attributes(p: Prop, style: str = PLAIN, full_parens: bool = False) -> RenderAttr:
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    return _attr(p, style, full_parens)


def _attr(p: Prop, style: str, full: bool) -> RenderAttr:
    if isinstance(p, Constant):
        return RenderAttr("T" if p.value else "F", INFINITY)
    if isinstance(p, Variable):
        return RenderAttr(p.name, INFINITY)
    if isinstance(p, Negation):
        child = _attr(p.child, style, full)
        text = child.exp
        if child.pre != INFINITY and child.pre > Operator.NOT.precedence:
            text = f"({text})"
        sep = " " if style == LATEX else ""
        return RenderAttr(f"{_symbol(Operator.NOT, style)}{sep}{text}", Operator.NOT.precedence)
    if isinstance(p, Binary):
        op = p.op
        left = _attr(p.left, style, full)
        right = _attr(p.right, style, full)
        lt, rt = left.exp, right.exp
        if _wrap(left.pre, op, is_left=True, full=full):
            lt = f"({lt})"
        if _wrap(right.pre, op, is_left=False, full=full):
            rt = f"({rt})"
        return RenderAttr(f"{lt} {_symbol(op, style)} {rt}", op.precedence)
    raise TypeError(f"not a proposition node: {p!r}")


def _wrap(child_pre: float, op: Operator, is_left: bool, full: bool) -> bool:
    # atoms carry pre = inf but never need parentheses
    if child_pre == INFINITY:
        return False
    if full:
        return child_pre != Operator.NOT.precedence
    if child_pre > op.precedence:
        return True
    if child_pre == op.precedence:
        return is_left == op.right_assoc
    return False


def render(p: Prop, style: str = PLAIN, full_parens: bool = False) -> str:
    return attributes(p, style, full_parens).exp


def render_question(q: Question, style: str = PLAIN, full_parens: bool = False) -> str:
    lhs = render(q.lhs, style, full_parens)
    rhs = render(q.rhs, style, full_parens)
    if style == LATEX:
        return rf"\({lhs} \equiv {rhs}\)"
    return f"Show that {lhs} ≡ {rhs}."
