"""Text to proposition trees.

Accepts the UTF-8 operator symbols and the ASCII spellings ``~ ! & | -> <->``.
Precedence follows the operator table (¬ tightest, ↔ loosest); ∧ and ∨
associate to the left, → and ↔ to the right. Positions in errors are 1-based
character columns.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from eqgen.proposition import FALSE, TRUE, Binary, Negation, Operator, Prop, Variable


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


_SYMBOLS = {
    "¬": Operator.NOT,
    "~": Operator.NOT,
    "!": Operator.NOT,
    "∧": Operator.AND,
    "&": Operator.AND,
    "∨": Operator.OR,
    "|": Operator.OR,
    "→": Operator.IMPLIES,
    "->": Operator.IMPLIES,
    "↔": Operator.IFF,
    "<->": Operator.IFF,
}

_TOKEN = re.compile(r"\s*(?:(<->|->|[¬~!∧&∨|→↔])|([A-Za-z]+)|([()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "name", "paren", "end"
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            # only trailing whitespace left
            if text[i:].strip() == "":
                break
            j = i
            while text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", j + 1)
        kind = "op" if m.group(1) else "name" if m.group(2) else "paren"
        start = m.start(m.lastindex)
        tokens.append(Token(kind, m.group(m.lastindex), start + 1))
        i = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def peek_op(self) -> Operator | None:
        tok = self.peek()
        return _SYMBOLS[tok.text] if tok.kind == "op" else None

    def expression(self, max_prec: int = Operator.IFF.precedence) -> Prop:
        # precedence climbing; smaller number binds tighter
        left = self.unary()
        while True:
            op = self.peek_op()
            if op is None or op is Operator.NOT or op.precedence > max_prec:
                return left
            self.take()
            if op.right_assoc:
                right = self.expression(op.precedence)
            else:
                right = self.expression(op.precedence - 1)
            left = Binary(op, left, right)

    def unary(self) -> Prop:
        if self.peek_op() is Operator.NOT:
            self.take()
            return Negation(self.unary())
        return self.atom()

    def atom(self) -> Prop:
        tok = self.take()
        if tok.kind == "name":
            if tok.text == "T":
                return TRUE
            if tok.text == "F":
                return FALSE
            return Variable(tok.text)
        if tok.kind == "paren" and tok.text == "(":
            inner = self.expression()
            close = self.take()
            if close.kind != "paren" or close.text != ")":
                raise ParseError(_describe(close, "expected ')'"), close.position)
            return inner
        raise ParseError(_describe(tok, "expected a formula"), tok.position)


def _describe(tok: Token, expectation: str) -> str:
    found = "end of input" if tok.kind == "end" else repr(tok.text)
    return f"{expectation}, found {found}"


def parse(text: str) -> Prop:
    parser = _Parser(text)
    result = parser.expression()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(_describe(tok, "unexpected token"), tok.position)
    return result
