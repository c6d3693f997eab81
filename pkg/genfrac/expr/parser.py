"""Recursive descent parser for the one-variable expression language.

Grammar, lowest precedence first::

    expression := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := ("-" | "+") unary | power
    power      := atom ("^" unary)?           # right associative, binds tightest
    atom       := NUMBER | "pi" | "e" | IDENT
                | FUNCTION "(" expression ")" | "(" expression ")"

The first identifier which is neither a function nor a named constant binds the
variable name; a second, different identifier is an error. All the errors carry a
``ParseDiagnostic`` with the byte offset of the offending token.
"""
import logging
import math
import re
from dataclasses import dataclass
from typing import NoReturn, Optional

from cachetools import LRUCache, cached

from genfrac.errors import ExpressionSyntaxError, ParseDiagnostic
from genfrac.expr.nodes import (
    FUNCTIONS,
    BinaryOp,
    Const,
    ExprTree,
    Node,
    UnaryOp,
    Var,
    make_binary,
    make_unary,
)

NAMED_CONSTANTS: dict[str, float] = {"pi": math.pi, "e": math.e}

DEFAULT_VARIABLE: str = "x"

OPERAND_HINT: str = "a number, variable, function call or '('"

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<ident>[A-Za-z_][A-Za-z_0-9]*)
    |(?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    # Character offset into the source text.
    offset: int


def _byte_offset(source: str, offset: int) -> int:
    return len(source[:offset].encode("utf-8"))


def tokenize(source: str) -> list[Token]:
    tokens = []
    position = 0
    while position < len(source):
        match = _TOKEN_RE.match(source, position)
        if match is None:
            diagnostic = ParseDiagnostic(
                _byte_offset(source, position),
                f"unknown token {source[position]!r}",
            )
            raise ExpressionSyntaxError(diagnostic, source)
        kind = match.lastgroup
        assert kind is not None
        if kind != "space":
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, source: str) -> None:
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0
        self.variable: Optional[str] = None

    def error(self, offset: int, message: str, expected: str = "") -> NoReturn:
        diagnostic = ParseDiagnostic(
            _byte_offset(self.source, offset), message, expected
        )
        raise ExpressionSyntaxError(diagnostic, self.source)

    def peek(self) -> Optional[Token]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def at_operator(self, *symbols: str) -> bool:
        token = self.peek()
        return token is not None and token.kind == "op" and token.text in symbols

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def end_offset(self) -> int:
        return len(self.source)

    def parse(self) -> ExprTree:
        if not self.tokens:
            self.error(0, "empty expression", "an expression")
        root = self.expression()
        token = self.peek()
        if token is not None:
            if token.text == ")":
                self.error(token.offset, "unbalanced parentheses", "an operator")
            self.error(token.offset, f"unexpected token {token.text!r}", "an operator")
        return ExprTree(root, self.variable or DEFAULT_VARIABLE, self.source)

    def expression(self) -> Node:
        node = self.term()
        while self.at_operator("+", "-"):
            op = BinaryOp.ADD if self.advance().text == "+" else BinaryOp.SUB
            node = make_binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at_operator("*", "/"):
            op = BinaryOp.MUL if self.advance().text == "*" else BinaryOp.DIV
            node = make_binary(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.at_operator("-"):
            self.advance()
            return make_unary(UnaryOp.NEG, self.unary())
        if self.at_operator("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.at_operator("^"):
            self.advance()
            # ``unary`` recurses into ``power``, which makes ``^`` right associative.
            return make_binary(BinaryOp.POW, base, self.unary())
        return base

    def expect_closing(self, opening: Token) -> None:
        token = self.peek()
        if token is None or token.text != ")":
            offset = self.end_offset() if token is None else token.offset
            self.error(
                offset, f"unbalanced parentheses (opened at {opening.offset})", "')'"
            )
        self.advance()

    def atom(self) -> Node:
        token = self.peek()
        if token is None:
            self.error(self.end_offset(), "expected operand", OPERAND_HINT)
        if token.kind == "number":
            self.advance()
            value = float(token.text)
            if not math.isfinite(value):
                self.error(token.offset, f"number {token.text!r} overflows")
            return Const(value)
        if token.kind == "ident":
            return self.identifier(self.advance())
        if token.text == "(":
            self.advance()
            node = self.expression()
            self.expect_closing(token)
            return node
        self.error(token.offset, "expected operand", OPERAND_HINT)

    def identifier(self, token: Token) -> Node:
        name = token.text
        if name in FUNCTIONS:
            opening = self.peek()
            if opening is None or opening.text != "(":
                offset = self.end_offset() if opening is None else opening.offset
                self.error(offset, f"expected '(' after function {name!r}", "'('")
            self.advance()
            argument = self.expression()
            self.expect_closing(opening)
            return make_unary(FUNCTIONS[name], argument)
        if name in NAMED_CONSTANTS:
            return Const(NAMED_CONSTANTS[name])
        if self.variable is None:
            self.variable = name
        elif name != self.variable:
            self.error(
                token.offset,
                f"second free variable {name!r}, the expression already uses "
                f"{self.variable!r}",
                repr(self.variable),
            )
        return Var(name)


@cached(cache=LRUCache(maxsize=512))
def parse(text: str) -> ExprTree:
    """Parse *text* into an ``ExprTree``.

    Raises ``ExpressionSyntaxError`` carrying a ``ParseDiagnostic`` for an empty
    input, an unknown token, unbalanced parentheses, a missing operand or a second
    free variable.
    """
    tree = _Parser(text).parse()
    logger.debug("parsed=%r variable=%s", text, tree.variable)
    return tree
