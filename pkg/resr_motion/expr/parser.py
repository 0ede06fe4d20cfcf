# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Infix expression parser.

Grammar (EBNF, lowest to highest precedence)::

    expr     = term , { ( "+" | "-" ) , term } ;
    term     = unary , { ( "*" | "/" ) , unary } ;
    unary    = "-" , unary | power ;
    power    = primary , [ "^" , unary ] ;
    primary  = number | "t" | func , "(" , expr , ")" | "(" , expr , ")" ;
    func     = "cos" | "sin" | "exp" | "log" | "tan" | "sqrt" ;
    number   = digits , [ "." , digits ] , [ ( "e" | "E" ) , [ "+" | "-" ] , digits ] ;

``^`` binds tighter than unary minus and is right-associative, so
``-2^2`` is ``neg(pow(2, 2))`` and ``2^3^2`` is ``pow(2, pow(3, 2))``.

A minus sign directly in front of a numeric literal that is not itself the
base of a ``^`` is read as a negative constant (``-0.5*t`` holds the
constant -0.5). Every other unary minus becomes a ``neg`` node. The printer
relies on this rule to round-trip negative constants.

All errors carry the byte offset of the offending token.
"""

import math
import re
from dataclasses import dataclass
from typing import List, Optional

from .nodes import UNARY_OPS, Expr, ExprError, binary, const, unary, var

FUNCTIONS = tuple(op for op in UNARY_OPS if op != "neg")

_BINARY_SYMBOLS = {"+": "add", "-": "sub", "*": "mul", "/": "div", "^": "pow"}

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
    """,
    re.VERBOSE,
)


class ParseError(ExprError):
    """Base class for parse errors.

    Attributes:
        offset: Byte offset into the input where the problem was found
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class EmptyInputError(ParseError):
    """The input contains no tokens."""
    pass


class UnknownIdentifierError(ParseError):
    """An identifier other than ``t`` or a supported function name."""
    pass


class UnbalancedParenthesesError(ParseError):
    """A ``(`` without its ``)`` or a stray ``)``."""
    pass


class ArityMismatchError(ParseError):
    """A function called with other than exactly one argument."""
    pass


class UnexpectedTokenError(ParseError):
    """Any other syntax error."""
    pass


class LiteralOverflowError(ParseError):
    """A numeric literal too large to be a finite float."""
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens, ending with an ``end`` token."""
    tokens = []
    position = 0
    byte_offset = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise UnexpectedTokenError(
                f"Unexpected character {text[position]!r}", byte_offset
            )
        kind = match.lastgroup
        lexeme = match.group()
        if kind != "space":
            tokens.append(Token(kind, lexeme, byte_offset))
        position = match.end()
        byte_offset += len(lexeme.encode("utf-8"))
    tokens.append(Token("end", "", byte_offset))
    return tokens


class _Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self, ahead: int = 0) -> Token:
        index = min(self.index + ahead, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def at_op(self, symbols: str, ahead: int = 0) -> bool:
        token = self.peek(ahead)
        return token.kind == "op" and token.text in symbols

    def parse(self) -> Expr:
        if self.peek().kind == "end":
            raise EmptyInputError("Empty expression", self.peek().offset)
        result = self.expr()
        token = self.peek()
        if token.kind == "rparen":
            raise UnbalancedParenthesesError("Unmatched ')'", token.offset)
        if token.kind != "end":
            raise UnexpectedTokenError(f"Unexpected {token.text!r}", token.offset)
        return result

    def expr(self) -> Expr:
        left = self.term()
        while self.at_op("+-"):
            op = _BINARY_SYMBOLS[self.advance().text]
            left = binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at_op("*/"):
            op = _BINARY_SYMBOLS[self.advance().text]
            left = binary(op, left, self.unary())
        return left

    def number(self, token: Token) -> float:
        value = float(token.text)
        if not math.isfinite(value):
            raise LiteralOverflowError(f"Numeric literal {token.text!r} overflows", token.offset)
        return value

    def unary(self) -> Expr:
        if self.at_op("-"):
            if self.peek(1).kind == "number" and not self.at_op("^", ahead=2):
                self.advance()
                return const(-self.number(self.advance()))
            self.advance()
            return unary("neg", self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at_op("^"):
            self.advance()
            return binary("pow", base, self.unary())
        return base

    def primary(self) -> Expr:
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return const(self.number(token))
        if token.kind == "ident":
            return self.identifier()
        if token.kind == "lparen":
            self.advance()
            inner = self.expr()
            self.expect_close(token)
            return inner
        if token.kind == "end":
            raise UnexpectedTokenError("Unexpected end of input", token.offset)
        if token.kind == "rparen":
            raise UnbalancedParenthesesError("Unmatched ')'", token.offset)
        raise UnexpectedTokenError(f"Unexpected {token.text!r}", token.offset)

    def identifier(self) -> Expr:
        token = self.advance()
        name = token.text
        if name == "t":
            return var()
        if name not in FUNCTIONS:
            raise UnknownIdentifierError(f"Unknown identifier {name!r}", token.offset)
        opening = self.peek()
        if opening.kind != "lparen":
            raise ArityMismatchError(
                f"{name} must be called with one argument", opening.offset
            )
        self.advance()
        if self.peek().kind == "rparen":
            raise ArityMismatchError(f"{name} takes 1 argument, got 0", token.offset)
        arguments = [self.expr()]
        while self.peek().kind == "comma":
            self.advance()
            arguments.append(self.expr())
        if len(arguments) != 1:
            raise ArityMismatchError(
                f"{name} takes 1 argument, got {len(arguments)}", token.offset
            )
        self.expect_close(opening)
        return unary(name, arguments[0])

    def expect_close(self, opening: Token) -> None:
        token = self.peek()
        if token.kind == "rparen":
            self.advance()
            return
        if token.kind == "end":
            raise UnbalancedParenthesesError("Unclosed '('", opening.offset)
        raise UnexpectedTokenError(f"Expected ')' but found {token.text!r}", token.offset)


def parse(text: str) -> Expr:
    """Parse an infix expression string into an ``Expr``.

    Args:
        text: Expression such as ``"0.5*cos(t + 3) + 100"``

    Returns:
        The expression tree

    Raises:
        ParseError: One of its subclasses, carrying the byte offset
    """
    return _Parser(tokenize(text)).parse()


def try_parse(text: str) -> Optional[Expr]:
    """Parse ``text``, returning None instead of raising."""
    try:
        return parse(text)
    except ParseError:
        return None
