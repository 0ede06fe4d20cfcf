# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for parsing and printing expressions."""

from pathlib import Path
from unittest import TestCase

from resr_motion.expr import (
    ArityMismatchError,
    EmptyInputError,
    InvalidExprError,
    LiteralOverflowError,
    ParseError,
    UnbalancedParenthesesError,
    UnexpectedTokenError,
    UnknownIdentifierError,
    binary,
    complexity,
    const,
    constants,
    depth,
    parse,
    replace_at,
    to_string,
    try_parse,
    unary,
    var,
    with_constants,
)
from resr_motion.expr.nodes import Expr

GOLDEN = Path(__file__).resolve().parent.parent / "golden" / "expr_roundtrip.txt"


class TestParse(TestCase):
    """Tests for parse()."""

    def test_precedence(self):
        self.assertEqual(
            parse("1 + 2 * t"),
            binary("add", const(1), binary("mul", const(2), var())),
        )

    def test_left_associative_subtraction(self):
        e = parse("t - 1 - 2")
        self.assertEqual(e, binary("sub", binary("sub", var(), const(1)), const(2)))

    def test_power_is_right_associative(self):
        e = parse("2 ^ 3 ^ 2")
        self.assertEqual(e, binary("pow", const(2), binary("pow", const(3), const(2))))

    def test_negative_literal_folds(self):
        self.assertEqual(parse("-2"), const(-2))
        self.assertEqual(parse("t * -3"), binary("mul", var(), const(-3)))

    def test_negative_literal_before_power_is_negation(self):
        self.assertEqual(
            parse("-2 ^ 2"),
            unary("neg", binary("pow", const(2), const(2))),
        )

    def test_functions(self):
        e = parse("0.5*cos(t + 3) + 100")
        self.assertEqual(complexity(e), 8)
        self.assertEqual(depth(e), 5)
        self.assertEqual(constants(e), [0.5, 3.0, 100.0])

    def test_scientific_notation(self):
        self.assertEqual(parse("1e-05 * t"), binary("mul", const(1e-05), var()))
        self.assertEqual(parse(".5"), const(0.5))

    def test_empty_input(self):
        for text in ("", "   "):
            with self.assertRaises(EmptyInputError):
                parse(text)

    def test_unknown_identifier(self):
        with self.assertRaises(UnknownIdentifierError) as ctx:
            parse("t + x")
        self.assertEqual(ctx.exception.offset, 4)

    def test_unbalanced_parentheses(self):
        with self.assertRaises(UnbalancedParenthesesError) as ctx:
            parse("(t + 1")
        self.assertEqual(ctx.exception.offset, 0)
        with self.assertRaises(UnbalancedParenthesesError):
            parse("t + 1)")

    def test_arity_mismatch(self):
        for text in ("cos()", "cos(t, 1)", "sin t"):
            with self.assertRaises(ArityMismatchError):
                parse(text)

    def test_unexpected_token(self):
        for text in ("t +", "t t", "t $ 1", "* t"):
            with self.assertRaises(UnexpectedTokenError):
                parse(text)

    def test_errors_share_base_class(self):
        with self.assertRaises(ParseError):
            parse("foo(t)")

    def test_offset_is_in_bytes(self):
        with self.assertRaises(UnexpectedTokenError) as ctx:
            parse("t + é")
        self.assertEqual(ctx.exception.offset, 4)

    def test_overflowing_literal(self):
        for text, offset in (("1e400", 0), ("t + 2e308", 4), ("cos(-1e999)", 5)):
            with self.subTest(text=text):
                with self.assertRaises(LiteralOverflowError) as ctx:
                    parse(text)
                self.assertEqual(ctx.exception.offset, offset)
                self.assertIsNone(try_parse(text))
        self.assertEqual(parse("1e300"), const(1e300))

    def test_try_parse(self):
        self.assertIsNone(try_parse("t +"))
        self.assertEqual(try_parse("t"), var())


class TestNodes(TestCase):
    """Tests for node invariants and helpers."""

    def test_arity_is_enforced(self):
        with self.assertRaises(InvalidExprError):
            Expr("add", None, (var(),))
        with self.assertRaises(InvalidExprError):
            Expr("cos")

    def test_constants_must_be_finite(self):
        for value in (float("nan"), float("inf")):
            with self.assertRaises(InvalidExprError):
                const(value)

    def test_non_const_cannot_carry_value(self):
        with self.assertRaises(InvalidExprError):
            Expr("t", 1.0)

    def test_with_constants(self):
        e = parse("2 * t + 3")
        self.assertEqual(to_string(with_constants(e, [4, 5])), "4 * t + 5")
        with self.assertRaises(InvalidExprError):
            with_constants(e, [1])

    def test_replace_at(self):
        e = parse("2 * t + 3")
        self.assertEqual(to_string(replace_at(e, (0, 1), unary("cos", var()))), "2 * cos(t) + 3")
        self.assertEqual(replace_at(e, (), var()), var())
        self.assertEqual(to_string(e), "2 * t + 3")


class TestPrinter(TestCase):
    """Tests for to_string() and the golden corpus."""

    def test_golden_corpus_is_stable(self):
        lines = [line for line in GOLDEN.read_text().splitlines() if line]
        self.assertEqual(len(lines), 20)
        for line in lines:
            with self.subTest(line=line):
                self.assertEqual(to_string(parse(line)), line)

    def test_printed_form_parses_back(self):
        exprs = [
            unary("neg", const(2)),
            binary("pow", const(-2), var()),
            binary("sub", var(), binary("add", var(), const(1))),
            binary("div", const(1), binary("div", var(), const(3))),
            unary("neg", unary("neg", var())),
            binary("mul", const(0.1), unary("exp", unary("neg", var()))),
        ]
        for e in exprs:
            with self.subTest(text=to_string(e)):
                self.assertEqual(parse(to_string(e)), e)

    def test_minimal_parentheses(self):
        self.assertEqual(to_string(parse("((t))")), "t")
        self.assertEqual(to_string(parse("(t * 2) + 1")), "t * 2 + 1")
        self.assertEqual(to_string(parse("t - (1 + t)")), "t - (1 + t)")
