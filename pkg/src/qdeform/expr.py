"""Parser and evaluator for deformed-arithmetic expressions.

Grammar::

    expr   := term { ("q+" | "q-") term } ;
    term   := factor { ("q*" | "q/" | "d*") factor } ;
    factor := NUMBER | "-" factor | "(" expr ")" | FN "(" expr ")" ;
    FN     := "qexp" | "qln" | "qnum" | "heine" ;

Both binary levels are left-associative.  The Unicode operators
``⊕ ⊖ ⊗ ⊘ ◇`` are accepted as aliases of ``q+ q- q* q/ d*``.  Spans are
UTF-8 byte offsets into the source.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .core_ops import DeformParam, as_param, q_exp, q_inverse, q_log, q_opposite, q_product, q_sum
from .diamond import diamond
from .errors import DomainError, QDeformError
from .numerics import Scalar, parse_scalar
from .qnumbers import heine, to_qnumber

Span = tuple[int, int]

BINARY_OPS = {"q+": "qadd", "q-": "qsub", "q*": "qmul", "q/": "qdiv", "d*": "dmul"}
OP_SPELLING = {v: k for k, v in BINARY_OPS.items()}
UNICODE_ALIASES = {"⊕": "q+", "⊖": "q-", "⊗": "q*", "⊘": "q/", "◇": "d*", "◊": "d*"}
FUNCTIONS = ("qexp", "qln", "qnum", "heine")
ADDITIVE = ("qadd", "qsub")
MULTIPLICATIVE = ("qmul", "qdiv", "dmul")
MAX_DEPTH = 200


class ParseError(QDeformError):
    """Syntax error with a byte span and the set of tokens that would fit."""

    def __init__(self, message: str, span: Span, expected: frozenset[str] = frozenset()):
        self.span = span
        self.expected = expected
        exp = f"; expected one of {sorted(expected)}" if expected else ""
        super().__init__(f"{message} at column {self.column}{exp}")

    @property
    def offset(self) -> int:
        """0-based byte offset where the error starts."""
        return self.span[0]

    @property
    def column(self) -> int:
        """1-based column of :attr:`offset`."""
        return self.span[0] + 1


class EvalError(QDeformError):
    def __init__(self, message: str, span: Span):
        self.span = span
        super().__init__(f"{message} (at bytes {span[0]}-{span[1]})")


@dataclass(frozen=True)
class Number:
    text: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"
    span: Span = field(default=(0, 0), compare=False)


Node = Union[Number, Neg, Binary, Call]


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "op" | "fn" | "(" | ")" | "-" | "eof"
    text: str
    span: Span


_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_WORD = re.compile(r"[A-Za-z_]\w*")


def tokenize(source: str) -> list[Token]:
    # byte offset of every character position, plus the end
    offsets = [0]
    for ch in source:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))

    def span(i: int, j: int) -> Span:
        return offsets[i], offsets[j]

    tokens: list[Token] = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        two = source[i : i + 2]
        if two in BINARY_OPS:
            tokens.append(Token("op", two, span(i, i + 2)))
            i += 2
            continue
        if ch in UNICODE_ALIASES:
            tokens.append(Token("op", UNICODE_ALIASES[ch], span(i, i + 1)))
            i += 1
            continue
        if ch in "()-":
            tokens.append(Token(ch, ch, span(i, i + 1)))
            i += 1
            continue
        m = _NUMBER.match(source, i)
        if m:
            tokens.append(Token("num", m.group(), span(i, m.end())))
            i = m.end()
            continue
        m = _WORD.match(source, i)
        if m and m.group() in FUNCTIONS:
            tokens.append(Token("fn", m.group(), span(i, m.end())))
            i = m.end()
            continue
        end = m.end() if m else i + 1
        raise ParseError(f"unknown token {source[i:end]!r}", span(i, end), frozenset(BINARY_OPS) | {"(", ")", "NUMBER"})
    tokens.append(Token("eof", "", span(n, n)))
    return tokens


_FACTOR_START = frozenset({"NUMBER", "-", "(", *FUNCTIONS})


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.span, frozenset({kind}))
        return self.advance()

    def expr(self) -> Node:
        left = self.term()
        while self.peek().kind == "op" and BINARY_OPS[self.peek().text] in ADDITIVE:
            op = BINARY_OPS[self.advance().text]
            right = self.term()
            left = Binary(op, left, right, (left.span[0], right.span[1]))
        return left

    def term(self) -> Node:
        left = self.factor()
        while self.peek().kind == "op" and BINARY_OPS[self.peek().text] in MULTIPLICATIVE:
            op = BINARY_OPS[self.advance().text]
            right = self.factor()
            left = Binary(op, left, right, (left.span[0], right.span[1]))
        return left

    def factor(self) -> Node:
        tok = self.peek()
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", tok.span)
        try:
            if tok.kind == "num":
                self.advance()
                return Number(tok.text, tok.span)
            if tok.kind == "-":
                self.advance()
                operand = self.factor()
                return Neg(operand, (tok.span[0], operand.span[1]))
            if tok.kind == "(":
                self.advance()
                inner = self.expr()
                self.expect(")")
                return inner
            if tok.kind == "fn":
                self.advance()
                self.expect("(")
                arg = self.expr()
                close = self.expect(")")
                return Call(tok.text, arg, (tok.span[0], close.span[1]))
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.span, _FACTOR_START)
        finally:
            self.depth -= 1


def parse(source: str | bytes) -> Node:
    """Parse ``source`` into an AST; every failure is a :class:`ParseError`."""
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8: {exc.reason}", (exc.start, exc.end)) from None
    parser = _Parser(tokenize(source))
    node = parser.expr()
    tail = parser.peek()
    if tail.kind != "eof":
        raise ParseError(f"trailing input {tail.text!r}", tail.span, frozenset(BINARY_OPS) | {"end of input"})
    return node


def unparse(node: Node) -> str:
    """Text that parses back to an AST equal to ``node``."""
    if isinstance(node, Number):
        return node.text
    if isinstance(node, Neg):
        inner = unparse(node.operand)
        return f"-({inner})" if isinstance(node.operand, Binary) else f"-{inner}"
    if isinstance(node, Call):
        return f"{node.fn}({unparse(node.arg)})"
    level = ADDITIVE if node.op in ADDITIVE else MULTIPLICATIVE
    left = unparse(node.left)
    right = unparse(node.right)
    if isinstance(node.left, Binary) and level is MULTIPLICATIVE and node.left.op in ADDITIVE:
        left = f"({left})"
    # left-associative: an equal-level right child needs parentheses
    if isinstance(node.right, Binary) and (level is MULTIPLICATIVE or node.right.op in ADDITIVE):
        right = f"({right})"
    return f"{left} {OP_SPELLING[node.op]} {right}"


@dataclass(frozen=True)
class EvalContext:
    q: DeformParam
    generator: Scalar = 1
    exact: bool = False
    H: Scalar | None = None


def evaluate(node: Node, ctx: EvalContext | DeformParam | Scalar) -> Scalar:
    """Evaluate ``node``; domain failures become :class:`EvalError` with the node's span."""
    if not isinstance(ctx, EvalContext):
        ctx = EvalContext(as_param(ctx))
    try:
        return _eval(node, ctx)
    except RecursionError:
        raise EvalError("expression too deep to evaluate", node.span) from None


def _eval(node: Node, ctx: EvalContext) -> Scalar:
    if isinstance(node, Number):
        if not ctx.exact and node.text.isdigit():
            return int(node.text)
        return parse_scalar(node.text, exact=ctx.exact)
    if isinstance(node, Neg):
        return -_eval(node.operand, ctx)
    try:
        if isinstance(node, Call):
            arg = _eval(node.arg, ctx)
            if node.fn == "qexp":
                return q_exp(arg, ctx.q)
            if node.fn == "qln":
                return q_log(arg, ctx.q)
            if node.fn == "qnum":
                return to_qnumber(arg, ctx.q, ctx.generator)
            if ctx.H is None:
                raise DomainError("heine() needs H (pass --H)")
            return heine(arg, ctx.H)
        x = _eval(node.left, ctx)
        y = _eval(node.right, ctx)
        if node.op == "qadd":
            return q_sum(x, y, ctx.q)
        if node.op == "qsub":
            return q_sum(x, q_opposite(y, ctx.q), ctx.q)
        if node.op == "qmul":
            return q_product(x, y, ctx.q)
        if node.op == "qdiv":
            return q_product(x, q_inverse(y, ctx.q), ctx.q)
        return diamond(x, y, ctx.q)
    except (DomainError, OverflowError, ZeroDivisionError) as exc:
        raise EvalError(str(exc), node.span) from exc
