"""Generator expressions such as ``exp(t)-1`` or ``(1-(1-4*t)^(1/2))/2``.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?            # right associative
    atom   := INT | 't' | PRESET | FUNC '(' expr ')' | '(' expr ')'

``FUNC`` is ``exp`` or ``log``; ``PRESET`` names a built-in generator.
Exponents must be constant.  Errors carry the byte offset of the culprit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import Series, exp, log

FUNCTIONS = ("exp", "log")
PRESET_NAMES = ("falling", "touchard", "laguerre", "bucchianico", "identity")


class ExpressionError(ValueError):
    """Syntax or semantic problem in a generator expression."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")


# AST


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class Var:
    pos: int = 0


@dataclass(frozen=True)
class Preset:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int = 0


Node = Num | Var | Preset | Call | Neg | BinOp


# tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(source):
        ch = source[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(source) and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(source) and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("name", source[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append(Token("op", ch, i))
            i += 1
        else:
            raise ExpressionError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            raise ExpressionError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ExpressionError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take()
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.take()
            node = BinOp(op.text, node, self.unary(), op.pos)
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            op = self.take()
            return Neg(self.unary(), op.pos)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            op = self.take()
            return BinOp("^", base, self.unary(), op.pos)
        return base

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self.take()
            return Num(int(tok.text), tok.pos)
        if tok.kind == "name":
            self.take()
            if tok.text == "t":
                return Var(tok.pos)
            if tok.text in PRESET_NAMES:
                return Preset(tok.text, tok.pos)
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg, tok.pos)
            raise ExpressionError(f"unknown name {tok.text!r}", tok.pos)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        raise ExpressionError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse_expression(text: str) -> Node:
    """Parse without the generator preconditions."""
    return _Parser(text).parse()


# formatting

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return 5


def format_expr(node: Node) -> str:
    """Canonical text with the fewest parentheses that keep the tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Preset):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({format_expr(node.arg)})"
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        if _prec(node.operand) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    p = _PREC[node.op]
    left, right = format_expr(node.left), format_expr(node.right)
    if node.op == "^":
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < _PREC["neg"]:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    # left associative: an equal-precedence right operand needs parentheses
    if _prec(node.right) <= p:
        right = f"({right})"
    sep = f" {node.op} " if p == 1 else node.op
    return f"{left}{sep}{right}"


# evaluation


def _constant(node: Node) -> Fraction:
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Neg):
        return -_constant(node.operand)
    if isinstance(node, BinOp):
        a, b = _constant(node.left), _constant(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0:
                raise ExpressionError("division by zero", node.pos)
            return a / b
        if b.denominator != 1:
            raise ExpressionError("nested exponents must be integers", node.pos)
        return a ** int(b)
    raise ExpressionError("exponent must be a constant", getattr(node, "pos", None))


def evaluate(node: Node, order: int) -> Series:
    """The series denoted by ``node``, truncated at ``order``."""
    if isinstance(node, Num):
        return Series.constant(node.value, order)
    if isinstance(node, Var):
        return Series.t(order)
    if isinstance(node, Preset):
        from .sequences import preset

        return preset(node.name).generator(order)
    if isinstance(node, Neg):
        return -evaluate(node.operand, order)
    if isinstance(node, Call):
        arg = evaluate(node.arg, order)
        if node.func == "exp":
            if arg[0] != 0:
                raise ExpressionError("exp needs an argument with zero constant term", node.pos)
            return exp(arg)
        if arg[0] != 1:
            raise ExpressionError("log needs an argument with constant term 1", node.pos)
        return log(arg)
    left = evaluate(node.left, order)
    if node.op == "^":
        c = _constant(node.right)
        if c.denominator == 1:
            if c < 0 and left[0] == 0:
                raise ExpressionError("negative power of a series with zero constant term", node.pos)
            return left ** int(c)
        if left[0] != 1:
            raise ExpressionError("fractional powers need a base with constant term 1", node.pos)
        return left.pow(c)
    right = evaluate(node.right, order)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right[0] == 0:
        raise ExpressionError("division by a series with zero constant term", node.pos)
    return left / right


def parse_generator(text: str) -> Node:
    """Parse and check the generator preconditions ``f(0) = 0`` and ``f'(0) != 0``."""
    node = parse_expression(text)
    probe = evaluate(node, 2)
    if probe[0] != 0:
        raise ExpressionError(f"generator must vanish at 0, got f(0) = {probe[0]}")
    if probe[1] == 0:
        raise ExpressionError("generator must have f'(0) != 0")
    return node


def generator_series(text: str, order: int) -> Series:
    return evaluate(parse_generator(text), order)
