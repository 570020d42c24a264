"""Scalar expressions in the curve parameter ``s``.

Grammar (function calls need parentheses, ``^`` takes an integer exponent)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)*
    exponent:= INT | '-' INT | '(' ['-'] INT ')'
    atom    := NUMBER | 's' | FUNC '(' expr ')' | '(' expr ')'

Trees are small frozen dataclasses; :func:`to_text` renders a tree so that
``parse_expr(to_text(e)) == e``.
"""

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import jets
from .errors import DomainError, ExprSyntaxError, UnknownIdentifier
from .jets import Jet

PARAM = "s"
FUNCTIONS = {
    "sinh": jets.sinh,
    "cosh": jets.cosh,
    "sin": jets.sin,
    "cos": jets.cos,
    "exp": jets.exp,
    "sqrt": jets.sqrt,
}


@dataclass(frozen=True)
class Lit:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = PARAM


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Fun:
    name: str
    arg: "Expr"


Expr = Union[Lit, Var, Neg, BinOp, Pow, Fun]

# -- tokenizer --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(start, f"unexpected character {text[start]!r}")
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(pos, f"expected {op!r}, found {found}")

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(pos, f"unexpected {val!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            node = Pow(node, self.exponent())
        return node

    def exponent(self):
        paren = False
        if self.peek()[:2] == ("op", "("):
            self.take()
            paren = True
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        kind, val, pos = self.take()
        if kind != "num" or not val.isdigit():
            raise ExprSyntaxError(pos, "exponent must be an integer literal")
        if paren:
            self.expect_op(")")
        return sign * int(val)

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Lit(float(val))
        if kind == "name":
            if val == PARAM:
                return Var()
            if val in FUNCTIONS:
                nxt = self.peek()
                if nxt[:2] != ("op", "("):
                    raise ExprSyntaxError(nxt[2], f"function {val!r} requires parentheses")
                self.take()
                arg = self.expr()
                self.expect_op(")")
                return Fun(val, arg)
            raise UnknownIdentifier(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(pos, f"expected a number, 's', a function or '(', found {found}")


def parse_expr(text):
    """Parse expression text into a tree."""
    if not text or not text.strip():
        raise ExprSyntaxError(0, "empty expression")
    return _Parser(text).parse()


# -- printing ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _literal_text(value):
    text = repr(float(value))
    if text in ("inf", "nan", "-inf") or value < 0:
        raise ValueError(f"literal {value!r} has no textual form")
    return text


def to_text(node):
    """Render a tree with the minimal parentheses needed to reparse it."""
    if isinstance(node, Lit):
        return _literal_text(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Fun):
        return f"{node.name}({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        return f"-{inner}" if _prec(node.arg) >= 3 else f"-({inner})"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if _prec(node.base) < 4 or isinstance(node.base, Lit):
            base = f"({base})"
        exp = str(node.exponent) if node.exponent >= 0 else f"({node.exponent})"
        return f"{base}^{exp}"
    p = _PREC[node.op]
    left = to_text(node.left)
    if _prec(node.left) < p:
        left = f"({left})"
    right = to_text(node.right)
    # right operand of equal precedence needs parentheses (left associativity)
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- evaluation -------------------------------------------------------------

def eval_jet(node, s, order=jets.DEFAULT_ORDER):
    """Evaluate the expression and its derivatives up to ``order`` at ``s``.

    ``s`` may be an array; the result is then a batched jet.
    """
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)):
        raise ValueError("non-finite parameter")
    var = Jet.variable(s, order)
    with np.errstate(over="ignore", invalid="ignore"):
        out = _eval(node, var)
    if not out.all_finite():
        raise DomainError("non-finite result", to_text_safe(node))
    return out


def eval_value(node, s):
    return eval_jet(node, s, order=0).value


def to_text_safe(node):
    try:
        return to_text(node)
    except ValueError:
        return repr(node)


def _eval(node, var):
    if isinstance(node, Lit):
        return Jet.constant(np.full(var.shape, node.value), var.order)
    if isinstance(node, Var):
        return var
    if isinstance(node, Neg):
        return -_eval(node.arg, var)
    if isinstance(node, Fun):
        arg = _eval(node.arg, var)
        try:
            return FUNCTIONS[node.name](arg)
        except DomainError as exc:
            raise DomainError(str(exc), to_text_safe(node)) from None
    if isinstance(node, Pow):
        base = _eval(node.base, var)
        try:
            return base ** node.exponent
        except DomainError as exc:
            raise DomainError(str(exc), to_text_safe(node)) from None
    left = _eval(node.left, var)
    right = _eval(node.right, var)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    try:
        return left / right
    except DomainError as exc:
        raise DomainError(str(exc), to_text_safe(node)) from None
