"""Series expressions: a small recursive-descent parser and its lowering
onto truncated series.

Grammar (whitespace-insensitive)::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := atom ("^" exponent)?
    atom     := ["-"] integer | "t" | name "(" expr ")" | "(" expr ")"
    exponent := rational | "(" rational ")"
    rational := ["-"] integer ["/" positive-integer]

``^`` binds tightest and does not chain: ``t^2^3`` is a syntax error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ElaborationError, ParseError, SeriesError
from .series import Series, exp_series, log_series, pow_int, pow_rat, series_mul, series_recip

FUNCTIONS = ("exp", "log")
MAX_DEPTH = 100
MAX_EXPONENT = 1000


# --- AST ----------------------------------------------------------------

@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class BinOp:
    left: "Expr"
    right: "Expr"


class Add(BinOp):
    pass


class Sub(BinOp):
    pass


class Mul(BinOp):
    pass


class Div(BinOp):
    pass


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Fraction


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"


Expr = Union[RationalLit, Var, Add, Sub, Mul, Div, Pow, Call]


def _children(node) -> tuple:
    if isinstance(node, BinOp):
        return (node.left, node.right)
    if isinstance(node, Pow):
        return (node.base,)
    if isinstance(node, Call):
        return (node.arg,)
    return ()


def _postorder(root: Expr, visit):
    """Fold ``visit(node, child_values)`` bottom-up without recursion.

    Left-deep chains like ``t+t+...+t`` get as long as the input.
    """
    values = []
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        kids = _children(node)
        if kids and not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(kids))
            continue
        args = values[len(values) - len(kids):]
        del values[len(values) - len(kids):]
        values.append(visit(node, args))
    return values[0]


def _dump_node(node, args):
    if isinstance(node, RationalLit):
        return str(node.value)
    if isinstance(node, Var):
        return "Var_t"
    if isinstance(node, BinOp):
        return f"{type(node).__name__}({args[0]}, {args[1]})"
    if isinstance(node, Pow):
        return f"Pow({args[0]}, {node.exponent})"
    if isinstance(node, Call):
        return f"Call({node.name}, {args[0]})"
    raise TypeError(node)


def dump(node: Expr) -> str:
    """Compact constructor-style rendering, e.g. ``Div(Var_t, Sub(1, Var_t))``."""
    return _postorder(node, _dump_node)


# --- lexer --------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start = i
        if ch.isascii() and ch.isdigit():
            while i < len(text) and text[i].isascii() and text[i].isdigit():
                i += 1
            kind = "INT"
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            while i < len(text) and text[i].isascii() and (text[i].isalnum() or text[i] == "_"):
                i += 1
            kind = "NAME"
        elif ch in "+-*/^()":
            i += 1
            kind = "OP"
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        tokens.append(Token(kind, text[start:i], line, col))
        col += i - start
    tokens.append(Token("END", "", line, col))
    return tokens


# --- parser -------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def integer(self) -> int:
        if self.tok.kind != "INT":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        tok = self.advance()
        try:
            return int(tok.text)
        except ValueError:  # integer string conversion limit
            raise self.error("integer literal too long", tok) from None

    def parse(self) -> Expr:
        if self.tok.kind == "END":
            raise self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        self.depth -= 1
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.at("^"):
            self.advance()
            node = Pow(node, self.exponent())
            if self.at("^"):
                raise self.error("'^' does not chain; add parentheses")
        return node

    def atom(self) -> Expr:
        tok = self.tok
        if self.at("-"):
            self.advance()
            return RationalLit(Fraction(-self.integer()))
        if tok.kind == "INT":
            return RationalLit(Fraction(self.integer()))
        if tok.kind == "NAME":
            self.advance()
            if tok.text == "t":
                return Var()
            if tok.text not in FUNCTIONS:
                raise self.error(f"unknown function {tok.text!r}", tok)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(tok.text, arg)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise self.error(f"expected a number, 't', a function or '(', found {found!r}")

    def rational(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        num = self.integer()
        den = 1
        if self.at("/"):
            self.advance()
            tok = self.tok
            den = self.integer()
            if den == 0:
                raise self.error("zero denominator", tok)
        return Fraction(sign * num, den)

    def exponent(self) -> Fraction:
        if self.at("("):
            self.advance()
            value = self.rational()
            self.expect(")")
            return value
        return self.rational()


def parse_series_expr(text: str) -> Expr:
    return _Parser(text).parse()


# --- lowering -----------------------------------------------------------

def elaborate(node: Expr, order: int) -> Series:
    try:
        return _lower(node, order)
    except ElaborationError:
        raise
    except SeriesError as exc:
        raise ElaborationError(str(exc)) from None


def _lower(node: Expr, N: int) -> Series:
    return _postorder(node, lambda n, args: _lower_node(n, args, N))


def _lower_node(node, args, N: int) -> Series:
    if isinstance(node, RationalLit):
        return Series.constant(node.value, N)
    if isinstance(node, Var):
        return Series.t(N)
    if isinstance(node, Add):
        return args[0] + args[1]
    if isinstance(node, Sub):
        return args[0] - args[1]
    if isinstance(node, Mul):
        return series_mul(args[0], args[1])
    if isinstance(node, Div):
        if args[1][0] == 0:
            raise ElaborationError("division by a series with zero constant term")
        return series_mul(args[0], series_recip(args[1]))
    if isinstance(node, Pow):
        base, e = args[0], node.exponent
        if abs(e.numerator) > MAX_EXPONENT:
            raise ElaborationError(f"exponent {e} exceeds the supported magnitude {MAX_EXPONENT}")
        if e.denominator == 1:
            if e < 0 and base[0] == 0:
                raise ElaborationError("negative power of a series with zero constant term")
            return pow_int(base, int(e))
        if base[0] != 1:
            raise ElaborationError("fractional power needs a base with constant term 1")
        return pow_rat(base, e)
    if isinstance(node, Call):
        arg = args[0]
        if node.name == "exp":
            if arg[0] != 0:
                raise ElaborationError("exp needs an argument with constant term 0")
            return exp_series(arg)
        if arg[0] != 1:
            raise ElaborationError("log needs an argument with constant term 1")
        return log_series(arg)
    raise TypeError(node)


def series_from_text(text: str, order: int) -> Series:
    return elaborate(parse_series_expr(text), order)
