"""Text syntax for scalars, forms, multivector fields, and sections.

The grammar, used verbatim by the command line and by failure witnesses
in JSON reports:

    expr      := wedgeTerm (("+"|"-") wedgeTerm)* ;
    wedgeTerm := prod ("^" prod)* ;
    prod      := atom ("*" atom)* ;
    atom      := RATIONAL | VAR | COVEC | VEC | "(" expr ")" | "-" atom ;
    RATIONAL  := INT ("/" INT)? ;
    VAR       := "x" INDEX ;   COVEC := "dx" INDEX ;   VEC := "@" INDEX ;
    section   := "(" expr ";" expr ")" ;

"*" needs at least one scalar operand; "^" needs operands of one
variance, scalars acting as scale factors on either side.  Values print
back through str() in a canonical order, and parsing that text returns
an equal value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .courant import Section
from .exterior import Context, Form, MultiVec
from .scalar import Poly


class DslError(ValueError):
    """Base for all surface-syntax errors; carries the source position."""

    def __init__(self, position: int, message: str):
        super().__init__(f"at position {position}: {message}")
        self.position = position


class LexError(DslError):
    pass


class ParseError(DslError):
    pass


class GradingError(DslError):
    pass


# -- lexer ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # RATIONAL VAR COVEC VEC OP EOF
    text: str
    position: int
    value: object = None


_OPERATORS = set("+-*^();")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch in _OPERATORS:
            tokens.append(Token("OP", ch, start))
            i += 1
            continue
        if ch.isdigit():
            while i < length and text[i].isdigit():
                i += 1
            numerator = int(text[start:i])
            if i < length and text[i] == "/":
                j = i + 1
                if j >= length or not text[j].isdigit():
                    raise LexError(i, "expected digits after '/' in a rational literal")
                i = j
                while i < length and text[i].isdigit():
                    i += 1
                denominator = int(text[j:i])
                if denominator == 0:
                    raise LexError(start, "rational literal with zero denominator")
                value = Fraction(numerator, denominator)
            else:
                value = Fraction(numerator)
            tokens.append(Token("RATIONAL", text[start:i], start, value))
            continue
        if ch == "@":
            i += 1
            j = i
            while i < length and text[i].isdigit():
                i += 1
            if i == j:
                raise LexError(start, "expected a coordinate index after '@'")
            tokens.append(Token("VEC", text[start:i], start, int(text[j:i])))
            continue
        if ch.isalpha():
            while i < length and text[i].isalpha():
                i += 1
            word = text[start:i]
            j = i
            while i < length and text[i].isdigit():
                i += 1
            if i == j or word not in ("x", "dx"):
                raise LexError(start, f"unrecognized name {text[start:i]!r}")
            index = int(text[j:i])
            kind = "VAR" if word == "x" else "COVEC"
            tokens.append(Token(kind, text[start:i], start, index))
            continue
        raise LexError(start, f"unexpected character {ch!r}")
    tokens.append(Token("EOF", "", length))
    return tokens


# -- abstract syntax -----------------------------------------------------


@dataclass(frozen=True)
class Node:
    op: str  # rat var covec vec neg add sub mul wedge
    position: int
    value: object = None
    left: "Node | None" = None
    right: "Node | None" = None


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token.kind != "OP" or token.text != text:
            raise ParseError(token.position, f"expected {text!r}, found {token.text or 'end of input'!r}")
        return self.advance()

    def parse_expr(self) -> Node:
        node = self.parse_wedge()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance()
            right = self.parse_wedge()
            node = Node("add" if op.text == "+" else "sub", op.position, left=node, right=right)
        return node

    def parse_wedge(self) -> Node:
        node = self.parse_prod()
        while self.peek().kind == "OP" and self.peek().text == "^":
            op = self.advance()
            right = self.parse_prod()
            node = Node("wedge", op.position, left=node, right=right)
        return node

    def parse_prod(self) -> Node:
        node = self.parse_atom()
        while self.peek().kind == "OP" and self.peek().text == "*":
            op = self.advance()
            right = self.parse_atom()
            node = Node("mul", op.position, left=node, right=right)
        return node

    def parse_atom(self) -> Node:
        token = self.peek()
        if token.kind == "RATIONAL":
            self.advance()
            return Node("rat", token.position, token.value)
        if token.kind == "VAR":
            self.advance()
            return Node("var", token.position, token.value)
        if token.kind == "COVEC":
            self.advance()
            return Node("covec", token.position, token.value)
        if token.kind == "VEC":
            self.advance()
            return Node("vec", token.position, token.value)
        if token.kind == "OP" and token.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        if token.kind == "OP" and token.text == "-":
            self.advance()
            return Node("neg", token.position, left=self.parse_atom())
        raise ParseError(token.position, f"expected a value, found {token.text or 'end of input'!r}")


# -- elaboration with grading checks --------------------------------------


def _is_zero_scalar(value) -> bool:
    return isinstance(value, Poly) and value.is_zero


def _kind_name(value) -> str:
    if isinstance(value, Poly):
        return "scalar"
    if isinstance(value, Form):
        return f"form of degree {value.degree}"
    return f"multivector of degree {value.degree}"


def _check_index(node: Node, ctx: Context) -> int:
    if not 1 <= node.value <= ctx.m:
        raise GradingError(node.position, f"coordinate index {node.value} out of range 1..{ctx.m}")
    return node.value


def _elaborate(node: Node, ctx: Context):
    m = ctx.m
    if node.op == "rat":
        return Poly.const(m, node.value)
    if node.op == "var":
        return Poly.var(m, _check_index(node, ctx))
    if node.op == "covec":
        return Form.basis(m, (_check_index(node, ctx),))
    if node.op == "vec":
        return MultiVec.basis(m, (_check_index(node, ctx),))
    if node.op == "neg":
        return -_elaborate(node.left, ctx)
    left = _elaborate(node.left, ctx)
    right = _elaborate(node.right, ctx)
    if node.op in ("add", "sub"):
        if _is_zero_scalar(left) and not isinstance(right, Poly):
            left = type(right).zero(m, right.degree)
        if _is_zero_scalar(right) and not isinstance(left, Poly):
            right = type(left).zero(m, left.degree)
        if type(left) is not type(right) or getattr(left, "degree", None) != getattr(
            right, "degree", None
        ):
            raise GradingError(
                node.position,
                f"cannot {'add' if node.op == 'add' else 'subtract'} "
                f"{_kind_name(right)} and {_kind_name(left)}",
            )
        return left + right if node.op == "add" else left - right
    if node.op == "mul":
        if isinstance(left, Poly) or isinstance(right, Poly):
            return left * right
        raise GradingError(node.position, "'*' needs at least one scalar operand; use '^' on tensors")
    if node.op == "wedge":
        if isinstance(left, Poly) or isinstance(right, Poly):
            return left * right
        if type(left) is not type(right):
            raise GradingError(
                node.position, f"cannot wedge {_kind_name(left)} with {_kind_name(right)}"
            )
        return left.wedge(right)
    raise AssertionError(f"unhandled node {node.op}")


def _coerce(value, ctx: Context, expected, position: int = 0):
    if expected == "scalar":
        if isinstance(value, Poly):
            return value
        if isinstance(value, Form) and value.degree == 0:
            return value.coeff(())
        raise GradingError(position, f"expected a scalar, got {_kind_name(value)}")
    kind, degree = expected
    cls = Form if kind == "form" else MultiVec
    if isinstance(value, cls) and value.degree == degree:
        return value
    if _is_zero_scalar(value):
        return cls.zero(ctx.m, degree)
    if isinstance(value, Poly) and degree == 0:
        return cls(ctx.m, 0, {(): value})
    raise GradingError(
        position, f"expected a {kind} of degree {degree}, got {_kind_name(value)}"
    )


def parse(text: str, ctx: Context, expected):
    """Parse and grade-check a value of the expected kind.

    expected is "scalar", "section", ("form", k), or ("multivec", k).
    """
    tokens = tokenize(text)
    parser = _Parser(tokens)
    if expected == "section":
        open_paren = parser.expect("(")
        vec_node = parser.parse_expr()
        parser.expect(";")
        form_node = parser.parse_expr()
        parser.expect(")")
        tail = parser.peek()
        if tail.kind != "EOF":
            raise ParseError(tail.position, f"unexpected trailing input {tail.text!r}")
        vec_value = _coerce(_elaborate(vec_node, ctx), ctx, ("multivec", 1), vec_node.position)
        form_value = _coerce(_elaborate(form_node, ctx), ctx, ("form", ctx.n), form_node.position)
        return Section(ctx, vec_value, form_value)
    node = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "EOF":
        raise ParseError(tail.position, f"unexpected trailing input {tail.text!r}")
    return _coerce(_elaborate(node, ctx), ctx, expected, node.position)


def parse_scalar(text: str, ctx: Context) -> Poly:
    return parse(text, ctx, "scalar")


def parse_form(text: str, ctx: Context, degree: int) -> Form:
    return parse(text, ctx, ("form", degree))


def parse_multivec(text: str, ctx: Context, degree: int) -> MultiVec:
    return parse(text, ctx, ("multivec", degree))


def parse_section(text: str, ctx: Context) -> Section:
    return parse(text, ctx, "section")


def render(value) -> str:
    """Canonical text for any value; parse(render(v)) returns v exactly."""
    return str(value)


def kind_of(value):
    """The `expected` descriptor matching a value, for round-tripping."""
    if isinstance(value, Poly):
        return "scalar"
    if isinstance(value, Form):
        return ("form", value.degree)
    if isinstance(value, MultiVec):
        return ("multivec", value.degree)
    if isinstance(value, Section):
        return "section"
    raise TypeError(f"no surface syntax for {type(value).__name__}")
