"""A small grammar for algebra expressions.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*            juxtaposition multiplies
    factor := atom ['^' ['-'] int]
    atom   := generator | scalar | '(' expr ')'
    scalar := int ['/' posint] | 'q' | 'qhat' | 'qint(' int ')'

Generators: e1..e3, X1..X6, Y1..Y6, Z1..Z6, T1..T6, Delta1..Delta3, z1, z2.
"""

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

GENERATOR_RE = re.compile(r"^(?:e[1-3]|[XYZT][1-6]|Delta[1-3]|z[12])$")


class ExprSyntaxError(SyntaxError):
    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column, self.pos = line, col, pos


class UnknownSymbol(ExprSyntaxError):
    pass


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Rational:
    num: int
    den: int = 1


@dataclass(frozen=True)
class QSym:
    hat: bool = False


@dataclass(frozen=True)
class QInt:
    k: int


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]   # (sign, node)


Node = Union[Rational, QSym, QInt, Gen, Power, Product, Sum]


# -- tokenizer ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))", re.S)


def _tokens(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, m.start(3))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ExprSyntaxError(f"{msg}, found {what}", self.text, tok[2])

    def expect_op(self, ch):
        t = self.peek()
        if t[0] != "op" or t[1] != ch:
            self.error(f"expected {ch!r}")
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected input")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        lead_sign = sign
        terms.append((sign, self.term()))
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                terms.append((-1 if t[1] == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and lead_sign == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def _starts_atom(self, t) -> bool:
        return t[0] in ("int", "name") or (t[0] == "op" and t[1] == "(")

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                factors.append(self.factor())
            elif self._starts_atom(t):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            neg = False
            t = self.peek()
            if t[0] == "op" and t[1] == "-":
                self.take()
                neg = True
            t = self.peek()
            if t[0] != "int":
                self.error("expected an integer exponent")
            self.take()
            k = int(t[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.error("exponents must be integers", nxt)
            return Power(base, -k if neg else k)
        return base

    def atom(self) -> Node:
        t = self.peek()
        if t[0] == "int":
            self.take()
            num = int(t[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.peek()
                if d[0] != "int" or int(d[1]) == 0:
                    self.error("expected a positive integer denominator")
                self.take()
                return Rational(num, int(d[1]))
            return Rational(num)
        if t[0] == "name":
            self.take()
            name = t[1]
            if name == "q":
                return QSym(False)
            if name == "qhat":
                return QSym(True)
            if name == "qint":
                self.expect_op("(")
                k = self.peek()
                if k[0] != "int":
                    self.error("expected a nonnegative integer")
                self.take()
                self.expect_op(")")
                return QInt(int(k[1]))
            if GENERATOR_RE.match(name):
                return Gen(name)
            raise UnknownSymbol(f"unknown symbol {name!r}", self.text, t[2])
        if t[0] == "op" and t[1] == "(":
            self.take()
            node = self.expr()
            self.expect_op(")")
            return node
        self.error("expected a generator, scalar or '('")


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


# -- rendering ----------------------------------------------------------------

def _needs_parens(node: Node, in_power: bool) -> bool:
    if isinstance(node, (Sum, Product)):
        return True
    if in_power and (isinstance(node, Power) or (isinstance(node, Rational) and node.den != 1)):
        return True
    return False


def render_ast(node: Node) -> str:
    if isinstance(node, Rational):
        return f"{node.num}/{node.den}" if node.den != 1 else str(node.num)
    if isinstance(node, QSym):
        return "qhat" if node.hat else "q"
    if isinstance(node, QInt):
        return f"qint({node.k})"
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Power):
        b = render_ast(node.base)
        if _needs_parens(node.base, True):
            b = f"({b})"
        return f"{b}^{node.exp}"
    if isinstance(node, Product):
        parts = []
        for f in node.factors:
            s = render_ast(f)
            parts.append(f"({s})" if isinstance(f, (Sum, Product)) else s)
        return "*".join(parts)
    if isinstance(node, Sum):
        out = []
        for k, (sign, t) in enumerate(node.terms):
            s = render_ast(t)
            if isinstance(t, Sum):
                s = f"({s})"
            if k == 0:
                out.append(f"-{s}" if sign < 0 else s)
            else:
                out.append(f" - {s}" if sign < 0 else f" + {s}")
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")
