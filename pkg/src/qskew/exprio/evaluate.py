"""Evaluate an expression AST in one level of the tower or in the quantum torus."""

import re
from typing import Union

from ..coeff import Q, QElem, QHAT, as_qelem, q_int
from ..model import (LEVEL_OF_BASIS, LEVELS, cauchon_generator_in_torus, delta, embed_in_torus,
                     membership, presentation, serre_generator, z1, z2)
from ..ore import PBWElement
from ..torus import CAUCHON_TORUS, TorusElement
from .parser import Gen, Node, Power, Product, QInt, QSym, Rational, Sum, parse_expr


class ContextViolation(ValueError):
    pass


Value = Union[QElem, PBWElement, TorusElement]
TORUS = "torus"


def _check_context(context):
    if context != TORUS and context not in LEVELS:
        raise ValueError(f"context must be one of {LEVELS} or 'torus'")


def _home(name: str):
    """(level, element) where a symbol is natively defined."""
    head, idx = re.fullmatch(r"([A-Za-z]+)(\d)", name).groups()
    idx = int(idx)
    if head == "e":
        return 7, serre_generator(idx)
    if head == "Delta":
        return 7, delta(idx)
    if head == "z":
        return 7, (z1, z2)[idx - 1]()
    level = LEVEL_OF_BASIS[head]
    return level, presentation(level).gen(idx)


def _symbol(name: str, context) -> Value:
    level, u = _home(name)
    if context == TORUS:
        if name[0] in "XYZT" and len(name) == 2:
            return cauchon_generator_in_torus(level, int(name[1]))
        return embed_in_torus(u)
    if level == context:
        return u
    v = membership(embed_in_torus(u), context)
    if v is None:
        raise ContextViolation(f"{name} does not lie in A_{context}")
    return v


def _invert(u, context):
    if context == TORUS:
        if not u.is_monomial():
            raise ContextViolation("only monomials are invertible in the torus")
        return u.inverse()
    if len(u.terms) != 1:
        raise ContextViolation("only monomials in the inverted generators have inverses")
    (e, c), = u.terms.items()
    if any(k and i + 1 < context for i, k in enumerate(e)):
        raise ContextViolation(
            f"negative power of a generator that is not inverted in A_{context}")
    word = [(i + 1, -k) for i, k in reversed(list(enumerate(e))) if k]
    return u.pres.normal_form(word).scale(c.inverse())


def _lift(v: Value, context):
    if isinstance(v, QElem):
        return (CAUCHON_TORUS if context == TORUS else presentation(context)).scalar(v)
    return v


def _eval(node: Node, context) -> Value:
    if isinstance(node, Rational):
        return as_qelem(node.num) / as_qelem(node.den)
    if isinstance(node, QSym):
        return QHAT if node.hat else Q
    if isinstance(node, QInt):
        return q_int(node.k)
    if isinstance(node, Gen):
        return _symbol(node.name, context)
    if isinstance(node, Power):
        base = _eval(node.base, context)
        if isinstance(base, QElem):
            return base ** node.exp
        if node.exp >= 0:
            return base ** node.exp
        return _invert(base, context) ** (-node.exp)
    if isinstance(node, Product):
        acc = None
        for f in node.factors:
            v = _eval(f, context)
            if acc is None:
                acc = v
            elif isinstance(acc, QElem) and isinstance(v, QElem):
                acc = acc * v
            elif isinstance(v, QElem):
                acc = acc.scale(v)
            elif isinstance(acc, QElem):
                acc = v.scale(acc)
            else:
                acc = acc * v
        return acc
    if isinstance(node, Sum):
        acc = None
        for sign, t in node.terms:
            v = _eval(t, context)
            if sign < 0:
                v = -v
            if acc is None:
                acc = v
            elif isinstance(acc, QElem) and isinstance(v, QElem):
                acc = acc + v
            else:
                acc = _lift(acc, context) + _lift(v, context)
        return acc
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(ast: Node, context=7) -> Union[PBWElement, TorusElement]:
    """Exact value of ``ast`` in A_context (context 7, 6, 5, 4) or in the torus."""
    _check_context(context)
    return _lift(_eval(ast, context), context)


def evaluate_text(text: str, context=7) -> Union[PBWElement, TorusElement]:
    return evaluate(parse_expr(text), context)
