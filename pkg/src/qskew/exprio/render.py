"""Plain-text rendering that the expression parser reads back."""

from fractions import Fraction


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _qmono(e: int) -> str:
    if e == 0:
        return ""
    return "q" if e == 1 else f"q^{e}"


def render_laurent(p) -> str:
    items = sorted(p.coeffs.items(), reverse=True)
    if not items:
        return "0"
    parts = []
    for k, (e, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        body = _qmono(e)
        if not body:
            body = _rat(mag)
        elif mag != 1:
            body = f"{_rat(mag)}*{body}"
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def render_qelem(x) -> str:
    num = render_laurent(x.num)
    if x.den.is_one():
        return num
    den = render_laurent(x.den)
    if num == "1":
        return f"({den})^-1"
    if len(x.num.coeffs) > 1:
        num = f"({num})"
    return f"{num}*({den})^-1"


def render_monomial(e, basis: str) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"{basis}{i + 1}")
        elif k:
            parts.append(f"{basis}{i + 1}^{k}")
    return "*".join(parts)


def _split_sign(c):
    """(negative?, rendered magnitude, is_unit) for a coefficient."""
    if c.den.is_one() and len(c.num.coeffs) == 1:
        (e, r), = c.num.coeffs.items()
        neg = r < 0
        mag = -r if neg else r
        body = _qmono(e)
        if not body:
            return neg, _rat(mag), mag == 1
        if mag != 1:
            body = f"{_rat(mag)}*{body}"
        return neg, body, False
    neg = c.num.leading() < 0
    if neg:
        c = -c
    if c.den.is_one():
        return neg, f"({render_laurent(c.num)})", False
    return neg, f"({render_qelem(c)})", False


def render_terms(terms, basis: str) -> str:
    if not terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(terms):
        neg, body, unit = _split_sign(c)
        mono = render_monomial(e, basis)
        if mono:
            body = mono if unit else f"{body}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
