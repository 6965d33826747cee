"""Exact arithmetic in the rational function field Q(q).

Elements are stored as reduced fractions of Laurent polynomials with
rational coefficients.  The stored form is canonical, so equality is a
structural comparison:

* the denominator has lowest q-exponent 0 and is monic;
* numerator and denominator are coprime as ordinary polynomials.

``q`` is a formal variable, so "q is not a root of unity" holds for free.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

try:  # C rationals when available; the pure-Python fallback gives identical results
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

__all__ = [
    "LaurentPoly", "QElem", "DivisionByZero", "EvalPole", "EvalAtZero",
    "ZERO", "ONE", "Q", "QINV", "QHAT", "qpow", "q_int", "as_qelem",
    "qq_add", "qq_mul", "qq_inv", "qq_eval", "qsum", "Rat",
]


class DivisionByZero(ZeroDivisionError):
    pass


class EvalPole(ArithmeticError):
    pass


class EvalAtZero(ArithmeticError):
    pass


def _frac(x):
    if type(x) is Rat:
        return x
    if isinstance(x, Fraction):
        return Rat(x.numerator, x.denominator)
    return Rat(x)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class LaurentPoly:
    """Finitely supported map from integer exponents of q to rationals."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs: Dict[int, Rat] = {
            int(e): _frac(c) for e, c in coeffs.items() if c != 0
        }
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: Dict[int, Rat]) -> "LaurentPoly":
        # caller guarantees Rat values and no zeros
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, c=1) -> "LaurentPoly":
        return cls({exp: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs.get(0) == 1

    def low(self) -> int:
        return min(self.coeffs)

    def high(self) -> int:
        return max(self.coeffs)

    def leading(self) -> Rat:
        return self.coeffs[self.high()]

    def shift(self, k: int) -> "LaurentPoly":
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self.coeffs.items()})

    def scale(self, c) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly._raw({})
        if c == 1:
            return self
        return LaurentPoly._raw({e: v * c for e, v in self.coeffs.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            (ea, ca), = a.items()
            if ca == 1:
                return other.shift(ea)
            return LaurentPoly._raw({ea + e: ca * c for e, c in b.items()})
        if len(b) == 1:
            return other * self
        out: Dict[int, Rat] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def evaluate(self, r) -> Fraction:
        r = _frac(r)
        return _to_fraction(sum((c * r ** e for e, c in self.coeffs.items()), Rat(0)))

    def items(self) -> List[Tuple[int, Rat]]:
        return sorted(self.coeffs.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.items())})"


# -- dense polynomial helpers (index = exponent, lowest exponent already 0) --

def _to_dense(p: LaurentPoly, low: int) -> List[Rat]:
    out = [Rat(0)] * (p.high() - low + 1)
    for e, c in p.coeffs.items():
        out[e - low] = c
    return out


def _from_dense(d: List[Rat], low: int = 0) -> LaurentPoly:
    return LaurentPoly._raw({i + low: c for i, c in enumerate(d) if c})


def _trim(d: List[Rat]) -> List[Rat]:
    while d and d[-1] == 0:
        d.pop()
    return d


def _divmod(a: List[Rat], b: List[Rat]):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [Rat(0)], _trim(a)
    quo = [Rat(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c / lb
            quo[i - db] = c
            for k in range(db + 1):
                a[i - db + k] -= c * b[k]
    return quo, _trim(a[:db])


def _gcd(a: List[Rat], b: List[Rat]) -> List[Rat]:
    """Monic gcd of two dense polynomials with nonzero leading terms."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


class QElem:
    """A canonical element of Q(q)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None):
        if den is None:
            self.num, self.den = num, _ONE_POLY
        elif den.is_zero():
            raise DivisionByZero("zero denominator")
        else:
            self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "QElem":
        x = object.__new__(cls)
        x.num, x.den, x._hash = num, den, None
        return x

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def as_qpower(self):
        """Return ``m`` when this element is exactly ``q**m``, else None."""
        if not self.den.is_one() or len(self.num.coeffs) != 1:
            return None
        (e, c), = self.num.coeffs.items()
        return e if c == 1 else None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "QElem":
        if not isinstance(other, QElem):
            other = as_qelem(other)
        if not other.num.coeffs:
            return self
        if not self.num.coeffs:
            return other
        if self.den.is_one() and other.den.is_one():
            return QElem._raw(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return QElem(self.num + other.num, self.den)
        return QElem(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QElem":
        return QElem._raw(-self.num, self.den)

    def __sub__(self, other) -> "QElem":
        if not isinstance(other, QElem):
            other = as_qelem(other)
        return self + (-other)

    def __rsub__(self, other) -> "QElem":
        return as_qelem(other) - self

    def __mul__(self, other) -> "QElem":
        if not isinstance(other, QElem):
            other = as_qelem(other)
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return QElem._raw(self.num * other.num, _ONE_POLY)
        if len(other.num.coeffs) == 1 and other.den.is_one():
            return QElem._raw(self.num * other.num, self.den)
        if len(self.num.coeffs) == 1 and self.den.is_one():
            return QElem._raw(self.num * other.num, other.den)
        return QElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        if not self.num.coeffs:
            raise DivisionByZero("inverse of zero in Q(q)")
        if len(self.num.coeffs) == 1 and self.den.is_one():
            (e, c), = self.num.coeffs.items()
            return QElem._raw(LaurentPoly._raw({-e: 1 / c}), _ONE_POLY)
        return QElem(self.den, self.num)

    def __truediv__(self, other) -> "QElem":
        if not isinstance(other, QElem):
            other = as_qelem(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QElem":
        return as_qelem(other) * self.inverse()

    def __pow__(self, k: int) -> "QElem":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QElem):
            if isinstance(other, (int, Fraction, Rat)):
                other = as_qelem(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def evaluate(self, r) -> Fraction:
        r = _frac(r)
        if r == 0:
            raise EvalAtZero("q = 0 is not in the domain of a Laurent function")
        d = self.den.evaluate(r)
        if d == 0:
            raise EvalPole(f"denominator vanishes at q = {r}")
        return self.num.evaluate(r) / d

    def canonical(self) -> "QElem":
        return QElem(self.num, self.den)

    def __repr__(self) -> str:
        return f"QElem({self})"

    def __str__(self) -> str:
        from .exprio.render import render_qelem
        return render_qelem(self)


_ONE_POLY = LaurentPoly._raw({0: Rat(1)})


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return num, _ONE_POLY
    lo = den.low()
    den = den.shift(-lo)
    num = num.shift(-lo)
    if len(den.coeffs) > 1:
        nlo = num.low()
        g = _gcd(_to_dense(num, nlo), _to_dense(den, 0))
        if len(g) > 1:
            qn, _ = _divmod(_to_dense(num, nlo), g)
            qd, _ = _divmod(_to_dense(den, 0), g)
            num, den = _from_dense(qn, nlo), _from_dense(qd, 0)
    lead = den.leading()
    if lead != 1:
        inv = 1 / lead
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def as_qelem(x) -> QElem:
    if isinstance(x, QElem):
        return x
    if isinstance(x, LaurentPoly):
        return QElem._raw(x, _ONE_POLY)
    x = _frac(x)
    return QElem._raw(LaurentPoly._raw({0: x} if x else {}), _ONE_POLY)


def qpow(m: int, c=1) -> QElem:
    """The monomial ``c * q**m``."""
    c = _frac(c)
    return QElem._raw(LaurentPoly._raw({m: c} if c else {}), _ONE_POLY)


ZERO = qpow(0, 0)
ONE = qpow(0)
Q = qpow(1)
QINV = qpow(-1)
QHAT = QElem._raw(LaurentPoly._raw({1: Rat(1), -1: Rat(-1)}),
                  _ONE_POLY)


def q_int(k: int) -> QElem:
    """The q-integer (q^k - q^-k)/(q - q^-1), as the Laurent polynomial
    q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    if k < 0:
        raise ValueError("q-integers are defined here for k >= 0")
    return QElem._raw(
        LaurentPoly._raw({k - 1 - 2 * j: Rat(1) for j in range(k)}),
        _ONE_POLY)


def qq_add(a: QElem, b: QElem) -> QElem:
    return a + b


def qq_mul(a: QElem, b: QElem) -> QElem:
    return a * b


def qq_inv(a: QElem) -> QElem:
    return a.inverse()


def qq_eval(a: QElem, r) -> Fraction:
    return a.evaluate(r)


def qsum(items: Iterable[QElem]) -> QElem:
    out = ZERO
    for x in items:
        out = out + x
    return out
