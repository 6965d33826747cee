"""Seeded random elements for property checks and benchmarks."""

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .coeff import LaurentPoly, QElem, qpow
from .model import DEGREES, U, monomial_degree, z1, z2
from .ore import PBWElement


@lru_cache(maxsize=None)
def monomials_up_to(degree: int) -> Tuple[Tuple[int, ...], ...]:
    """PBW exponents of U with Serre-degree at most ``degree``, in a fixed order."""
    ranges = [range(degree // d + 1) for d in DEGREES]
    out = [e for e in itertools.product(*ranges) if monomial_degree(e) <= degree]
    return tuple(sorted(out, key=lambda e: (monomial_degree(e), e)))


def random_scalar(rng: random.Random, laurent_only: bool = False) -> QElem:
    """A small nonzero element of Q(q): +-q^m times 1..3, occasionally a sum or a quotient."""
    c = qpow(rng.randint(-2, 2), rng.choice((1, -1, 2, -3, Fraction(1, 2))))
    roll = rng.random()
    if roll < 0.25:
        c = c + qpow(rng.randint(-2, 2), rng.choice((1, -1)))
    elif roll < 0.35 and not laurent_only:
        c = c / (qpow(1) + qpow(0, rng.choice((1, 2, -3))))
    return c if c else qpow(0)


def random_element(rng: random.Random, degree: int = 4, terms: int = 3,
                   constant: bool = True) -> PBWElement:
    mons = [e for e in monomials_up_to(degree) if constant or any(e)]
    out = U.zero()
    for e in rng.sample(mons, min(terms, len(mons))):
        out = out + U.monomial(e, random_scalar(rng))
    return out


def random_laurent_coeff(rng: random.Random, width: int = 4, size: int = 10 ** 30) -> QElem:
    """Large coefficients for serialization stress tests."""
    coeffs = {rng.randint(-width, width): Fraction(rng.randint(-size, size), rng.randint(1, size))
              for _ in range(rng.randint(1, 3))}
    num = LaurentPoly(coeffs)
    if num.is_zero():
        num = LaurentPoly({0: 1})
    den = LaurentPoly({0: 1, rng.randint(1, 3): rng.choice((1, -1, 2))})
    return QElem(num, den)


def random_central_linear(rng: random.Random) -> PBWElement:
    """a + b z1 + c z2 with small coefficients (some possibly zero)."""
    a, b, c = (rng.choice((0, 0, 1, -1, 2)) for _ in range(3))
    out = U.zero()
    if a:
        out = out + U.scalar(qpow(rng.randint(-1, 1), a))
    if b:
        out = out + z1().scale(qpow(rng.randint(-1, 1), b))
    if c:
        out = out + z2().scale(qpow(rng.randint(-1, 1), c))
    return out


def random_derivation_data(rng: random.Random, x_degree: int = 3):
    """(x, p1, p4, p6) for a random ad_x + p1 D1 + p4 D4 + p6 D6."""
    x = random_element(rng, x_degree, terms=rng.randint(1, 3))
    return x, random_central_linear(rng), random_central_linear(rng), random_central_linear(rng)


def random_lambdas(rng: random.Random) -> List[QElem]:
    return [random_scalar(rng) for _ in range(3)]
