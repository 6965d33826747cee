"""U_q(sl4+), its Cauchon bases X, Y, Z, T and the localization tower.

Levels follow the tower A_7 = U ⊂ A_6 ⊂ A_5 ⊂ A_4 ⊂ P(Lambda):

    level 7: X-basis, nothing inverted
    level 6: Y-basis, Y6 inverted
    level 5: Z-basis, Z5, Z6 inverted
    level 4: T-basis, T4, T5, T6 inverted

The PBW basis of A_r is X^(r)_1^g1 ... X^(r)_6^g6 with g_i >= 0 for i < r.
"""

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ONE, Q, QHAT, QINV, ZERO, QElem, as_qelem, qpow
from .linalg import solve
from .ore import OrePresentation, PBWElement, qcommute_exponent
from .torus import CAUCHON_TORUS, TorusElement

LEVELS = (7, 6, 5, 4)
BASIS_OF_LEVEL = {7: "X", 6: "Y", 5: "Z", 4: "T"}
LEVEL_OF_BASIS = {v: k for k, v in BASIS_OF_LEVEL.items()}

# Serre-degree and weight (in alpha_1, alpha_2, alpha_3) of X_1..X_6
DEGREES = (1, 2, 3, 1, 2, 1)
WEIGHTS = ((1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1), (0, 0, 1))

QQH = Q / QHAT  # q * qhat^-1


class ZeroElement(ValueError):
    pass


class DegreeOverflow(ValueError):
    pass


def _e(*pairs) -> Tuple[int, ...]:
    out = [0] * 6
    for i, k in pairs:
        out[i - 1] = k
    return tuple(out)


# -- Ore data ----------------------------------------------------------------
# X_j X_i = q^TAU[(j, i)] X_i X_j + DELTA[(j, i)]

TAU = {
    (2, 1): -1,
    (3, 1): -1, (3, 2): -1,
    (4, 1): 1, (4, 2): -1, (4, 3): 0,
    (5, 1): 1, (5, 2): 0, (5, 3): -1, (5, 4): -1,
    (6, 1): 0, (6, 2): 1, (6, 3): -1, (6, 4): 1, (6, 5): -1,
}

DELTA = {
    (4, 1): {_e((2, 1)): -Q},
    (5, 1): {_e((3, 1)): -Q},
    (5, 2): {_e((3, 1), (4, 1)): -QHAT},
    (6, 2): {_e((3, 1)): -Q},
    (6, 4): {_e((5, 1)): -Q},
}

# the skew-derivations that survive at each stage of the deleting algorithm
_SURVIVING = {
    "X": set(DELTA),
    "Y": {(4, 1), (5, 1), (5, 2)},
    "Z": {(4, 1)},
    "T": set(),
}


def ore_presentation(basis: str, invertible=()) -> OrePresentation:
    corr = {k: v for k, v in DELTA.items() if k in _SURVIVING[basis]}
    return OrePresentation(6, TAU, corr, invertible, basis,
                           name=f"{basis}{sorted(invertible) if invertible else ''}")


# unlocalized algebras U, R^(6), R^(5), R-bar
U = ore_presentation("X")
R6 = ore_presentation("Y")
R5 = ore_presentation("Z")
RBAR = ore_presentation("T")

PRESENTATIONS = {
    7: U,
    6: ore_presentation("Y", {6}),
    5: ore_presentation("Z", {5, 6}),
    4: ore_presentation("T", {4, 5, 6}),
}


def presentation(level: int) -> OrePresentation:
    if level not in PRESENTATIONS:
        raise IndexError(f"level must be one of {LEVELS}")
    return PRESENTATIONS[level]


def level_of(u: PBWElement) -> int:
    return LEVEL_OF_BASIS[u.pres.basis]


# -- Cauchon substitutions ------------------------------------------------------
# each entry: generator index -> list of (coefficient, word in the next basis)

# generators of level r written in the generators of level r - 1
EXPAND_DOWN = {
    7: {2: [(ONE, [(2, 1)]), (QQH, [(3, 1), (6, -1)])],
        4: [(ONE, [(4, 1)]), (QQH, [(5, 1), (6, -1)])]},
    6: {1: [(ONE, [(1, 1)]), (QQH, [(3, 1), (5, -1)])],
        2: [(ONE, [(2, 1)]), (Q, [(3, 1), (4, 1), (5, -1)])]},
    5: {1: [(ONE, [(1, 1)]), (QQH, [(2, 1), (4, -1)])]},
}

# the deleting-derivation step: generators of level r - 1 in those of level r
DELETE_UP = {
    7: {2: [(ONE, [(2, 1)]), (-QQH, [(3, 1), (6, -1)])],
        4: [(ONE, [(4, 1)]), (-QQH, [(5, 1), (6, -1)])]},
    6: {1: [(ONE, [(1, 1)]), (-QQH, [(3, 1), (5, -1)])],
        2: [(ONE, [(2, 1)]), (-Q, [(3, 1), (4, 1), (5, -1)])]},
    5: {1: [(ONE, [(1, 1)]), (-QQH, [(2, 1), (4, -1)])]},
}


def substitution(table, r: int, i: int):
    return table.get(r, {}).get(i, [(ONE, [(i, 1)])])


def _eval_words(entries, images: Sequence[TorusElement]) -> TorusElement:
    out = CAUCHON_TORUS.zero()
    for c, word in entries:
        term = CAUCHON_TORUS.one()
        for k, e in word:
            term = term * (images[k - 1] ** e)
        out = out + term.scale(c)
    return out


@lru_cache(maxsize=None)
def cauchon_generator_in_torus(level: int, i: int) -> TorusElement:
    """Torus expansion of the i-th generator of the given level."""
    if level not in LEVELS:
        raise IndexError(f"level must be one of {LEVELS}")
    if not 1 <= i <= 6:
        raise IndexError(f"generator index {i} out of range 1..6")
    if level == 4:
        return CAUCHON_TORUS.gen(i)
    below = [cauchon_generator_in_torus(level - 1, k) for k in range(1, 7)]
    return _eval_words(substitution(EXPAND_DOWN, level, i), below)


@lru_cache(maxsize=None)
def _gen_power(level: int, i: int, k: int) -> TorusElement:
    g = cauchon_generator_in_torus(level, i)
    if k < 0:
        return g.inverse() ** (-k)
    return g ** k


_embed_cache: Dict[Tuple[int, tuple], TorusElement] = {}


def embed_monomial(level: int, e) -> TorusElement:
    key = (level, tuple(e))
    hit = _embed_cache.get(key)
    if hit is None:
        hit = CAUCHON_TORUS.one()
        for i, k in enumerate(e):
            if k:
                hit = hit * _gen_power(level, i + 1, k)
        _embed_cache[key] = hit
    return hit


def embed_in_torus(u: PBWElement) -> TorusElement:
    level = level_of(u)
    out: Dict[tuple, list] = {}
    for e, c in u.terms.items():
        for g, d in embed_monomial(level, e).terms.items():
            out.setdefault(g, []).append(c * d)
    terms = {}
    for g, cs in out.items():
        v = cs[0]
        for x in cs[1:]:
            v = v + x
        if v:
            terms[g] = v
    return TorusElement(CAUCHON_TORUS, terms)


def _level_key(level: int, g):
    if level == 7:
        return (g[0], g[1], g[3])
    if level == 6:
        return (g[0], g[1])
    if level == 5:
        return (g[0],)
    return ()


def membership(t: TorusElement, level: int) -> Optional[PBWElement]:
    """Expansion of ``t`` in the PBW basis of A_level, or None if t is not in A_level.

    Graded triangular elimination: every basis monomial of A_level embeds as
    T^g plus terms of strictly smaller level key.
    """
    pres = presentation(level)
    rem = dict(t.terms)
    out: Dict[tuple, QElem] = {}
    while rem:
        g = max(rem, key=lambda h: (_level_key(level, h), h))
        if any(g[i] < 0 for i in range(level - 1)):
            return None
        c = rem[g]
        out[g] = c
        for h, d in embed_monomial(level, g).terms.items():
            v = rem.get(h)
            v = -c * d if v is None else v - c * d
            if v:
                rem[h] = v
            else:
                rem.pop(h, None)
    return PBWElement(pres, out)


def to_basis(u: PBWElement, level: int) -> Optional[PBWElement]:
    """Rewrite an element in the PBW basis of another level, when it lies there."""
    if level_of(u) == level:
        return u
    return membership(embed_in_torus(u), level)


def from_torus_rigid(t: TorusElement, level: int) -> PBWElement:
    hit = membership(t, level)
    if hit is None:
        raise ValueError(f"element is not in A_{level}")
    return hit


# -- generators, Delta elements, center ----------------------------------------

def serre_generator(i: int) -> PBWElement:
    if i not in (1, 2, 3):
        raise IndexError("Serre generators are e1, e2, e3")
    return U.gen((1, 4, 6)[i - 1])


def X(i: int) -> PBWElement:
    return U.gen(i)


QHAT2 = QHAT * QHAT


@lru_cache(maxsize=None)
def delta(i: int) -> PBWElement:
    if i == 1:
        return U.monomial(_e((3, 1)))
    if i == 2:
        return U.monomial(_e((2, 1), (5, 1))) + U.monomial(_e((3, 1), (4, 1)), -Q)
    if i == 3:
        return (U.monomial(_e((1, 1), (4, 1), (6, 1)), QHAT2)
                + U.monomial(_e((2, 1), (6, 1)), -Q * QHAT)
                + U.monomial(_e((1, 1), (5, 1)), -Q * QHAT)
                + U.monomial(_e((3, 1)), Q * Q))
    raise IndexError("Delta elements are Delta1, Delta2, Delta3")


@lru_cache(maxsize=None)
def delta_in_basis(i: int, level: int) -> PBWElement:
    """The Delta element written in the PBW basis of the given level."""
    if level == 7:
        return delta(i)
    return membership(embed_in_torus(delta(i)), level)


def z1() -> PBWElement:
    return delta(1) * delta(3)


def z2() -> PBWElement:
    return delta(2)


# -- gradings ------------------------------------------------------------------

def monomial_weight(e) -> Tuple[int, int, int]:
    return tuple(sum(WEIGHTS[i][a] * e[i] for i in range(6)) for a in range(3))


def monomial_degree(e) -> int:
    return sum(DEGREES[i] * e[i] for i in range(6))


def weight(u: PBWElement) -> Optional[Tuple[int, int, int]]:
    if u.is_zero():
        raise ZeroElement("weight of zero is undefined")
    ws = {monomial_weight(e) for e in u.terms}
    return ws.pop() if len(ws) == 1 else None


def total_degree(u: PBWElement) -> int:
    if u.is_zero():
        raise ZeroElement("degree of zero is undefined")
    return max(monomial_degree(e) for e in u.terms)


def top_component(u: PBWElement) -> PBWElement:
    t = total_degree(u)
    return PBWElement(u.pres, {e: c for e, c in u.terms.items() if monomial_degree(e) == t})


def homogeneous_component(u: PBWElement, d: int) -> PBWElement:
    return PBWElement(u.pres, {e: c for e, c in u.terms.items() if monomial_degree(e) == d})


# -- homomorphisms out of U ------------------------------------------------------

def pbw_from_serre(images: Sequence[PBWElement]) -> List[PBWElement]:
    """Images of X_1..X_6 given images of e1, e2, e3 under an algebra map."""
    a1, a2, a3 = images
    x2 = a1 * a2 - (a2 * a1).scale(QINV)
    x5 = a2 * a3 - (a3 * a2).scale(QINV)
    x3 = a1 * x5 - (x5 * a1).scale(QINV)
    return [a1, x2, x3, a2, x5, a3]


def apply_homomorphism(images_e: Sequence[PBWElement], u: PBWElement) -> PBWElement:
    if level_of(u) != 7:
        raise ValueError("homomorphisms are applied to elements of U")
    xs = pbw_from_serre(images_e)
    pres = xs[0].pres
    powers: Dict[Tuple[int, int], PBWElement] = {}

    def pw(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = xs[i] ** k
        return powers[key]

    out = pres.zero()
    for e, c in u.terms.items():
        term = pres.one()
        for i, k in enumerate(e):
            if k:
                term = term * pw(i, k)
        out = out + term.scale(c)
    return out


def serre_relations(a1: PBWElement, a2: PBWElement, a3: PBWElement) -> Dict[str, PBWElement]:
    """Values of the defining relations on three elements (all zero for e1, e2, e3)."""
    a = {1: a1, 2: a2, 3: a3}
    qq = Q + QINV
    out = {"e1e3-e3e1": a1 * a3 - a3 * a1}
    for i, j in ((1, 2), (2, 1), (2, 3), (3, 2)):
        x, y = a[i], a[j]
        out[f"serre({i},{j})"] = x * x * y - (x * y * x).scale(qq) + y * x * x
    return out


# relation words in the Serre generators: name -> list of (coefficient, word)
SERRE_WORDS = {
    "e1e3-e3e1": [(ONE, (1, 3)), (-ONE, (3, 1))],
}
for _i, _j in ((1, 2), (2, 1), (2, 3), (3, 2)):
    SERRE_WORDS[f"serre({_i},{_j})"] = [(ONE, (_i, _i, _j)), (-(Q + QINV), (_i, _j, _i)),
                                        (ONE, (_j, _i, _i))]


# -- automorphisms -----------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """The automorphism eta^eps o phi_lambda of U."""

    lambdas: Tuple[QElem, QElem, QElem] = (ONE, ONE, ONE)
    eps: int = 0

    def __post_init__(self):
        lam = tuple(as_qelem(x) for x in self.lambdas)
        if len(lam) != 3 or any(x.is_zero() for x in lam):
            raise ValueError("torus scalars must be three nonzero elements of Q(q)")
        if self.eps not in (0, 1):
            raise ValueError("diagram flag must be 0 or 1")
        object.__setattr__(self, "lambdas", lam)

    @classmethod
    def eta(cls) -> "Automorphism":
        return cls(eps=1)

    @classmethod
    def torus(cls, *lambdas) -> "Automorphism":
        return cls(tuple(lambdas), 0)

    def generator_images(self) -> List[PBWElement]:
        out = []
        for i in (1, 2, 3):
            j = 4 - i if self.eps else i
            out.append(serre_generator(j).scale(self.lambdas[i - 1]))
        return out

    def __call__(self, u: PBWElement) -> PBWElement:
        return apply_homomorphism(self.generator_images(), u)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other, using eta o phi_(a,b,c) o eta = phi_(c,b,a)."""
        lam = self.lambdas[::-1] if other.eps else self.lambdas
        return Automorphism(tuple(a * b for a, b in zip(lam, other.lambdas)),
                            (self.eps + other.eps) % 2)

    def inverse(self) -> "Automorphism":
        inv = tuple(x.inverse() for x in self.lambdas)
        if self.eps:
            inv = inv[::-1]
        return Automorphism(inv, self.eps)


def apply_automorphism(sigma: Automorphism, u: PBWElement) -> PBWElement:
    return sigma(u)


def verify_automorphism(images: Sequence[PBWElement]) -> bool:
    """True iff the three images satisfy every defining relation."""
    return all(v.is_zero() for v in serre_relations(*images).values())


# -- Delta-subalgebra --------------------------------------------------------------

@lru_cache(maxsize=None)
def delta_monomial(a: int, b: int, c: int) -> PBWElement:
    return delta(1) ** a * delta(2) ** b * delta(3) ** c


def solve_bound() -> int:
    return int(os.environ.get("QSKEW_SOLVE_BOUND", "12"))


def express_in_deltas(u: PBWElement, bound: Optional[int] = None) -> Optional[Dict[Tuple[int, int, int], QElem]]:
    """Coefficients {(a, b, c): coeff} with u = sum coeff Delta1^a Delta2^b Delta3^c."""
    if level_of(u) != 7:
        u = to_basis(u, 7)
        if u is None:
            return None
    if u.is_zero():
        return {}
    bound = solve_bound() if bound is None else bound
    if total_degree(u) > bound:
        raise DegreeOverflow(f"degree {total_degree(u)} exceeds the solve bound {bound}")
    out = {}
    comps: Dict[tuple, dict] = {}
    for e, c in u.terms.items():
        comps.setdefault(monomial_weight(e), {})[e] = c
    for (w1, w2, w3), target in comps.items():
        # Delta1^a Delta2^b Delta3^c has weight (n, n + b, n) with n = a + b + c
        if w1 != w3 or w2 < w1:
            return None
        b = w2 - w1
        rest = w1 - b
        if rest < 0:
            return None
        cands = [(a, b, rest - a) for a in range(rest + 1)]
        cols = [delta_monomial(*m).terms for m in cands]
        sol = solve(cols, target)
        if sol is None:
            return None
        for m, s in zip(cands, sol):
            if s:
                out[m] = s
    return out


def express_in_center(u: PBWElement, bound: Optional[int] = None) -> Optional[Dict[Tuple[int, int], QElem]]:
    """Coefficients {(i, j): coeff} with u = sum coeff z1^i z2^j, or None."""
    d = express_in_deltas(u, bound)
    if d is None:
        return None
    out = {}
    for (a, b, c), v in d.items():
        if a != c:
            return None
        out[(a, b)] = v
    return out


def from_center_poly(poly: Dict[Tuple[int, int], QElem]) -> PBWElement:
    out = U.zero()
    for (i, j), c in poly.items():
        out = out + delta_monomial(i, j, i).scale(c)
    return out


def normal_decompose(u: PBWElement):
    """(i, c, z) with u = Delta_i^c z and z central, or None when u is not normal."""
    if u.is_zero():
        raise ZeroElement("zero is not a normal element")
    exps = [qcommute_exponent(serre_generator(k), u) for k in (1, 2, 3)]
    if any(m is None for m in exps):
        return None
    d = express_in_deltas(u)
    if d is None:
        return None
    lam = exps[0]
    i, c = (1, lam) if lam >= 0 else (3, -lam)
    z = U.zero()
    for (a, b, cc), v in d.items():
        a2, c2 = (a - c, cc) if i == 1 else (a, cc - c)
        if a2 < 0 or c2 < 0 or a2 != c2:
            return None
        z = z + delta_monomial(a2, b, c2).scale(v)
    if delta(i) ** c * z != u:
        return None
    return i, c, z
