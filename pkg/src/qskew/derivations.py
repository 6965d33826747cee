"""Derivations of U_q(sl4+) and their decomposition ad_x + mu1 D1 + mu4 D4 + mu6 D6.

A derivation is determined by its values on e1, e2, e3.  To decompose it we
push it through the deleting-derivation substitutions down to the quantum
torus, split it there as inner plus central, and then check that the inner
part descends back through A_4, A_5, A_6 to U.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ONE, QINV, ZERO, QElem, as_qelem
from .model import (DELETE_UP, SERRE_WORDS, U, cauchon_generator_in_torus, delta_monomial,
                    embed_in_torus, express_in_center, from_center_poly, level_of,
                    membership, pbw_from_serre, serre_generator, substitution, z2)
from .ore import PBWElement
from .torus import (CAUCHON_TORUS, TorusDerivation, TorusElement, check_torus_derivation,
                    op_decompose)


class IllFormedDerivation(ValueError):
    pass


class DescentFailure(RuntimeError):
    pass


class DerivationSpec:
    """A candidate derivation of U, given by the images of e1, e2, e3."""

    def __init__(self, images: Sequence[PBWElement]):
        images = [U.scalar(0) + u for u in images]
        if len(images) != 3 or any(level_of(u) != 7 for u in images):
            raise ValueError("a derivation spec needs three elements of U")
        self.images = images
        self._x_images = None
        self._checked = None

    @classmethod
    def inner(cls, x: PBWElement) -> "DerivationSpec":
        return cls([x.commutator(serre_generator(i)) for i in (1, 2, 3)])

    @classmethod
    def zero(cls) -> "DerivationSpec":
        return cls([U.zero()] * 3)

    def __add__(self, other: "DerivationSpec") -> "DerivationSpec":
        return DerivationSpec([a + b for a, b in zip(self.images, other.images)])

    def __sub__(self, other: "DerivationSpec") -> "DerivationSpec":
        return DerivationSpec([a - b for a, b in zip(self.images, other.images)])

    def times(self, mu) -> "DerivationSpec":
        """mu * D for a central element (or scalar) mu."""
        if not isinstance(mu, PBWElement):
            return DerivationSpec([u.scale(mu) for u in self.images])
        return DerivationSpec([mu * u for u in self.images])

    def __eq__(self, other):
        return isinstance(other, DerivationSpec) and self.images == other.images

    def __repr__(self):
        return "DerivationSpec(e1 -> {}, e2 -> {}, e3 -> {})".format(*self.images)

    # values on the PBW generators, by the Leibniz rule over their definitions
    def x_images(self) -> List[PBWElement]:
        if self._x_images is None:
            self._x_images = _leibniz_pbw_generators(self.images)
        return self._x_images

    def is_well_defined(self) -> bool:
        if self._checked is None:
            self._checked = check_derivation(self.images)
        return self._checked

    def __call__(self, u: PBWElement) -> PBWElement:
        return apply(self, u)


def _leibniz_pbw_generators(d):
    e = [serre_generator(i) for i in (1, 2, 3)]
    x = pbw_from_serre(e)

    def dprod(da, a, db, b):
        return da * b + a * db

    d1, d2, d3 = d
    dx2 = dprod(d1, e[0], d2, e[1]) - dprod(d2, e[1], d1, e[0]).scale(QINV)
    dx5 = dprod(d2, e[1], d3, e[2]) - dprod(d3, e[2], d2, e[1]).scale(QINV)
    dx3 = dprod(d1, e[0], dx5, x[4]) - dprod(dx5, x[4], d1, e[0]).scale(QINV)
    return [d1, dx2, dx3, d2, dx5, d3]


def _leibniz_word(images: Sequence[PBWElement], word) -> PBWElement:
    gens = [serre_generator(i) for i in (1, 2, 3)]
    out = U.zero()
    for p in range(len(word)):
        term = U.one()
        for r, k in enumerate(word):
            term = term * (images[k - 1] if r == p else gens[k - 1])
        out = out + term
    return out


def check_derivation(images) -> bool:
    """True iff e_i -> images[i] is compatible with every defining relation."""
    if isinstance(images, DerivationSpec):
        images = images.images
    for name, words in SERRE_WORDS.items():
        val = U.zero()
        for c, w in words:
            val = val + _leibniz_word(images, w).scale(c)
        if not val.is_zero():
            return False
    return True


def weight_derivation(i: int) -> DerivationSpec:
    """D1, D4 or D6: scale the Serre generator X1, X4 or X6 and kill the other two."""
    slots = {1: 0, 4: 1, 6: 2}
    if i not in slots:
        raise IndexError("weight derivations are D1, D4 and D6")
    images = [U.zero()] * 3
    images[slots[i]] = serre_generator(slots[i] + 1)
    return DerivationSpec(images)


def apply(D: DerivationSpec, u: PBWElement) -> PBWElement:
    if not D.is_well_defined():
        raise IllFormedDerivation("images violate the defining relations")
    if level_of(u) != 7:
        raise ValueError("derivations of U are applied to elements of U")
    dx = D.x_images()
    out = U.zero()
    for e, c in u.terms.items():
        factors = [i for i in range(6) for _ in range(e[i])]
        total = U.zero()
        for p, i in enumerate(factors):
            pre = [0] * 6
            for k in factors[:p]:
                pre[k] += 1
            suf = [0] * 6
            for k in factors[p + 1:]:
                suf[k] += 1
            total = total + U.monomial(pre) * dx[i] * U.monomial(suf)
        out = out + total.scale(c)
    return out


# -- extension through the localization tower --------------------------------------

def _leibniz_torus(entries, vals: Sequence[TorusElement], ders: Sequence[TorusElement]):
    T = CAUCHON_TORUS
    out = T.zero()
    for c, word in entries:
        factors = []
        for k, e in word:
            v = vals[k - 1]
            if e == 1:
                factors.append((v, ders[k - 1]))
            else:
                inv = v.inverse()
                factors.append((inv, -(inv * ders[k - 1] * inv)))
        total = T.zero()
        for p in range(len(factors)):
            term = T.one()
            for r, (v, d) in enumerate(factors):
                term = term * (d if r == p else v)
            total = total + term
        out = out + total.scale(c)
    return out


def extend_levels(D: DerivationSpec) -> Dict[int, List[TorusElement]]:
    """Torus values of D on the generators of each level 7, 6, 5, 4."""
    if not D.is_well_defined():
        raise IllFormedDerivation("images violate the defining relations")
    out = {7: [embed_in_torus(v) for v in D.x_images()]}
    for r in (7, 6, 5):
        vals = [cauchon_generator_in_torus(r, k) for k in range(1, 7)]
        out[r - 1] = [_leibniz_torus(substitution(DELETE_UP, r, i), vals, out[r])
                      for i in range(1, 7)]
    return out


def extend_to_torus(D: DerivationSpec) -> TorusDerivation:
    return TorusDerivation(CAUCHON_TORUS, extend_levels(D)[4])


# -- decomposition -----------------------------------------------------------------

@dataclass
class DecompositionResult:
    x: PBWElement
    mu1: PBWElement
    mu4: PBWElement
    mu6: PBWElement
    mus: List[PBWElement] = field(default_factory=list)
    mu_polys: List[Dict[Tuple[int, int], QElem]] = field(default_factory=list)

    @property
    def coordinates(self):
        return self.mu1, self.mu4, self.mu6

    def reconstruct(self) -> DerivationSpec:
        theta = (weight_derivation(1).times(self.mu1) + weight_derivation(4).times(self.mu4)
                 + weight_derivation(6).times(self.mu6))
        return DerivationSpec.inner(self.x) + theta


MU_RELATIONS = (
    ("mu2 = mu1 + mu4", 2, (1, 4)),
    ("mu3 = mu1 + mu5", 3, (1, 5)),
    ("mu3 = mu2 + mu6", 3, (2, 6)),
    ("mu5 = mu4 + mu6", 5, (4, 6)),
)


def central_torus_to_poly(mu: TorusElement) -> Optional[Dict[Tuple[int, int], QElem]]:
    """Write a central torus element as a polynomial in z1, z2 (None if it needs
    negative powers or is not central)."""
    out = {}
    for g, c in mu.terms.items():
        a, b = g[0], g[1]
        if g != (a, b, a, a, b, a) or a < 0 or b < 0:
            return None
        (kg, kc), = embed_in_torus(delta_monomial(a, b, a)).terms.items()
        out[(a, b)] = c / kc
    return out


def decompose_full(D: DerivationSpec, check: bool = True) -> DecompositionResult:
    if not D.is_well_defined():
        raise IllFormedDerivation("images violate the defining relations")
    TD = extend_to_torus(D)
    if check and not check_torus_derivation(TD):
        raise DescentFailure("extension to the torus is not a derivation")
    x_t, mus_t = op_decompose(TD)
    # the inner part descends A_1 -> A_4 -> A_5 -> A_6 -> A_7
    x = None
    for r in (4, 5, 6, 7):
        x = membership(x_t, r)
        if x is None:
            raise DescentFailure(f"inner part is not in A_{r}")
    for name, lhs, (a, b) in MU_RELATIONS:
        if mus_t[lhs - 1] != mus_t[a - 1] + mus_t[b - 1]:
            raise DescentFailure(f"relation {name} fails")
    polys, mus = [], []
    for i, mt in enumerate(mus_t, start=1):
        poly = central_torus_to_poly(mt)
        if poly is None:
            raise DescentFailure(f"mu{i} is not in K[z1, z2]")
        mu = from_center_poly(poly)
        if membership(mt, 7) != mu or (check and express_in_center(mu) != poly):
            raise DescentFailure(f"mu{i} disagrees with its Delta expansion")
        polys.append(poly)
        mus.append(mu)
    res = DecompositionResult(x, mus[0], mus[3], mus[5], mus, polys)
    if res.reconstruct() != D:
        raise DescentFailure("decomposition does not reproduce the derivation")
    return res


def z2_multiplier(D: DerivationSpec) -> PBWElement:
    """The central z with D(z2) = z * z2."""
    res = decompose_full(D)
    z = res.mus[1] + res.mus[4]
    if apply(D, z2()) != z * z2():
        raise DescentFailure("D(z2) is not z * z2 for z = mu2 + mu5")
    if express_in_center(z) is None:
        raise DescentFailure("z is not a polynomial in z1, z2")
    return z
