"""Quantum tori P(Lambda) with Lambda_{ij} = q**M[i][j].

Generators are numbered from 1.  Monomials are stored in ascending normal
order, ``T^g = T_1^g1 ... T_N^gN``, so that

    T^g * T^d = q**s * T^(g+d),   s = sum_{k>l} M[k][l] g_k d_l

and ``T^g T_i = q**m T_i T^g`` with ``m = sum_k M[k][i] g_k``.
"""

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .coeff import ONE, ZERO, QElem, as_qelem, qpow

Exponent = Tuple[int, ...]

# the matrix of q-exponents for the torus in which U_q(sl4+) embeds
CAUCHON_LAMBDA = (
    (0, 1, 1, -1, -1, 0),
    (-1, 0, 1, 1, 0, -1),
    (-1, -1, 0, 0, 1, 1),
    (1, -1, 0, 0, 1, -1),
    (1, 0, -1, -1, 0, 1),
    (0, 1, -1, 1, -1, 0),
)


class InconsistentDerivation(ValueError):
    def __init__(self, message, gamma=None, index=None):
        super().__init__(message)
        self.gamma = gamma
        self.index = index


class QuantumTorus:
    """The quantum torus on ``len(M)`` generators with q-exponent matrix M."""

    def __init__(self, M: Sequence[Sequence[int]]):
        M = tuple(tuple(int(v) for v in row) for row in M)
        n = len(M)
        for i in range(n):
            if len(M[i]) != n:
                raise ValueError("exponent matrix must be square")
            for j in range(n):
                if M[i][j] != -M[j][i]:
                    raise ValueError(f"exponent matrix not antisymmetric at ({i + 1},{j + 1})")
        self.M = M
        self.n = n
        self._mono_exp = lru_cache(maxsize=None)(self._mono_exp_raw)

    def __eq__(self, other):
        return isinstance(other, QuantumTorus) and self.M == other.M

    def __hash__(self):
        return hash(self.M)

    def __repr__(self):
        return f"QuantumTorus(n={self.n})"

    # -- monomial combinatorics -------------------------------------------
    def _mono_exp_raw(self, g: Exponent, d: Exponent) -> int:
        M = self.M
        s = 0
        for k in range(self.n):
            gk = g[k]
            if gk:
                row = M[k]
                for l in range(k):
                    if d[l]:
                        s += row[l] * gk * d[l]
        return s

    def product_exponent(self, g: Exponent, d: Exponent) -> int:
        """The q-power ``s`` in ``T^g T^d = q^s T^(g+d)``."""
        return self._mono_exp(tuple(g), tuple(d))

    def sigma_exponent(self, g: Sequence[int], i: int) -> int:
        """``m`` such that ``T^g T_i = q^m T_i T^g`` (``i`` counted from 1)."""
        return sum(self.M[k][i - 1] * g[k] for k in range(self.n))

    def commutation_exponent(self, g: Sequence[int], d: Sequence[int]) -> int:
        """``m`` such that ``T^g T^d = q^m T^d T^g``."""
        return sum(self.sigma_exponent(g, i + 1) * d[i] for i in range(self.n))

    def exponent_is_central(self, g: Sequence[int]) -> bool:
        return all(self.sigma_exponent(g, i + 1) == 0 for i in range(self.n))

    # -- constructors ----------------------------------------------------
    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def one(self) -> "TorusElement":
        return TorusElement(self, {(0,) * self.n: ONE})

    def scalar(self, c) -> "TorusElement":
        c = as_qelem(c)
        return TorusElement(self, {(0,) * self.n: c} if c else {})

    def monomial(self, g: Sequence[int], c=ONE) -> "TorusElement":
        c = as_qelem(c)
        g = tuple(int(v) for v in g)
        if len(g) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(g)}")
        return TorusElement(self, {g: c} if c else {})

    def unit(self, i: int, k: int = 1) -> Exponent:
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range 1..{self.n}")
        g = [0] * self.n
        g[i - 1] = k
        return tuple(g)

    def gen(self, i: int, k: int = 1) -> "TorusElement":
        return self.monomial(self.unit(i, k))

    def gens(self) -> List["TorusElement"]:
        return [self.gen(i) for i in range(1, self.n + 1)]

    # -- center ------------------------------------------------------------
    def central_exponent_basis(self) -> List[Exponent]:
        """Hermite-normal basis of the lattice of exponents of central monomials."""
        return hermite_basis(integer_kernel(self.M), self.n)

    def is_central(self, a: "TorusElement") -> bool:
        return all(self.exponent_is_central(g) for g in a.terms)


class TorusElement:
    __slots__ = ("torus", "terms")

    def __init__(self, torus: QuantumTorus, terms: Dict[Exponent, QElem]):
        self.torus = torus
        self.terms = terms

    # -- ring structure ------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TorusElement):
            return self.torus.scalar(other)
        if other.torus is not self.torus and other.torus != self.torus:
            raise ValueError("elements live in different quantum tori")
        return other

    def __add__(self, other) -> "TorusElement":
        other = self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g)
            if v is None:
                out[g] = c
            else:
                v = v + c
                if v:
                    out[g] = v
                else:
                    del out[g]
        return TorusElement(self.torus, out)

    __radd__ = __add__

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.torus, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other) -> "TorusElement":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "TorusElement":
        return self._check(other) - self

    def scale(self, c) -> "TorusElement":
        c = as_qelem(c)
        if not c:
            return self.torus.zero()
        return TorusElement(self.torus, {g: v * c for g, v in self.terms.items()})

    def __mul__(self, other) -> "TorusElement":
        if not isinstance(other, TorusElement):
            return self.scale(other)
        other = self._check(other)
        pe = self.torus.product_exponent
        acc: Dict[Exponent, list] = {}
        for g, a in self.terms.items():
            for d, b in other.terms.items():
                s = pe(g, d)
                e = tuple(x + y for x, y in zip(g, d))
                c = a * b
                if s:
                    c = c * qpow(s)
                acc.setdefault(e, []).append(c)
        out = {}
        for e, cs in acc.items():
            v = _sum(cs)
            if v:
                out[e] = v
        return TorusElement(self.torus, out)

    def __rmul__(self, other) -> "TorusElement":
        return self.scale(other)

    def __pow__(self, k: int) -> "TorusElement":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.torus.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "TorusElement":
        """Inverse of a monomial (the only units of a quantum torus)."""
        if len(self.terms) != 1:
            raise ValueError("only nonzero scalar multiples of monomials are invertible")
        (g, c), = self.terms.items()
        neg = tuple(-v for v in g)
        # T^g T^-g = q^s  =>  (T^g)^-1 = q^-s T^-g
        s = self.torus.product_exponent(g, neg)
        return TorusElement(self.torus, {neg: c.inverse() * qpow(-s)})

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def commutator(self, other: "TorusElement") -> "TorusElement":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, g: Sequence[int]) -> QElem:
        return self.terms.get(tuple(g), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.torus == other.torus and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self) -> str:
        from .exprio.render import render_terms
        return render_terms(self.sorted_terms(), "T")


def _sum(cs):
    out = cs[0]
    for c in cs[1:]:
        out = out + c
    return out


# -- lattices ------------------------------------------------------------------

def integer_kernel(M: Sequence[Sequence[int]]) -> List[Exponent]:
    """A Z-basis of {g in Z^n : M g = 0}, by unimodular column reduction."""
    n = len(M[0]) if M else 0
    A = [list(row) for row in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns track ops

    def colop(dst, src, k):
        # column dst -= k * column src
        for row in A:
            row[dst] -= k * row[src]
        for row in U:
            row[dst] -= k * row[src]

    def swap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    piv = 0
    for r in range(len(A)):
        if piv >= n:
            break
        while True:
            nz = [c for c in range(piv, n) if A[r][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(A[r][c]))
            swap(piv, c0)
            done = True
            for c in range(piv + 1, n):
                if A[r][c]:
                    colop(c, piv, A[r][c] // A[r][piv])
                    if A[r][c]:
                        done = False
            if done:
                break
        if A[r][piv] != 0:
            piv += 1
    return [tuple(U[i][c] for i in range(n)) for c in range(piv, n)]


def hermite_basis(vectors: Sequence[Sequence[int]], n: int) -> List[Exponent]:
    """Reduced row Hermite normal form of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    out: List[List[int]] = []
    col = 0
    while rows and col < n:
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is not p:
                    k = r[col] // p[col]
                    for j in range(n):
                        r[j] -= k * p[j]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if nz:
            p = nz[0]
            if p[col] < 0:
                p = [-v for v in p]
            rows = [r for r in rows if r is not nz[0]]
            out.append(p)
        col += 1
    # reduce entries above pivots
    for i, p in enumerate(out):
        c = next(j for j in range(n) if p[j])
        for k in range(i):
            f = out[k][c] // p[c]
            if f:
                out[k] = [a - f * b for a, b in zip(out[k], p)]
    return [tuple(r) for r in out]


# -- derivations of a quantum torus ----------------------------------------------

class TorusDerivation:
    """A derivation given by its values on the generators T_1..T_N."""

    def __init__(self, torus: QuantumTorus, images: Sequence[TorusElement]):
        if len(images) != torus.n:
            raise ValueError(f"need {torus.n} images")
        self.torus = torus
        self.images = list(images)

    @classmethod
    def inner(cls, x: TorusElement) -> "TorusDerivation":
        return cls(x.torus, [x.commutator(t) for t in x.torus.gens()])

    @classmethod
    def central(cls, torus: QuantumTorus, mus: Sequence) -> "TorusDerivation":
        return cls(torus, [_as_elem(torus, m) * t for m, t in zip(mus, torus.gens())])

    def __add__(self, other: "TorusDerivation") -> "TorusDerivation":
        return TorusDerivation(self.torus, [a + b for a, b in zip(self.images, other.images)])

    def __eq__(self, other):
        return isinstance(other, TorusDerivation) and self.images == other.images

    def __call__(self, a: TorusElement) -> TorusElement:
        """Leibniz extension to an arbitrary element of the torus."""
        T = self.torus
        out = T.zero()
        for g, c in a.terms.items():
            factors = []
            for i, k in enumerate(g):
                step = T.gen(i + 1) if k > 0 else T.gen(i + 1).inverse()
                factors.extend([(i, k > 0, step)] * abs(k))
            vals = [f[2] for f in factors]
            ders = []
            for i, pos, step in factors:
                d = self.images[i]
                ders.append(d if pos else -(step * d * step))
            total = T.zero()
            for p in range(len(factors)):
                term = T.one()
                for r in range(len(factors)):
                    term = term * (ders[p] if r == p else vals[r])
                total = total + term
            # the ordered product of the factors is T^g exactly (normal order)
            out = out + total.scale(c)
        return out


def _as_elem(torus, m):
    return m if isinstance(m, TorusElement) else torus.scalar(m)


def check_torus_derivation(D: TorusDerivation) -> bool:
    T = D.torus
    gens = T.gens()
    for i in range(T.n):
        for j in range(i + 1, T.n):
            lhs = D.images[i] * gens[j] + gens[i] * D.images[j]
            rhs = (D.images[j] * gens[i] + gens[j] * D.images[i]).scale(qpow(T.M[i][j]))
            if lhs != rhs:
                return False
    return True


def op_decompose(D: TorusDerivation):
    """Split a torus derivation as ``ad_x + theta`` with theta(T_i) = mu_i T_i.

    Returns ``(x, mus)`` where ``x`` carries no central monomial and every
    ``mu_i`` is central.  Raises InconsistentDerivation with a witness if
    the images do not come from a derivation.
    """
    T = D.torus
    coeffs: Dict[Exponent, QElem] = {}
    mus = []
    for i in range(1, T.n + 1):
        ti_inv = T.gen(i).inverse()
        rel = ti_inv * D.images[i - 1]        # D(T_i) = T_i * rel
        mu = {}
        for g, d in rel.terms.items():
            m = T.sigma_exponent(g, i)
            if T.exponent_is_central(g):
                mu[g] = d
            elif m == 0:
                raise InconsistentDerivation(
                    f"non-central exponent {g} with trivial commutation in D(T{i})", g, i)
            else:
                c = d / (qpow(m) - ONE)
                prev = coeffs.get(g)
                if prev is None:
                    coeffs[g] = c
                elif prev != c:
                    raise InconsistentDerivation(
                        f"coefficient of T^{g} disagrees between generators", g, i)
        mus.append(TorusElement(T, mu))
    # each non-central exponent must be seen by every generator it fails to commute with
    for g, c in coeffs.items():
        for i in range(1, T.n + 1):
            if T.sigma_exponent(g, i) != 0:
                rel = T.gen(i).inverse() * D.images[i - 1]
                if g not in rel.terms:
                    raise InconsistentDerivation(
                        f"T^{g} missing from the image of T{i}", g, i)
    return TorusElement(T, coeffs), mus


CAUCHON_TORUS = QuantumTorus(CAUCHON_LAMBDA)
