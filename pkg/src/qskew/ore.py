"""Normal ordering in iterated Ore extensions.

A presentation on generators X_1..X_N lists, for every pair i < j,

    X_j X_i = q**lam(j,i) X_i X_j + corr(j,i)

with ``corr`` already in normal order.  Some trailing generators may be
declared invertible; relations involving their inverses are derived from the
pair relations and cached.  Normal words are X_1^b1 ... X_N^bN, ascending.
"""

import sys
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, QElem, as_qelem, qpow

Exponent = Tuple[int, ...]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class NonInvertibleGenerator(ValueError):
    pass


class PresentationMismatch(ValueError):
    pass


class InvalidPresentation(ValueError):
    pass


class OrePresentation:
    """Immutable rewriting data for one iterated Ore extension (or its localization).

    ``lambdas[(j, i)]`` is the q-exponent and ``corrections[(j, i)]`` a mapping
    exponent -> coefficient, for 1 <= i < j <= n.
    """

    def __init__(self, n: int, lambdas: Mapping[Tuple[int, int], int],
                 corrections: Optional[Mapping] = None,
                 invertible: Iterable[int] = (), basis: str = "X", name: str = ""):
        self.n = n
        self.basis = basis
        self.name = name or basis
        self.invertible = frozenset(invertible)
        self.lambdas: Dict[Tuple[int, int], int] = {}
        self.corrections: Dict[Tuple[int, int], Dict[Exponent, QElem]] = {}
        corrections = corrections or {}
        for j in range(1, n + 1):
            for i in range(1, j):
                if (j, i) not in lambdas:
                    raise InvalidPresentation(f"missing relation for X{j} X{i}")
                self.lambdas[(j, i)] = int(lambdas[(j, i)])
                corr = {tuple(e): as_qelem(c) for e, c in corrections.get((j, i), {}).items()}
                self.corrections[(j, i)] = {e: c for e, c in corr.items() if c}
        for idx in self.invertible:
            if not 1 <= idx <= n:
                raise InvalidPresentation(f"invertible index {idx} out of range")
        self._validate()
        self._rules: Dict[Tuple[int, int, int, int], Tuple[QElem, Dict]] = {}
        self._gen_cache: Dict[Tuple[Exponent, int, int], Dict[Exponent, QElem]] = {}
        self._mono_cache: Dict[Tuple[Exponent, Exponent], Dict[Exponent, QElem]] = {}

    def _validate(self):
        for (j, i), corr in self.corrections.items():
            for e in corr:
                if len(e) != self.n:
                    raise InvalidPresentation(f"correction of X{j} X{i} has wrong length")
                for k, v in enumerate(e):
                    if v < 0 and (k + 1) not in self.invertible:
                        raise InvalidPresentation(
                            f"correction of X{j} X{i} inverts non-invertible X{k + 1}")
                # termination measure: degree first, then inversions; normal words
                # of degree 2 have no inversions so they are already smaller
                if sum(abs(v) for v in e) > 2:
                    raise InvalidPresentation(
                        f"correction of X{j} X{i} does not decrease the rewriting measure")
            if corr and i in self.invertible and j in self.invertible:
                raise InvalidPresentation(
                    f"invertible generators X{i}, X{j} must q-commute exactly")

    def __repr__(self):
        return f"OrePresentation({self.name!r}, n={self.n}, invertible={sorted(self.invertible)})"

    def fingerprint(self):
        return (self.n, self.invertible, tuple(sorted(self.lambdas.items())),
                tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.corrections.items())))

    def __eq__(self, other):
        return self is other or (isinstance(other, OrePresentation)
                                 and self.basis == other.basis
                                 and self.fingerprint() == other.fingerprint())

    def __hash__(self):
        return hash((self.basis, self.n, self.invertible))

    def with_invertible(self, invertible: Iterable[int], name: str = "") -> "OrePresentation":
        return OrePresentation(self.n, self.lambdas, self.corrections, invertible,
                               self.basis, name or self.name)

    # -- elements ------------------------------------------------------------
    def unit(self, i: int, k: int = 1) -> Exponent:
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range 1..{self.n}")
        e = [0] * self.n
        e[i - 1] = k
        return tuple(e)

    def zero(self) -> "PBWElement":
        return PBWElement(self, {})

    def one(self) -> "PBWElement":
        return PBWElement(self, {(0,) * self.n: ONE})

    def scalar(self, c) -> "PBWElement":
        c = as_qelem(c)
        return PBWElement(self, {(0,) * self.n: c} if c else {})

    def monomial(self, e: Sequence[int], c=ONE) -> "PBWElement":
        e = tuple(int(v) for v in e)
        if len(e) != self.n:
            raise ValueError(f"expected {self.n} exponents")
        for k, v in enumerate(e):
            if v < 0 and (k + 1) not in self.invertible:
                raise NonInvertibleGenerator(f"{self.basis}{k + 1} is not invertible here")
        c = as_qelem(c)
        return PBWElement(self, {e: c} if c else {})

    def gen(self, i: int, k: int = 1) -> "PBWElement":
        return self.monomial(self.unit(i, k))

    def gens(self) -> List["PBWElement"]:
        return [self.gen(i) for i in range(1, self.n + 1)]

    # -- rewriting kernel --------------------------------------------------
    def rule(self, k: int, s: int, i: int, t: int):
        """``X_k^s X_i^t = lam * X_i^t X_k^s + corr`` for k > i and s, t = +-1."""
        key = (k, s, i, t)
        hit = self._rules.get(key)
        if hit is not None:
            return hit
        lam = self.lambdas[(k, i)]
        corr = self.corrections[(k, i)]
        if s == 1 and t == 1:
            out = (qpow(lam), corr)
        elif s == -1 and t == 1:
            # X_i X_k^-1 = q^lam X_k^-1 X_i + X_k^-1 c X_k^-1
            inv = self.unit(k, -1)
            mid = self._mul_terms({inv: ONE}, corr)
            mid = self._mul_terms(mid, {inv: ONE})
            f = qpow(-lam)
            out = (f, {e: -c * f for e, c in mid.items()})
        elif s == 1 and t == -1:
            inv = self.unit(i, -1)
            mid = self._mul_terms({inv: ONE}, corr)
            mid = self._mul_terms(mid, {inv: ONE})
            f = qpow(-lam)
            out = (f, {e: -c * f for e, c in mid.items()})
        else:
            out = (qpow(lam), {})
        self._rules[key] = out
        return out

    def _gen_mul(self, a: Exponent, j: int, s: int) -> Dict[Exponent, QElem]:
        """Normal form of X^a * X_j^s (j counted from 0, s = +-1)."""
        key = (a, j, s)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = -1
        for idx in range(self.n - 1, -1, -1):
            if a[idx]:
                last = idx
                break
        if last <= j:
            e = list(a)
            e[j] += s
            out = {tuple(e): ONE}
        else:
            sp = 1 if a[last] > 0 else -1
            ap = list(a)
            ap[last] -= sp
            ap = tuple(ap)
            lam, corr = self.rule(last + 1, sp, j + 1, s)
            acc: Dict[Exponent, QElem] = {}
            for m, c in self._gen_mul(ap, j, s).items():
                for m2, c2 in self._gen_mul(m, last, sp).items():
                    _acc(acc, m2, c * c2 * lam)
            if corr:
                for m, c in self._mul_terms({ap: ONE}, corr).items():
                    _acc(acc, m, c)
            out = {e: c for e, c in acc.items() if c}
        self._gen_cache[key] = out
        return out

    def _mono_mul(self, a: Exponent, b: Exponent) -> Dict[Exponent, QElem]:
        key = (a, b)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        # fast path: already in normal order
        last = max((k for k in range(self.n) if a[k]), default=-1)
        first = min((k for k in range(self.n) if b[k]), default=self.n)
        if last <= first:
            out = {tuple(x + y for x, y in zip(a, b)): ONE}
        else:
            acc = {a: ONE}
            for j in range(self.n):
                bj = b[j]
                if not bj:
                    continue
                s = 1 if bj > 0 else -1
                for _ in range(abs(bj)):
                    nxt: Dict[Exponent, QElem] = {}
                    for m, c in acc.items():
                        for m2, c2 in self._gen_mul(m, j, s).items():
                            _acc(nxt, m2, c * c2)
                    acc = {e: c for e, c in nxt.items() if c}
            out = acc
        self._mono_cache[key] = out
        return out

    def _mul_terms(self, x: Mapping[Exponent, QElem], y: Mapping[Exponent, QElem]):
        acc: Dict[Exponent, QElem] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                cab = ca * cb
                for m, c in self._mono_mul(a, b).items():
                    _acc(acc, m, cab * c)
        return {e: c for e, c in acc.items() if c}

    def normal_form(self, word: Iterable[Tuple[int, int]]) -> "PBWElement":
        """PBW expansion of a word given as (generator index, exponent) pairs."""
        terms = {(0,) * self.n: ONE}
        for i, k in word:
            if not 1 <= i <= self.n:
                raise IndexError(f"generator index {i} out of range 1..{self.n}")
            if k < 0 and i not in self.invertible:
                raise NonInvertibleGenerator(f"{self.basis}{i} is not invertible here")
            s = 1 if k > 0 else -1
            for _ in range(abs(k)):
                nxt: Dict[Exponent, QElem] = {}
                for m, c in terms.items():
                    for m2, c2 in self._gen_mul(m, i - 1, s).items():
                        _acc(nxt, m2, c * c2)
                terms = {e: c for e, c in nxt.items() if c}
        return PBWElement(self, terms)


def _acc(acc, key, val):
    v = acc.get(key)
    acc[key] = val if v is None else v + val


class PBWElement:
    """A finitely supported linear combination of normal words."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: OrePresentation, terms: Dict[Exponent, QElem]):
        self.pres = pres
        self.terms = terms

    @property
    def basis(self) -> str:
        return self.pres.basis

    def _coerce(self, other) -> "PBWElement":
        if isinstance(other, PBWElement):
            if other.pres is not self.pres and other.pres != self.pres:
                raise PresentationMismatch(f"{self.pres.name} vs {other.pres.name}")
            return other
        return self.pres.scalar(other)

    def __add__(self, other) -> "PBWElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return PBWElement(self.pres, out)

    __radd__ = __add__

    def __neg__(self) -> "PBWElement":
        return PBWElement(self.pres, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "PBWElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PBWElement":
        return self._coerce(other) - self

    def scale(self, c) -> "PBWElement":
        c = as_qelem(c)
        if not c:
            return self.pres.zero()
        return PBWElement(self.pres, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "PBWElement":
        if not isinstance(other, PBWElement):
            return self.scale(other)
        other = self._coerce(other)
        return PBWElement(self.pres, self.pres._mul_terms(self.terms, other.terms))

    def __rmul__(self, other) -> "PBWElement":
        return self.scale(other)

    def __pow__(self, k: int) -> "PBWElement":
        if k < 0:
            raise ValueError("negative powers of PBW elements are not supported")
        out = self.pres.one()
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other) -> "PBWElement":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e) -> QElem:
        return self.terms.get(tuple(e), ZERO)

    def constant_term(self) -> QElem:
        return self.coefficient((0,) * self.pres.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWElement):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.pres == other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self) -> str:
        from .exprio.render import render_terms
        return render_terms(self.sorted_terms(), self.pres.basis)


def pbw_mul(a: PBWElement, b: PBWElement) -> PBWElement:
    return a * b


def pbw_commutator(a: PBWElement, b: PBWElement) -> PBWElement:
    if a.pres != b.pres:
        raise PresentationMismatch(f"{a.pres.name} vs {b.pres.name}")
    return a * b - b * a


def qcommute_exponent(a: PBWElement, b: PBWElement) -> Optional[int]:
    """``m`` with ``ab = q^m ba`` exactly, or None."""
    if a.is_zero() or b.is_zero():
        raise ValueError("q-commutation is only tested for nonzero elements")
    ab, ba = a * b, b * a
    if ab.is_zero() or ba.is_zero():
        return None
    e, c = next(iter(ba.terms.items()))
    ratio = ab.coefficient(e) / c
    m = ratio.as_qpower()
    if m is None:
        return None
    return m if ab == ba.scale(ratio) else None


# -- independent word rewriting (used for overlap checks) ---------------------

def _word_rewrite_once(pres: OrePresentation, words: Dict[tuple, QElem], leftmost=True):
    for w, c in words.items():
        rng = range(len(w) - 1) if leftmost else range(len(w) - 2, -1, -1)
        for p in rng:
            if w[p] > w[p + 1]:
                j, i = w[p], w[p + 1]
                out = dict(words)
                del out[w]
                swapped = w[:p] + (i, j) + w[p + 2:]
                _acc(out, swapped, c * qpow(pres.lambdas[(j, i)]))
                for e, cc in pres.corrections[(j, i)].items():
                    mid = tuple(k + 1 for k in range(pres.n) for _ in range(e[k]))
                    _acc(out, w[:p] + mid + w[p + 2:], c * cc)
                return {k: v for k, v in out.items() if v}, True
    return words, False


def reduce_words(pres: OrePresentation, words: Dict[tuple, QElem], leftmost=True,
                 max_steps=100000) -> Dict[Exponent, QElem]:
    """Fully rewrite a combination of positive words, one adjacent swap at a time."""
    for _ in range(max_steps):
        words, changed = _word_rewrite_once(pres, words, leftmost)
        if not changed:
            break
    else:
        raise RuntimeError("word rewriting did not terminate")
    out: Dict[Exponent, QElem] = {}
    for w, c in words.items():
        e = [0] * pres.n
        for k in w:
            e[k - 1] += 1
        _acc(out, tuple(e), c)
    return {e: c for e, c in out.items() if c}


def overlap_defects(pres: OrePresentation):
    """Triples (i, j, k), i < j < k, whose two reductions of X_k X_j X_i disagree."""
    bad = []
    for k in range(1, pres.n + 1):
        for j in range(1, k):
            for i in range(1, j):
                word = {(k, j, i): ONE}
                # reduce X_k X_j first versus X_j X_i first
                first, _ = _word_rewrite_once(pres, word, leftmost=True)
                second, _ = _word_rewrite_once(pres, word, leftmost=False)
                a = reduce_words(pres, first)
                b = reduce_words(pres, second)
                if a != b:
                    bad.append(((i, j, k), PBWElement(pres, a) - PBWElement(pres, b)))
    return bad


def is_confluent(pres: OrePresentation) -> bool:
    return not overlap_defects(pres)
