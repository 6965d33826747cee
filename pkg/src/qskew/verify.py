"""Mechanical re-derivation of the algebra's identities as a list of named checks.

Each check returns ``(ok, witness)``; failures and exceptions become report
entries, never raised errors.  Randomized checks draw from a ``random.Random``
seeded by ``"<seed>:<check id>"``, so a check's samples do not depend on which
other checks ran.
"""

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .coeff import ONE, Q, QHAT, QINV, q_int, qpow
from .derivations import (MU_RELATIONS, DerivationSpec, check_derivation, decompose_full,
                          weight_derivation, z2_multiplier)
from .exprio.evaluate import evaluate_text
from .linalg import rank
from .model import (DELETE_UP, LEVELS, U, Automorphism, cauchon_generator_in_torus, delta,
                    delta_monomial, embed_in_torus, embed_monomial, membership, ore_presentation,
                    presentation, serre_generator, serre_relations, substitution, verify_automorphism,
                    z1, z2)
from .ore import OrePresentation, PBWElement, overlap_defects, qcommute_exponent, reduce_words
from .sampling import (monomials_up_to, random_derivation_data, random_element, random_lambdas)
from .torus import CAUCHON_TORUS


@dataclass
class SuiteConfig:
    seed: int = 0
    embed_pairs: int = 200
    derivations: int = 100
    automorphisms: int = 10
    pbw_degree: int = 6
    presentation: Optional[OrePresentation] = None
    only: Sequence[str] = ()
    timings: bool = False


@dataclass
class CheckResult:
    id: str
    tag: str
    anchor: str
    passed: bool
    witness: Optional[str] = None
    elapsed: float = 0.0

    def to_dict(self, timings: bool = False) -> Dict:
        d = {"id": self.id, "tag": self.tag, "anchor": self.anchor,
             "status": "pass" if self.passed else "fail", "witness": self.witness}
        if timings:
            d["elapsed"] = round(self.elapsed, 3)
        return d


@dataclass
class VerifyReport:
    seed: int
    checks: List[CheckResult] = field(default_factory=list)
    timings: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict:
        return {"schema": 1, "kind": "verify-report", "seed": self.seed,
                "status": "pass" if self.passed else "fail",
                "checks": [c.to_dict(self.timings) for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.id:<32} {c.anchor}"
            if self.timings:
                line += f"  ({c.elapsed:.2f}s)"
            if c.witness:
                line += f"\n      witness: {c.witness}"
            lines.append(line)
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {n_ok}/{len(self.checks)} checks")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Check:
    id: str
    tag: str
    anchor: str
    fn: Callable


CHECKS: List[Check] = []


def check(id: str, tag: str, anchor: str):
    def deco(fn):
        CHECKS.append(Check(id, tag, anchor, fn))
        return fn
    return deco


def _first_nonzero(named: Dict[str, PBWElement]):
    for k, v in named.items():
        if not v.is_zero():
            return f"{k} = {v}"
    return None


# -- Serre relations -----------------------------------------------------------------

@check("serre.commute", "serre", "e1 e3 = e3 e1")
def _serre_commute(cfg, rng):
    e1, e3 = serre_generator(1), serre_generator(3)
    v = e1 * e3 - e3 * e1
    return v.is_zero(), None if v.is_zero() else f"e1 e3 - e3 e1 = {v}"


@check("serre.cubic", "serre", "e_i^2 e_j - (q + q^-1) e_i e_j e_i + e_j e_i^2 = 0, |i - j| = 1")
def _serre_cubic(cfg, rng):
    rels = serre_relations(*(serre_generator(i) for i in (1, 2, 3)))
    rels = {k: v for k, v in rels.items() if k != "e1e3-e3e1"}
    w = _first_nonzero(rels)
    return w is None, w


# -- presentations ------------------------------------------------------------------

@check("presentation.confluence", "presentation", "all overlaps X_k X_j X_i resolve")
def _confluence(cfg, rng):
    pres = cfg.presentation or U
    bad = overlap_defects(pres)
    if not bad:
        return True, None
    (i, j, k), diff = bad[0]
    return False, f"triple ({i}, {j}, {k}): reductions differ by {diff}"


@check("presentation.localized", "presentation",
       "Y-, Z-, T-presentations with inverted tails are confluent")
def _localized(cfg, rng):
    for r in (6, 5, 4):
        bad = overlap_defects(presentation(r))
        if bad:
            (i, j, k), diff = bad[0]
            return False, f"level {r}, triple ({i}, {j}, {k}): {diff}"
    return True, None


@check("presentation.associativity", "presentation", "(ab)c = a(bc) on PBW monomials")
def _associativity(cfg, rng):
    pres = cfg.presentation or U
    for _ in range(30):
        mons = [tuple(rng.randint(0, 2) for _ in range(pres.n)) for _ in range(3)]
        a, b, c = (pres.monomial(m) for m in mons)
        if (a * b) * c != a * (b * c):
            return False, f"monomials {mons}"
    return True, None


# -- PBW basis -------------------------------------------------------------------------

@check("pbw.independence", "pbw", "PBW monomials of Serre-degree <= 6 are linearly independent")
def _pbw_independence(cfg, rng):
    mons = monomials_up_to(cfg.pbw_degree)
    vecs = [embed_monomial(7, e).terms for e in mons]
    r = rank(vecs)
    return r == len(mons), None if r == len(mons) else f"rank {r} < {len(mons)} monomials"


@check("pbw.reexpand", "pbw", "products of PBW monomials re-expand uniquely")
def _pbw_reexpand(cfg, rng):
    mons = [e for e in monomials_up_to(4) if any(e)]
    for _ in range(40):
        a, b = rng.choice(mons), rng.choice(mons)
        word = tuple(k + 1 for k in range(6) for _ in range(a[k])) + \
            tuple(k + 1 for k in range(6) for _ in range(b[k]))
        fast = U.monomial(a) * U.monomial(b)
        left = PBWElement(U, reduce_words(U, {word: ONE}, leftmost=True))
        right = PBWElement(U, reduce_words(U, {word: ONE}, leftmost=False))
        if not fast == left == right:
            return False, f"X^{list(a)} X^{list(b)}"
    return True, None


# -- normal elements and the center ------------------------------------------------------

QCOMMUTE_TABLE = ((1, 0, -1), (0, 0, 0), (-1, 0, 1))


@check("center.qcommute_table", "center", "e_i Delta_j = q^m Delta_j e_i table")
def _qcommute_table(cfg, rng):
    got = tuple(tuple(qcommute_exponent(serre_generator(i), delta(j)) for j in (1, 2, 3))
                for i in (1, 2, 3))
    return got == QCOMMUTE_TABLE, None if got == QCOMMUTE_TABLE else f"table {got}"


@check("center.z_central", "center", "z1 = Delta1 Delta3 and z2 = Delta2 are central")
def _z_central(cfg, rng):
    for name, z in (("z1", z1()), ("z2", z2())):
        for i in (1, 2, 3):
            e = serre_generator(i)
            if e * z != z * e:
                return False, f"{name} does not commute with e{i}"
    return True, None


@check("center.delta_independence", "center",
       "Delta monomials of total degree <= 3 are independent and pairwise commute")
def _delta_independence(cfg, rng):
    for i, j in itertools.combinations((1, 2, 3), 2):
        if delta(i) * delta(j) != delta(j) * delta(i):
            return False, f"Delta{i} Delta{j} != Delta{j} Delta{i}"
    mons = [m for m in itertools.product(range(4), repeat=3) if sum(m) <= 3]
    r = rank([delta_monomial(*m).terms for m in mons])
    return r == len(mons), None if r == len(mons) else f"rank {r} < {len(mons)}"


# -- Cauchon bases ---------------------------------------------------------------------

DELTA_FORMS = (
    ("Delta1", ("X3", "Y3", "Z3", "T3")),
    ("Delta2", ("X2 X5 - q X3 X4", "Y2 Y5 - q Y3 Y4", "Z2 Z5", "T2 T5")),
    ("Delta3", ("qhat^2 X1 X4 X6 - q qhat X2 X6 - q qhat X1 X5 + q^2 X3",
                "qhat^2 Y1 Y4 Y6 - q qhat Y2 Y6",
                "qhat^2 Z1 Z4 Z6 - q qhat Z2 Z6",
                "qhat^2 T1 T4 T6")),
)


@check("cauchon.delta_forms", "cauchon", "Delta_i in the X, Y, Z and T bases")
def _delta_forms(cfg, rng):
    for name, forms in DELTA_FORMS:
        target = evaluate_text(name, "torus")
        for f in forms:
            if evaluate_text(f, "torus") != target:
                return False, f"{name} != {f}"
    return True, None


@check("cauchon.inverse_steps", "cauchon",
       "deleting step and its inverse substitution compose to the identity")
def _inverse_steps(cfg, rng):
    for r in (7, 6, 5):
        upper = [cauchon_generator_in_torus(r, k) for k in range(1, 7)]
        for i in range(1, 7):
            got = CAUCHON_TORUS.zero()
            for c, word in substitution(DELETE_UP, r, i):
                term = CAUCHON_TORUS.one()
                for k, e in word:
                    term = term * (upper[k - 1] ** e)
                got = got + term.scale(c)
            if got != cauchon_generator_in_torus(r - 1, i):
                return False, f"level {r}, generator {i}"
    return True, None


@check("cauchon.tower_presentations", "cauchon",
       "Cauchon generators satisfy the commutation rules of their level")
def _tower_presentations(cfg, rng):
    for r in LEVELS:
        pres = presentation(r)
        g = [cauchon_generator_in_torus(r, k) for k in range(1, 7)]
        for j in range(1, 7):
            for i in range(1, j):
                rhs = (g[i - 1] * g[j - 1]).scale(qpow(pres.lambdas[(j, i)]))
                for e, c in pres.corrections[(j, i)].items():
                    rhs = rhs + embed_monomial(r, e).scale(c)
                if g[j - 1] * g[i - 1] != rhs:
                    return False, f"level {r}: relation for ({j}, {i})"
    return True, None


# -- quantum torus ------------------------------------------------------------------

CENTRAL_BASIS = ((1, 0, 1, 1, 0, 1), (0, 1, 0, 0, 1, 0))


@check("torus.center_exhaustive", "torus",
       "T^g central iff g1 = g3 = g4 = g6 and g2 = g5, over |g_i| <= 2")
def _center_exhaustive(cfg, rng):
    T = CAUCHON_TORUS
    for g in itertools.product(range(-2, 3), repeat=6):
        expect = g[0] == g[2] == g[3] == g[5] and g[1] == g[4]
        if T.is_central(T.monomial(g)) != expect:
            return False, f"exponent {list(g)}"
    return True, None


@check("torus.center_basis", "torus", "center of the torus is K[z1^+-1, z2^+-1]")
def _center_basis(cfg, rng):
    basis = CAUCHON_TORUS.central_exponent_basis()
    if sorted(map(tuple, basis)) != sorted(CENTRAL_BASIS, reverse=True) and \
            sorted(map(tuple, basis)) != sorted(CENTRAL_BASIS):
        return False, f"basis {basis}"
    for name, z, g in (("z1", z1(), CENTRAL_BASIS[0]), ("z2", z2(), CENTRAL_BASIS[1])):
        t = embed_in_torus(z)
        if len(t.terms) != 1 or next(iter(t.terms)) != g:
            return False, f"{name} embeds as {t}"
    return True, None


# -- embedding ------------------------------------------------------------------------

@check("embed.homomorphism", "embed", "embed(uv) = embed(u) embed(v)")
def _embed_hom(cfg, rng):
    for _ in range(cfg.embed_pairs):
        u, v = random_element(rng, 4), random_element(rng, 4)
        if embed_in_torus(u * v) != embed_in_torus(u) * embed_in_torus(v):
            return False, f"u = {u}; v = {v}"
    return True, None


@check("embed.membership", "embed", "membership(embed(u), 7) = u")
def _embed_membership(cfg, rng):
    for _ in range(cfg.embed_pairs):
        u = random_element(rng, 4)
        t = embed_in_torus(u)
        for r in LEVELS:
            back = membership(t, r)
            if back is None or embed_in_torus(back) != t:
                return False, f"level {r}: u = {u}"
        if membership(t, 7) != u:
            return False, f"u = {u}"
    return True, None


# -- localization formula ---------------------------------------------------------------

@check("localization.z4_inverse", "localization",
       "Z4^-k Z1 = q^-k Z1 Z4^-k + q [k] Z2 Z4^(-k-1), k = 1..5")
def _z4_inverse(cfg, rng):
    A = ore_presentation("Z", {4, 5, 6})
    for k in range(1, 6):
        lhs = A.normal_form([(4, -k), (1, 1)])
        rhs = (A.monomial((1, 0, 0, -k, 0, 0), qpow(-k))
               + A.monomial((0, 1, 0, -k - 1, 0, 0), Q * q_int(k)))
        if lhs != rhs:
            return False, f"k = {k}: {lhs}"
    return True, None


# -- derivations --------------------------------------------------------------------

@check("derivations.table", "derivations",
       "0, D1, D4, D6 decompose as (0; 0, 0, 0) and (0; unit vectors)")
def _derivation_table(cfg, rng):
    res = decompose_full(DerivationSpec.zero())
    if not (res.x.is_zero() and all(m.is_zero() for m in res.coordinates)):
        return False, "decompose_full(0) is not zero"
    for k, i in enumerate((1, 4, 6)):
        res = decompose_full(weight_derivation(i))
        want = tuple(U.one() if s == k else U.zero() for s in range(3))
        if not res.x.is_zero() or tuple(res.coordinates) != want:
            return False, f"D{i}: x = {res.x}, mu = {res.coordinates}"
    if check_derivation([serre_generator(2), U.zero(), U.zero()]):
        return False, "e1 -> e2 accepted as a derivation"
    return True, None


@check("derivations.random", "derivations",
       "ad_x + p1 D1 + p4 D4 + p6 D6 is recovered exactly; D(z2) = z z2")
def _derivation_random(cfg, rng):
    for _ in range(cfg.derivations):
        x, p1, p4, p6 = random_derivation_data(rng)
        D = (DerivationSpec.inner(x) + weight_derivation(1).times(p1)
             + weight_derivation(4).times(p4) + weight_derivation(6).times(p6))
        res = decompose_full(D)
        x0 = x - U.scalar(x.constant_term())
        if res.x != x0 or tuple(res.coordinates) != (p1, p4, p6):
            return False, f"x = {x}, p = ({p1}, {p4}, {p6}); got x = {res.x}"
        for name, lhs, (a, b) in MU_RELATIONS:
            if res.mus[lhs - 1] != res.mus[a - 1] + res.mus[b - 1]:
                return False, f"{name} fails for x = {x}"
        z = z2_multiplier(D)
        if z != res.mus[1] + res.mus[4]:
            return False, f"D(z2) multiplier for x = {x}"
    return True, None


# -- automorphisms --------------------------------------------------------------------

ETA_DELTA_SCALARS = {1: (3, ONE), 2: (2, ONE), 3: (1, ONE)}


@check("automorphism.eta", "automorphism",
       "eta respects the relations, eta^2 = id, eta permutes the Delta_i up to scalars")
def _eta(cfg, rng):
    eta = Automorphism.eta()
    if not verify_automorphism(eta.generator_images()):
        return False, "eta images violate a relation"
    for i in range(1, 7):
        x = U.gen(i)
        if eta(eta(x)) != x:
            return False, f"eta^2(X{i}) = {eta(eta(x))}"
    for i, (j, c) in ETA_DELTA_SCALARS.items():
        if eta(delta(i)) != delta(j).scale(c):
            return False, f"eta(Delta{i}) = {eta(delta(i))}"
    return True, None


@check("automorphism.composition", "automorphism",
       "eta o phi_(a,b,c) o eta = phi_(c,b,a) for random scalars")
def _composition(cfg, rng):
    eta = Automorphism.eta()
    probes = [U.gen(i) for i in range(1, 7)] + [random_element(rng, 3)]
    for _ in range(cfg.automorphisms):
        lam = random_lambdas(rng)
        phi = Automorphism.torus(*lam)
        if not verify_automorphism(phi.generator_images()):
            return False, f"phi_{lam} violates a relation"
        lhs = eta.compose(phi).compose(eta)
        if lhs != Automorphism.torus(*lam[::-1]):
            return False, f"composition law for {lam}"
        for u in probes:
            if eta(phi(eta(u))) != lhs(u):
                return False, f"eta phi eta disagrees on {u}"
            if lhs.inverse()(lhs(u)) != u:
                return False, f"inverse fails on {u}"
    return True, None


# -- runner ---------------------------------------------------------------------------

def selected_checks(only: Sequence[str] = ()) -> List[Check]:
    if not only:
        return list(CHECKS)
    keys = set(only)
    return [c for c in CHECKS if c.tag in keys or c.id in keys]


def run_suite(cfg: SuiteConfig = None) -> VerifyReport:
    cfg = cfg or SuiteConfig()
    report = VerifyReport(cfg.seed, timings=cfg.timings)
    for c in sorted(selected_checks(cfg.only), key=lambda c: c.id):
        rng = random.Random(f"{cfg.seed}:{c.id}")
        t0 = time.perf_counter()
        try:
            ok, witness = c.fn(cfg, rng)
        except Exception as exc:  # failures are report entries
            ok, witness = False, f"{type(exc).__name__}: {exc}"
        report.checks.append(CheckResult(c.id, c.tag, c.anchor, bool(ok), witness,
                                         time.perf_counter() - t0))
    return report
