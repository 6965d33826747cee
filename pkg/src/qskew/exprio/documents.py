"""JSON documents for elements, presentations, derivations and decompositions.

Every document is one JSON object with ``"schema": 1`` and a ``"kind"``.
Coefficients are stored as ``{"num": [[q_exp, "rat"], ...], "den": [...]}``
with rationals as decimal strings, so nothing is lost to floating point.
``dumps`` sorts keys, making the output byte-deterministic.
"""

import json
import re
from fractions import Fraction
from typing import Any, Dict, List

from ..coeff import LaurentPoly, QElem
from ..model import LEVEL_OF_BASIS, level_of, ore_presentation, presentation
from ..ore import OrePresentation, PBWElement
from ..torus import CAUCHON_TORUS, TorusElement

SCHEMA = 1
_RAT = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class MalformedDocument(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- coefficients --------------------------------------------------------------

def _poly_doc(p: LaurentPoly) -> List[list]:
    return [[e, str(c)] for e, c in sorted(p.coeffs.items())]


def coeff_doc(c: QElem) -> Dict[str, list]:
    return {"num": _poly_doc(c.num), "den": _poly_doc(c.den)}


def _load_poly(doc, path) -> LaurentPoly:
    if not isinstance(doc, list):
        raise MalformedDocument(path, "expected a list of [q_exp, rational] pairs")
    out: Dict[int, Fraction] = {}
    for k, pair in enumerate(doc):
        p = f"{path}[{k}]"
        if not (isinstance(pair, list) and len(pair) == 2):
            raise MalformedDocument(p, "expected a [q_exp, rational] pair")
        e, r = pair
        if not isinstance(e, int) or isinstance(e, bool):
            raise MalformedDocument(f"{p}[0]", "q exponent must be an integer")
        if not isinstance(r, str) or not _RAT.match(r):
            raise MalformedDocument(f"{p}[1]", "rational must be a decimal string like '-3/4'")
        if e in out:
            raise MalformedDocument(f"{p}[0]", f"repeated q exponent {e}")
        out[e] = Fraction(r)
    return LaurentPoly(out)


def load_coeff(doc, path="$") -> QElem:
    if not isinstance(doc, dict):
        raise MalformedDocument(path, "expected a coefficient object")
    for key in ("num", "den"):
        if key not in doc:
            raise MalformedDocument(f"{path}.{key}", "missing field")
    num = _load_poly(doc["num"], f"{path}.num")
    den = _load_poly(doc["den"], f"{path}.den")
    if den.is_zero():
        raise MalformedDocument(f"{path}.den", "zero denominator")
    return QElem(num, den)


def terms_doc(terms) -> List[dict]:
    out = []
    for e, c in sorted(terms.items()):
        d = coeff_doc(c)
        d["exp"] = list(e)
        out.append(d)
    return out


def load_terms(doc, path, length: int) -> Dict[tuple, QElem]:
    if not isinstance(doc, list):
        raise MalformedDocument(path, "expected a list of terms")
    out: Dict[tuple, QElem] = {}
    for k, t in enumerate(doc):
        p = f"{path}[{k}]"
        if not isinstance(t, dict):
            raise MalformedDocument(p, "expected a term object")
        exp = t.get("exp")
        if (not isinstance(exp, list) or len(exp) != length
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in exp)):
            raise MalformedDocument(f"{p}.exp", f"expected {length} integers")
        c = load_coeff(t, p)
        e = tuple(exp)
        if e in out:
            raise MalformedDocument(f"{p}.exp", "repeated exponent vector")
        if c:
            out[e] = c
    return out


# -- documents -----------------------------------------------------------------

def _header(doc, path, kind=None) -> str:
    if not isinstance(doc, dict):
        raise MalformedDocument(path, "expected a JSON object")
    if doc.get("schema") != SCHEMA:
        raise MalformedDocument(f"{path}.schema", f"unsupported schema {doc.get('schema')!r}")
    got = doc.get("kind")
    if kind is not None and got != kind:
        raise MalformedDocument(f"{path}.kind", f"expected {kind!r}, found {got!r}")
    return got


def _element_doc(u) -> Dict[str, Any]:
    if isinstance(u, TorusElement):
        return {"schema": SCHEMA, "kind": "torus", "basis": "torus", "terms": terms_doc(u.terms)}
    doc = {"schema": SCHEMA, "kind": "element", "basis": u.pres.basis, "terms": terms_doc(u.terms)}
    if u.pres != presentation(level_of(u)):
        doc["invertible"] = sorted(u.pres.invertible)
    return doc


def _load_element(doc, path):
    kind = _header(doc, path)
    basis = doc.get("basis")
    if kind == "torus":
        if basis != "torus":
            raise MalformedDocument(f"{path}.basis", "torus documents have basis 'torus'")
        return TorusElement(CAUCHON_TORUS, load_terms(doc.get("terms"), f"{path}.terms", 6))
    if kind != "element":
        raise MalformedDocument(f"{path}.kind", f"expected 'element' or 'torus', found {kind!r}")
    if basis not in LEVEL_OF_BASIS:
        raise MalformedDocument(f"{path}.basis", f"unknown basis {basis!r}")
    pres = presentation(LEVEL_OF_BASIS[basis])
    if "invertible" in doc:
        inv = doc["invertible"]
        if not isinstance(inv, list) or not all(isinstance(i, int) for i in inv):
            raise MalformedDocument(f"{path}.invertible", "expected a list of indices")
        try:
            pres = ore_presentation(basis, set(inv))
        except ValueError as exc:
            raise MalformedDocument(f"{path}.invertible", str(exc)) from None
    terms = load_terms(doc.get("terms"), f"{path}.terms", 6)
    for k, t in enumerate(doc["terms"]):
        e = t["exp"]
        if any(x < 0 and i + 1 not in pres.invertible for i, x in enumerate(e)):
            raise MalformedDocument(f"{path}.terms[{k}].exp",
                                    f"negative exponent of a non-inverted generator in {e}")
    return PBWElement(pres, terms)


def _presentation_doc(pres: OrePresentation) -> Dict[str, Any]:
    pairs = []
    for i in range(1, pres.n + 1):
        for j in range(i + 1, pres.n + 1):
            pairs.append({"i": i, "j": j, "lambda_qexp": pres.lambdas[(j, i)],
                          "correction": terms_doc(pres.corrections[(j, i)])})
    return {"schema": SCHEMA, "kind": "presentation", "n": pres.n, "basis": pres.basis,
            "invertible": sorted(pres.invertible), "pairs": pairs}


def _load_presentation(doc, path) -> OrePresentation:
    _header(doc, path, "presentation")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise MalformedDocument(f"{path}.n", "expected a positive integer")
    inv = doc.get("invertible", [])
    if not isinstance(inv, list) or not all(isinstance(i, int) for i in inv):
        raise MalformedDocument(f"{path}.invertible", "expected a list of indices")
    basis = doc.get("basis", "X")
    if not isinstance(basis, str):
        raise MalformedDocument(f"{path}.basis", "expected a string")
    pairs = doc.get("pairs")
    if not isinstance(pairs, list):
        raise MalformedDocument(f"{path}.pairs", "expected a list")
    lambdas, corr = {}, {}
    for k, pr in enumerate(pairs):
        p = f"{path}.pairs[{k}]"
        if not isinstance(pr, dict):
            raise MalformedDocument(p, "expected a pair object")
        i, j, lam = pr.get("i"), pr.get("j"), pr.get("lambda_qexp")
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise MalformedDocument(p, "need integers 1 <= i < j <= n")
        if not isinstance(lam, int):
            raise MalformedDocument(f"{p}.lambda_qexp", "expected an integer")
        if (j, i) in lambdas:
            raise MalformedDocument(p, f"pair ({i}, {j}) listed twice")
        lambdas[(j, i)] = lam
        corr[(j, i)] = load_terms(pr.get("correction", []), f"{p}.correction", n)
    try:
        return OrePresentation(n, lambdas, corr, inv, basis)
    except ValueError as exc:
        raise MalformedDocument(f"{path}.pairs", str(exc)) from None


def _derivation_doc(D) -> Dict[str, Any]:
    return {"schema": SCHEMA, "kind": "derivation", "basis": "X",
            "images": {f"e{k + 1}": terms_doc(u.terms) for k, u in enumerate(D.images)}}


def _load_derivation(doc, path):
    from ..derivations import DerivationSpec
    from ..model import U
    _header(doc, path, "derivation")
    imgs = doc.get("images")
    if not isinstance(imgs, dict):
        raise MalformedDocument(f"{path}.images", "expected an object with keys e1, e2, e3")
    out = []
    for k in ("e1", "e2", "e3"):
        terms = load_terms(imgs.get(k), f"{path}.images.{k}", 6)
        if any(x < 0 for e in terms for x in e):
            raise MalformedDocument(f"{path}.images.{k}", "negative exponent in U")
        out.append(PBWElement(U, terms))
    return DerivationSpec(out)


def _decomposition_doc(res) -> Dict[str, Any]:
    return {"schema": SCHEMA, "kind": "decomposition", "basis": "X",
            "x": terms_doc(res.x.terms), "mu1": terms_doc(res.mu1.terms),
            "mu4": terms_doc(res.mu4.terms), "mu6": terms_doc(res.mu6.terms),
            "mus": [terms_doc(m.terms) for m in res.mus],
            "mu_polys": [terms_doc(p) for p in res.mu_polys]}


def _load_decomposition(doc, path):
    from ..derivations import DecompositionResult
    from ..model import U
    _header(doc, path, "decomposition")

    def elem(v, p):
        return PBWElement(U, load_terms(v, p, 6))

    mus = doc.get("mus", [])
    polys = doc.get("mu_polys", [])
    if not isinstance(mus, list) or not isinstance(polys, list):
        raise MalformedDocument(path, "mus and mu_polys must be lists")
    return DecompositionResult(
        elem(doc.get("x"), f"{path}.x"), elem(doc.get("mu1"), f"{path}.mu1"),
        elem(doc.get("mu4"), f"{path}.mu4"), elem(doc.get("mu6"), f"{path}.mu6"),
        [elem(m, f"{path}.mus[{k}]") for k, m in enumerate(mus)],
        [load_terms(m, f"{path}.mu_polys[{k}]", 2) for k, m in enumerate(polys)])


def save(obj) -> Dict[str, Any]:
    from ..derivations import DecompositionResult, DerivationSpec
    if isinstance(obj, (PBWElement, TorusElement)):
        return _element_doc(obj)
    if isinstance(obj, OrePresentation):
        return _presentation_doc(obj)
    if isinstance(obj, DerivationSpec):
        return _derivation_doc(obj)
    if isinstance(obj, DecompositionResult):
        return _decomposition_doc(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


_LOADERS = {"element": _load_element, "torus": _load_element,
            "presentation": _load_presentation, "derivation": _load_derivation,
            "decomposition": _load_decomposition}


def load(doc, path: str = "$"):
    kind = _header(doc, path)
    if kind not in _LOADERS:
        raise MalformedDocument(f"{path}.kind", f"unknown kind {kind!r}")
    return _LOADERS[kind](doc, path)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument("$", f"invalid JSON: {exc}") from None
    return load(doc)


def save_file(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(save(obj)))


def load_file(path):
    with open(path) as fh:
        return loads(fh.read())


__all__ = ["MalformedDocument", "save", "load", "dumps", "loads", "save_file", "load_file",
           "coeff_doc", "load_coeff", "terms_doc", "load_terms"]
