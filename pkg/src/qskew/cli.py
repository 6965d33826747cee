"""Command-line front end.

Expressions are given in the grammar of :mod:`qskew.exprio.parser`; an
argument of the form ``@file.json`` loads an element document instead.
Exit status: 0 success, 1 computation error, 2 usage error.
"""

import argparse
import sys
from typing import List, Optional

from . import derivations as der
from .exprio.documents import MalformedDocument, dumps, load, load_file, save
from .exprio.evaluate import ContextViolation, evaluate_text
from .exprio.parser import ExprSyntaxError
from .model import (LEVELS, Automorphism, DegreeOverflow, ZeroElement, delta_in_basis,
                    embed_in_torus, membership, normal_decompose, to_basis,
                    top_component, total_degree, verify_automorphism, weight, z1, z2)
from .ore import PBWElement, qcommute_exponent
from .torus import CAUCHON_TORUS, InconsistentDerivation, TorusElement
from .verify import SuiteConfig, run_suite


class UsageError(Exception):
    pass


class ComputationError(Exception):
    pass


def _context(value: str):
    if value == "torus":
        return "torus"
    try:
        level = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("context is 7, 6, 5, 4 or 'torus'") from None
    if level not in LEVELS:
        raise argparse.ArgumentTypeError("context is 7, 6, 5, 4 or 'torus'")
    return level


def _level(value: str) -> int:
    v = _context(value)
    if v == "torus":
        raise argparse.ArgumentTypeError("a level 7, 6, 5 or 4 is required here")
    return v


def element(text: str, context=7):
    if text.startswith("@"):
        try:
            u = load_file(text[1:])
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from None
        if not isinstance(u, (PBWElement, TorusElement)):
            raise UsageError(f"{text[1:]} does not hold an element")
        return u
    try:
        return evaluate_text(text, context)
    except ExprSyntaxError as exc:
        raise UsageError(f"in {text!r}: {exc}") from None


def _u_element(text: str, context=7) -> PBWElement:
    u = element(text, context)
    if not isinstance(u, PBWElement):
        raise UsageError("expected an algebra element, not a torus element")
    return u


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def element(self, u, label: str = None):
        if self.fmt == "json":
            doc = save(u)
            if label:
                doc = {"schema": 1, "kind": "labelled", "label": label, "value": doc}
            self._emit(doc)
        else:
            print(f"{label} = {u}" if label else str(u))

    def value(self, v, text: str = None):
        if self.fmt == "json":
            self._emit({"schema": 1, "kind": "value", "value": v})
        else:
            print(text if text is not None else ("none" if v is None else v))

    def document(self, doc, text: str):
        if self.fmt == "json":
            self._emit(doc)
        else:
            print(text)

    def _emit(self, doc):
        sys.stdout.write(dumps(doc))


# -- subcommands ---------------------------------------------------------------------

def cmd_normalize(a, out):
    out.element(element(a.expr, a.context))


def cmd_mul(a, out):
    out.element(element(a.a, a.context) * element(a.b, a.context))


def cmd_commutator(a, out):
    out.element(element(a.a, a.context).commutator(element(a.b, a.context)))


def cmd_qcommute(a, out):
    u, v = _u_element(a.a, a.context), _u_element(a.b, a.context)
    if u.is_zero() or v.is_zero():
        raise ComputationError("q-commutation is only tested for nonzero elements")
    out.value(qcommute_exponent(u, v))


def cmd_weight(a, out):
    w = weight(_u_element(a.expr))
    out.value(None if w is None else list(w),
              "none" if w is None else "(" + ", ".join(map(str, w)) + ")")


def cmd_degree(a, out):
    u = _u_element(a.expr)
    if a.top:
        out.element(top_component(u))
    else:
        out.value(total_degree(u))


def cmd_delta(a, out):
    out.element(delta_in_basis(a.i, a.level))


def cmd_center_basis(a, out):
    basis = [list(g) for g in CAUCHON_TORUS.central_exponent_basis()]
    text = "\n".join(f"T^{g}" for g in basis)
    text += f"\nz1 = {z1()}\n  = {embed_in_torus(z1())}\nz2 = {z2()}\n  = {embed_in_torus(z2())}"
    out.document({"schema": 1, "kind": "center-basis", "exponents": basis,
                  "z1": save(z1()), "z2": save(z2())}, text)


def cmd_embed(a, out):
    u = element(a.expr, a.context)
    if isinstance(u, TorusElement):
        out.element(u)
    else:
        out.element(embed_in_torus(u))


def cmd_membership(a, out):
    t = element(a.expr, "torus")
    if not isinstance(t, TorusElement):
        t = embed_in_torus(t)
    u = membership(t, a.level)
    if u is None:
        out.document({"schema": 1, "kind": "value", "value": None}, f"not in A_{a.level}")
    else:
        out.element(u)


def cmd_to_basis(a, out):
    u = _u_element(a.expr, a.context)
    v = to_basis(u, a.level)
    if v is None:
        out.document({"schema": 1, "kind": "value", "value": None}, f"not in A_{a.level}")
    else:
        out.element(v)


def cmd_normal(a, out):
    u = _u_element(a.expr)
    res = normal_decompose(u)
    if res is None:
        out.document({"schema": 1, "kind": "value", "value": None}, "not normal")
        return
    i, c, z = res
    out.document({"schema": 1, "kind": "normal", "i": i, "c": c, "z": save(z)},
                 f"Delta{i}^{c} * ({z})")


def _automorphism(a) -> Automorphism:
    lam = [evaluate_text(t, 7) for t in a.lambdas.split(",")] if a.lambdas else None
    scal = []
    for v in lam or ():
        if any(any(e) for e in v.terms) or len(v.terms) != 1:
            raise UsageError("torus scalars must be nonzero elements of Q(q)")
        scal.append(v.constant_term())
    if lam is not None and len(scal) != 3:
        raise UsageError("--lambdas takes three comma-separated scalars")
    return Automorphism(tuple(scal) if scal else (1, 1, 1), 1 if a.eta else 0)


def cmd_automorphism_apply(a, out):
    out.element(_automorphism(a)(_u_element(a.expr)))


def cmd_automorphism_verify(a, out):
    imgs = [_u_element(t) for t in (a.e1, a.e2, a.e3)]
    ok = verify_automorphism(imgs)
    out.value(ok, "true" if ok else "false")


def _derivation(a) -> der.DerivationSpec:
    if a.file:
        try:
            D = load_file(a.file)
        except OSError as exc:
            raise UsageError(f"cannot read {a.file}: {exc.strerror}") from None
        if not isinstance(D, der.DerivationSpec):
            raise UsageError(f"{a.file} does not hold a derivation")
        return D
    if a.e1 is None or a.e2 is None or a.e3 is None:
        raise UsageError("give --e1, --e2 and --e3, or --file")
    return der.DerivationSpec([_u_element(t) for t in (a.e1, a.e2, a.e3)])


def cmd_derivation_check(a, out):
    ok = der.check_derivation(_derivation(a))
    out.value(ok, "true" if ok else "false")


def cmd_derivation_apply(a, out):
    out.element(der.apply(_derivation(a), _u_element(a.expr)))


def cmd_derivation_extend(a, out):
    TD = der.extend_to_torus(_derivation(a))
    text = "\n".join(f"D(T{i + 1}) = {v}" for i, v in enumerate(TD.images))
    out.document({"schema": 1, "kind": "torus-derivation",
                  "images": [save(v) for v in TD.images]}, text)


def cmd_derivation_decompose(a, out):
    res = der.decompose_full(_derivation(a))
    text = (f"x = {res.x}\nmu1 = {res.mu1}\nmu4 = {res.mu4}\nmu6 = {res.mu6}")
    out.document(save(res), text)


def cmd_derivation_z2(a, out):
    out.element(der.z2_multiplier(_derivation(a)))


def cmd_verify_suite(a, out):
    pres = None
    if a.presentation:
        try:
            pres = load_file(a.presentation)
        except OSError as exc:
            raise UsageError(f"cannot read {a.presentation}: {exc.strerror}") from None
        from .ore import OrePresentation
        if not isinstance(pres, OrePresentation):
            raise UsageError(f"{a.presentation} does not hold a presentation")
    cfg = SuiteConfig(seed=a.seed, presentation=pres, only=a.only or (), timings=a.timings)
    if a.embed_pairs is not None:
        cfg.embed_pairs = a.embed_pairs
    if a.derivations is not None:
        cfg.derivations = a.derivations
    report = run_suite(cfg)
    if not report.checks:
        raise UsageError(f"no checks match --only {' '.join(a.only)}")
    sys.stdout.write(report.to_json() if out.fmt == "json" else report.to_text())
    return 0 if report.passed else 1


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting a --format given before it
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    ctx = argparse.ArgumentParser(add_help=False)
    ctx.add_argument("--context", type=_context, default=7,
                     help="level 7, 6, 5, 4 or 'torus' (default 7)")
    dflags = argparse.ArgumentParser(add_help=False)
    dflags.add_argument("--e1", help="image of e1")
    dflags.add_argument("--e2", help="image of e2")
    dflags.add_argument("--e3", help="image of e3")
    dflags.add_argument("--file", help="derivation document")

    p = argparse.ArgumentParser(prog="qskew", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, parents=(), **kw):
        sp = sub.add_parser(name, parents=[common, *parents], **kw)
        sp.set_defaults(fn=fn)
        return sp

    add("normalize", cmd_normalize, [ctx], help="PBW normal form").add_argument("expr")
    for name, fn, h in (("mul", cmd_mul, "product a*b"),
                        ("commutator", cmd_commutator, "ab - ba"),
                        ("qcommute", cmd_qcommute, "m with ab = q^m ba, or none")):
        sp = add(name, fn, [ctx], help=h)
        sp.add_argument("a")
        sp.add_argument("b")
    add("weight", cmd_weight, help="N^3 weight, or none").add_argument("expr")
    sp = add("degree", cmd_degree, help="total Serre-degree")
    sp.add_argument("expr")
    sp.add_argument("--top", action="store_true", help="print the top homogeneous component")
    sp = add("delta", cmd_delta, help="Delta_i in a chosen basis")
    sp.add_argument("i", type=int, choices=(1, 2, 3))
    sp.add_argument("--level", type=_level, default=7)
    add("center-basis", cmd_center_basis, help="basis of central torus exponents")
    add("embed", cmd_embed, [ctx], help="image in the quantum torus").add_argument("expr")
    sp = add("membership", cmd_membership, help="expand a torus element in A_r")
    sp.add_argument("expr")
    sp.add_argument("--level", type=_level, required=True)
    sp = add("to-basis", cmd_to_basis, [ctx], help="rewrite in the PBW basis of another level")
    sp.add_argument("expr")
    sp.add_argument("--level", type=_level, required=True)
    add("normal", cmd_normal, help="write a normal element as Delta_i^c z").add_argument("expr")

    sp = sub.add_parser("automorphism", help="diagram and torus automorphisms")
    asub = sp.add_subparsers(dest="action", required=True)
    ap = asub.add_parser("apply", parents=[common])
    ap.add_argument("expr")
    ap.add_argument("--lambdas", help="three scalars a,b,c for e_i -> lambda_i e_i")
    ap.add_argument("--eta", action="store_true", help="compose with e_i -> e_(4-i)")
    ap.set_defaults(fn=cmd_automorphism_apply)
    ap = asub.add_parser("verify", parents=[common])
    for k in ("--e1", "--e2", "--e3"):
        ap.add_argument(k, required=True)
    ap.set_defaults(fn=cmd_automorphism_verify)

    sp = sub.add_parser("derivation", help="derivations given by images of e1, e2, e3")
    dsub = sp.add_subparsers(dest="action", required=True)
    for name, fn in (("check", cmd_derivation_check), ("extend", cmd_derivation_extend),
                     ("decompose", cmd_derivation_decompose), ("z2", cmd_derivation_z2)):
        dsub.add_parser(name, parents=[common, dflags]).set_defaults(fn=fn)
    ap = dsub.add_parser("apply", parents=[common, dflags])
    ap.add_argument("expr")
    ap.set_defaults(fn=cmd_derivation_apply)
    add("decompose-derivation", cmd_derivation_decompose, [dflags],
        help="same as 'derivation decompose'")

    sp = add("verify-suite", cmd_verify_suite, help="run every identity check")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", nargs="+", metavar="TAG", help="restrict to tags or check ids")
    sp.add_argument("--presentation", help="presentation document for the confluence checks")
    sp.add_argument("--timings", action="store_true",
                    help="include elapsed times (the report is then not byte-reproducible)")
    sp.add_argument("--embed-pairs", type=int)
    sp.add_argument("--derivations", type=int)
    return p


_COMPUTATION_ERRORS = (ComputationError, ContextViolation, der.IllFormedDerivation,
                       der.DescentFailure, InconsistentDerivation, MalformedDocument,
                       ZeroElement, DegreeOverflow, ArithmeticError, ValueError)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        status = args.fn(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qskew: error: {exc}", file=sys.stderr)
        return 2
    except _COMPUTATION_ERRORS as exc:
        if out.fmt == "json":
            sys.stdout.write(dumps({"schema": 1, "kind": "error",
                                    "error": type(exc).__name__, "message": str(exc)}))
        else:
            print(f"qskew: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
