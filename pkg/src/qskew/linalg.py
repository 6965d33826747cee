"""Exact sparse elimination over Q(q)."""

from typing import Dict, Hashable, List, Optional, Sequence

from .coeff import ONE, QElem

Vector = Dict[Hashable, QElem]


def _pivot(v: Vector):
    return max(v)


def _axpy(v: Vector, c: QElem, w: Vector) -> Vector:
    """v - c*w"""
    out = dict(v)
    for k, x in w.items():
        y = out.get(k)
        y = -c * x if y is None else y - c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def rank(vectors: Sequence[Vector]) -> int:
    """Rank of a family of sparse vectors with comparable keys."""
    basis: Dict[Hashable, Vector] = {}
    for v in vectors:
        v = {k: c for k, c in v.items() if c}
        while v:
            p = _pivot(v)
            b = basis.get(p)
            if b is None:
                basis[p] = v
                break
            v = _axpy(v, v[p] / b[p], b)
    return len(basis)


def solve(columns: Sequence[Vector], target: Vector) -> Optional[List[QElem]]:
    """Coefficients c with sum_k c_k columns[k] = target, or None."""
    n = len(columns)
    basis: Dict[Hashable, tuple] = {}  # pivot -> (vector, combination)
    for idx, col in enumerate(columns):
        v = {k: c for k, c in col.items() if c}
        comb = {idx: ONE}
        while v:
            p = _pivot(v)
            hit = basis.get(p)
            if hit is None:
                basis[p] = (v, comb)
                break
            f = v[p] / hit[0][p]
            v = _axpy(v, f, hit[0])
            comb = _axpy(comb, f, hit[1])
    v = {k: c for k, c in target.items() if c}
    sol: Vector = {}
    while v:
        p = _pivot(v)
        hit = basis.get(p)
        if hit is None:
            return None
        f = v[p] / hit[0][p]
        v = _axpy(v, f, hit[0])
        sol = _axpy(sol, -f, hit[1])
    from .coeff import ZERO
    return [sol.get(k, ZERO) for k in range(n)]
