"""Compute the scalars c_i with eta(Delta_i) = c_i Delta_(4-i) (Delta2 maps to itself)."""

from qskew.model import Automorphism, delta


def scalar_multiple(u, v):
    """c with u = c v, or None."""
    e = next(iter(v.terms))
    c = u.coefficient(e) / v.coefficient(e)
    return c if u == v.scale(c) else None


def main():
    eta = Automorphism.eta()
    for i in (1, 2, 3):
        j = 4 - i if i != 2 else 2
        c = scalar_multiple(eta(delta(i)), delta(j))
        print(f"eta(Delta{i}) = ({c}) * Delta{j}" if c is not None
              else f"eta(Delta{i}) is not a multiple of Delta{j}")


if __name__ == "__main__":
    main()
