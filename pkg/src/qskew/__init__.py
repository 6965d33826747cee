"""Exact computer algebra for U_q(sl4+): PBW normal ordering, the Cauchon
localization tower, its quantum torus, and derivations of the algebra."""

from .coeff import ONE, Q, QHAT, QINV, ZERO, QElem, q_int, qpow
from .model import (U, Automorphism, delta, embed_in_torus, membership, presentation,
                    serre_generator, X, z1, z2)
from .ore import OrePresentation, PBWElement
from .torus import CAUCHON_TORUS, QuantumTorus, TorusElement
from .derivations import DerivationSpec, decompose_full, weight_derivation, z2_multiplier
from .exprio.evaluate import evaluate, evaluate_text
from .exprio.parser import parse_expr

__version__ = "0.1.0"
