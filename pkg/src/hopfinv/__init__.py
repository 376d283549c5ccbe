"""Exact 3-manifold invariants from involutory Hopf algebras.

Involutory Hopf algebras in graded vector spaces with a bicharacter
braiding, good pairs built from integrals and cointegrals, and combinatorial
Heegaard diagrams.
"""

from .engine import evaluate_KAD, evaluate_invariant, upsilon
from .graded import SUPER, TRIVIAL, Bicharacter, GradedMorphism, GradedSpace, GradingGroup
from .heegaard import (
    HeegaardDiagram,
    apply_move,
    builtin_diagram,
    extract_permutation,
    parse_diagram,
    serialize_diagram,
)
from .hopf import HopfAlgebraData, check_axioms, dual_hopf, parse_algebra_spec
from .integrals import (
    A5Violation,
    GoodPair,
    build_good_pair,
    build_integral_data,
    check_good_pair,
)
from .oracle import OracleBudgetError, dense_invariant
from .scalars import Cyclotomic, format_scalar, parse_scalar

__version__ = "0.1.0"
