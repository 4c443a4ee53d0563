"""Exact verification of Hopf algebra constructions over the integers.

Hopf algebras of finite rank are given by integer structure constants; every
check is an identity of integer tensors or a solvable integer linear system.
"""

from .certificate import Certificate
from .exactlin import GF, QQ, ZZ, Fiber, Lattice, SMat
from .flatcert import certify_faithfully_flat, certify_projective_over_normal, fiber_criterion_crosscheck
from .hopfcore import HopfAlgebraData, dual, solve_antipode, verify_hopf
from .integrals import integral_elements, integral_functionals
from .subquot import HopfInclusion, build_quotient, check_normal
from .zoo import builtin_algebra, builtin_inclusion

__all__ = [
    "Certificate",
    "Fiber",
    "GF",
    "HopfAlgebraData",
    "HopfInclusion",
    "Lattice",
    "QQ",
    "SMat",
    "ZZ",
    "build_quotient",
    "builtin_algebra",
    "builtin_inclusion",
    "certify_faithfully_flat",
    "certify_projective_over_normal",
    "check_normal",
    "dual",
    "fiber_criterion_crosscheck",
    "integral_elements",
    "integral_functionals",
    "solve_antipode",
    "verify_hopf",
]

__version__ = "0.1.0"
