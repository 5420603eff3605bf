"""Exact symbolic checks for quantum matrix algebras built from braidings."""

from .scalars import ONE, ZERO, Q, RationalFunction, parse, emit, q_number
from .tensorspace import TensorOperator, kron, place, partial_trace
from .braidings import classify, check_braid, check_compatible, baxterize
from .symmetrizers import build_tower, even_certificate
from .ncalg import NCPolynomial, AlgebraPresentation, present, reduce, equal_mod, is_central
from .qdet import context, quantum_det, elementary_symmetric, power_sum, cayley_hamilton
from .yangians import yangian_relations, current_elementary, bethe_commutativity

__all__ = [
    "ONE", "ZERO", "Q", "RationalFunction", "parse", "emit", "q_number",
    "TensorOperator", "kron", "place", "partial_trace",
    "classify", "check_braid", "check_compatible", "baxterize",
    "build_tower", "even_certificate",
    "NCPolynomial", "AlgebraPresentation", "present", "reduce", "equal_mod", "is_central",
    "context", "quantum_det", "elementary_symmetric", "power_sum", "cayley_hamilton",
    "yangian_relations", "current_elementary", "bethe_commutativity",
]

__version__ = "0.1.0"
