"""Green rings and derived string-complex tensors for the truncated cyclic
Nakayama Hopf algebras KZ_n/J^d, d = p^m <= n, over F_p."""

from .derived import StringClass, decompose_complex, homology, string_complex, tensor_total
from .greenring import GreenElement, express_in_generators, phi, structure_constant_table
from .hopfalgebra import AlgebraParams, validate_hopf
from .modcat import QuiverRep, Uniserial, decompose, make_uniserial, tensor
from .pascal import PascalSeed, build_triangle, realize_module
from .presentation import build_presentation, verify_presentation

__all__ = [
    "AlgebraParams",
    "GreenElement",
    "PascalSeed",
    "QuiverRep",
    "StringClass",
    "Uniserial",
    "build_presentation",
    "build_triangle",
    "decompose",
    "decompose_complex",
    "express_in_generators",
    "homology",
    "make_uniserial",
    "phi",
    "realize_module",
    "string_complex",
    "structure_constant_table",
    "tensor",
    "tensor_total",
    "validate_hopf",
    "verify_presentation",
]
