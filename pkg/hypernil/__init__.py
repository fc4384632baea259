"""hypernil: exact arithmetic for rational nilpotent Lie algebras with complex and hypercomplex structures."""

from .errors import ComputationError, HypernilError, InputError
from .field import GAUSSIAN, QQ, FieldElement, NumberField
from .lie import LieAlgebra
from .linalg import Matrix, Subspace
from .structures import ComplexStructure, HypercomplexTriple

__version__ = "1.0.0"

__all__ = [
    "ComplexStructure",
    "ComputationError",
    "FieldElement",
    "GAUSSIAN",
    "HypercomplexTriple",
    "HypernilError",
    "InputError",
    "LieAlgebra",
    "Matrix",
    "NumberField",
    "QQ",
    "Subspace",
]
