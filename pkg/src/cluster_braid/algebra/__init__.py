from .cyclo import CycloReal, LevelMismatch, cos_embedding, cyclotomic_polynomial, minimal_polynomial
from .snf import IntMatrix, diagonal, invariant_factors, smith_normal_form

__all__ = [
    "CycloReal",
    "LevelMismatch",
    "cos_embedding",
    "cyclotomic_polynomial",
    "minimal_polynomial",
    "IntMatrix",
    "diagonal",
    "invariant_factors",
    "smith_normal_form",
]
