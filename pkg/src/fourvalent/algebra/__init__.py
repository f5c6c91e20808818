from .fields import (
    GF,
    QQ,
    Field,
    FieldElement,
    FieldMismatchError,
    Mod,
    PrimeField,
    RationalField,
    common_field,
    field_of,
    format_element,
    inv,
    parse_field,
)
from .linalg import AffineSolution, Matrix, rank, row_echelon, solve_affine
from .complexes import ComplexError, GradedComplex, cohomology_ranks

__all__ = [
    "GF", "QQ", "Field", "FieldElement", "FieldMismatchError", "Mod", "PrimeField",
    "RationalField", "common_field", "field_of", "format_element", "inv", "parse_field",
    "AffineSolution", "Matrix", "rank", "row_echelon", "solve_affine",
    "ComplexError", "GradedComplex", "cohomology_ranks",
]
