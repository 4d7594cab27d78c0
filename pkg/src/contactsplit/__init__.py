"""Exact symplectic exterior algebra and splitting machinery for complex contact manifolds."""

from .exalg import (
    Multivector,
    StructuralError,
    contract_form,
    contract_one_form,
    format_multivector,
    interior,
    parse_multivector,
    wedge,
)
from .symplectic import (
    LefschetzComponents,
    SymplecticModel,
    flat_k,
    is_primitive,
    op_L,
    op_Lambda,
    primitive_decompose,
    sharp_k,
)

__all__ = [
    "Multivector",
    "StructuralError",
    "contract_form",
    "contract_one_form",
    "format_multivector",
    "interior",
    "parse_multivector",
    "wedge",
    "LefschetzComponents",
    "SymplecticModel",
    "flat_k",
    "is_primitive",
    "op_L",
    "op_Lambda",
    "primitive_decompose",
    "sharp_k",
]
