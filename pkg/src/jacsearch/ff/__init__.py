from .field import (ExtensionField, Field, FieldElement, PrimeField, batch_inv,
                    field_new, find_non_residue, inv, is_qr, random_element, sqrt)
from .poly import poly_factor_degrees, poly_irreducible

__all__ = [
    "Field", "PrimeField", "ExtensionField", "FieldElement", "field_new", "inv",
    "batch_inv", "sqrt", "is_qr", "find_non_residue", "random_element",
    "poly_factor_degrees", "poly_irreducible",
]
