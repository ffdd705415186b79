"""Conditional generic algorithms for abelian black-box groups."""

from .blackbox import BlackBoxGroup
from .exponent import EasyBound, FactoredExponent, build_exponent, is_b_easy, wheel
from .order import (as_factored, check_order, fac_mul, fac_value, order_from_exponent,
                    order_from_exponent_factored, prime_power_order)
from .primorial import (PrimorialPlan, choose_w, m_for, match_tables, order_bounded,
                        order_bounded_factored, primorial_search)
from .structure import (group_exponent, group_exponent_factored, group_order,
                        invariant_factors, smith_normal_form, sylow_structure)

__all__ = [
    "BlackBoxGroup", "EasyBound", "FactoredExponent", "PrimorialPlan", "as_factored",
    "build_exponent", "check_order", "choose_w", "fac_mul", "fac_value", "group_exponent",
    "group_exponent_factored", "group_order", "invariant_factors", "is_b_easy", "m_for",
    "match_tables", "order_bounded", "order_bounded_factored", "order_from_exponent",
    "order_from_exponent_factored", "prime_power_order", "primorial_search",
    "smith_normal_form", "sylow_structure", "wheel",
]
