"""L-polynomials: validation, recovery from #J, and the group orders they determine."""

from .lpoly import (LPolynomial, base_change, counts_from_lpoly, eigenvalues_on_circle,
                    extension_order, in_weil_interval, lpoly_from_counts, quotient_order,
                    real_weil_polynomial, trace_zero_order, twist_lpoly, validate_lpoly,
                    weil_bounds)
from .recover import (GENUS3_MIN_Q, disambiguate, genus2_candidates, genus3_ranges,
                      recover_genus2, recover_genus3, recover_lpoly)
from .security import (LABELS, DerivedGroupOrder, derived_orders, factor_attempt, near_prime,
                       security_equivalent_bits, security_ratio, smith_filter)

__all__ = [
    "DerivedGroupOrder", "GENUS3_MIN_Q", "LABELS", "LPolynomial", "base_change",
    "counts_from_lpoly", "derived_orders", "disambiguate", "eigenvalues_on_circle",
    "extension_order", "factor_attempt", "genus2_candidates", "genus3_ranges",
    "in_weil_interval", "lpoly_from_counts", "near_prime", "quotient_order",
    "real_weil_polynomial", "recover_genus2", "recover_genus3", "recover_lpoly",
    "security_equivalent_bits", "security_ratio", "smith_filter", "trace_zero_order",
    "twist_lpoly", "validate_lpoly", "weil_bounds",
]
