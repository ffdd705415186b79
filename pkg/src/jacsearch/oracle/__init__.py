from .counts import irreducible_modulus, naive_count_list, naive_counts, rabin_irreducible
from .opaque import OpaqueGroup, opaque_group
from .order import naive_jacobian_order, naive_lpoly, order_window

__all__ = [
    "naive_counts", "naive_count_list", "irreducible_modulus", "rabin_irreducible",
    "naive_jacobian_order", "naive_lpoly", "order_window", "OpaqueGroup", "opaque_group",
]
