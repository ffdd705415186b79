from .curve import CurveParams, curve_new, twist
from .group import FastJacobianGroup, JacobianGroup, jacobian_group
from .jacobian import (IDENTITY_HASH, Divisor, Jacobian, divisor, identity, jac_add,
                       jac_batch, jac_double, jac_exp, jac_hash, jac_neg, jac_random)

__all__ = [
    "CurveParams", "curve_new", "twist", "Divisor", "Jacobian", "divisor", "identity",
    "jac_add", "jac_double", "jac_neg", "jac_batch", "jac_exp", "jac_random", "jac_hash",
    "IDENTITY_HASH", "JacobianGroup", "FastJacobianGroup", "jacobian_group",
]
