# %% [markdown]
# # From one group order to the whole zeta function
#
# For a genus 2 curve, #J(C) leaves only a handful of candidates for the
# L-polynomial P(z).  A few exponentiations in the twist J(C~) pick the right
# one.  Everything else follows from P(z): the orders over extension fields and
# the quotient groups whose orders may be prime.

# %%
import random

from jacsearch.curve import curve_new, jacobian_group, twist
from jacsearch.ff import field_new
from jacsearch.zeta import LPolynomial, derived_orders, recover_lpoly, validate_lpoly

p = 2**61 - 1
F = field_new(p)
C = curve_new(2, F, [816, 1, 7, 2, 0, 1])  # y^2 = x^5 + 2x^3 + 7x^2 + x + 816
print(C.poly_str())

# %%
# pretend #J(C) came from a search
P_true = LPolynomial.from_half(p, 2, [618350030, 415833882783789026])
N = P_true(1)
print("#J(C) =", N)

# %%
stats = {}
P = recover_lpoly(N, jacobian_group(twist(C)), p, 2, random.Random(0), stats)
print("a_1, a_2 =", P.half, "after", stats["recovery"], "group operations")
print("valid:", validate_lpoly(P))

# %% [markdown]
# The derived groups: the twist, J over F_{p^2} modulo J, and the two
# degree-3 quotients.

# %%
for d in derived_orders(P):
    j = d.to_json()
    if j["cofactor_prime"]:
        shape = f"largest prime {j['largest_prime_bits']} bits"
    else:
        shape = f"unsplit composite of {int(j['cofactor']).bit_length()} bits"
    print(f"{d.label:12s} {d.bits:4d} bits  near prime: {d.near_prime}  {shape}")
