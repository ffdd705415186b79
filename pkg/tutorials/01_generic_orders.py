# %% [markdown]
# # Element orders in a black-box group
#
# The search never looks inside a group.  It only multiplies, inverts, hashes
# and draws random elements.  An opaque test group with a known structure lets
# us watch the order algorithms work with nothing else to go on.

# %%
import random

from jacsearch.genalg import build_exponent, group_order, is_b_easy, order_bounded, wheel
from jacsearch.genalg.structure import full_exponent, plan_for
from jacsearch.oracle import opaque_group

rng = random.Random(1)

# %%
# Z/4 x Z/6 x Z/1000: exponent 3000, order 24000
G = opaque_group([4, 6, 1000], seed=7)
a = G.random(rng)

# %% [markdown]
# `order_bounded` finds |a| on the promise |a| <= B^2.  It first raises a to a
# product of small prime powers, then steps along integers coprime to a
# primorial.

# %%
B = 100
print("|a| =", order_bounded(G, a, plan_for(B)))

# %%
# the stepping pattern for the primorial 30 = 2*3*5
gaps, largest = wheel(30)
print("gaps:", gaps.tolist(), "largest gap:", largest)

# %%
# the exponent used when B = 1000 and the primorial is 210
print(build_exponent(1000, prime_limit=7).as_dict())

# %% [markdown]
# `group_order` combines element orders into the group exponent and then the
# order, provided the order is B-easy.  Here 24000 = 2^6 3 5^3 is easy for B = 100.

# %%
print("easy:", is_b_easy(G.M, B))
N, factors = group_order(G, B, rng, plan=plan_for(B), E=full_exponent(B))
print("|G| =", N, "invariant factors:", factors)
