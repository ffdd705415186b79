# %% [markdown]
# # Checking results against brute force
#
# Over small fields every answer can be recomputed the slow way: count points
# over F_p and F_{p^2}, build P(z) from the counts, and compare.  The count
# over F_{p^3} then checks P(z) itself.

# %%
import random

from jacsearch.curve import curve_new
from jacsearch.ff import field_new
from jacsearch.oracle import naive_count_list, naive_jacobian_order, naive_lpoly
from jacsearch.search import SearchConfig, run_search
from jacsearch.search.pipeline import curve_for
from jacsearch.zeta import counts_from_lpoly, lpoly_from_counts

F = field_new(211)
C = curve_new(2, F, [3, 1, 7, 2, 0, 1])
counts = naive_count_list(C, 3)
P = lpoly_from_counts(211, 2, counts[:2])
print("N_1, N_2, N_3 =", counts)
print("predicted N_3 =", counts_from_lpoly(P, 3)[2])
print("#J from counts:", P(1), " from element orders:", naive_jacobian_order(C, random.Random(0)))

# %% [markdown]
# Every success of the search pipeline should agree with the oracle.

# %%
cfg = SearchConfig(p=40009, family="x^5 + x + t", t_from=1, t_to=30, u=3)
agree = total = 0
for r in run_search(cfg):
    if r.status == "success":
        total += 1
        agree += list(r.lpoly.coeffs) == list(naive_lpoly(curve_for(cfg, r.t)).coeffs)
print(f"{agree} of {total} successes match the oracle")
