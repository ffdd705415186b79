# %% [markdown]
# # Tuning and running a search
#
# A search attempt succeeds when the group order is B-easy.  Larger B succeeds
# more often but costs more per curve.  `choose_params` balances the two using
# the semismooth density sigma(u) with B = 2^(n/u).

# %%
from collections import Counter

from jacsearch.search import SearchConfig, choose_params, config_from_text, run_search

for n in (100, 150, 200):
    c = choose_params(n)
    print(f"n={n}: u={c.u:.2f} w={c.w} 1/sigma={c.row.inv_sigma:.0f} B={c.B} "
          f"memory {c.row.memory / 1e6:.0f}MB; saver u={c.space_saver.u:.2f} "
          f"at cost x{c.space_cost_ratio:.3f}")

# %% [markdown]
# A small search over a tiny field runs in seconds.  The config format is the
# one the command line reads.

# %%
cfg = config_from_text("""
p = 32003
family = x^5 + 2x^3 + 7x^2 + x + t   # the parameter sits in the constant term
t_from = 0
t_to = 39
u = 3
targets = J, J_3/1
""")
print(cfg.resolved())

# %%
records = list(run_search(cfg))
print(Counter(r.status for r in records))
first = next(r for r in records if r.status == "success")
print(first.to_line())

# %% [markdown]
# Worker count and sharding never change the records, only the time taken.

# %%
same = [r.to_json() | {"ms": 0} for r in run_search(cfg.with_range(0, 39, workers=2))]
print(same == [r.to_json() | {"ms": 0} for r in records])
