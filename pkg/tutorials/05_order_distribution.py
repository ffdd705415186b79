# %% [markdown]
# # How often are Jacobian orders easy, and how often near prime?
#
# Random genus 2 curves over one prime p near 2^24 have Jacobians of about 48
# bits.  For each curve we decide whether #J is #J^(1/u)-easy, then ask whether
# the derived groups have a prime factor carrying 95% of their bits.  A random
# integer does so with probability about log(20/19), roughly 5.1%.
#
# A few hundred curves take well under a minute; the command
# `jacsearch experiment --samples 10000` reproduces the full-size run.

# %%
from jacsearch.search import distribution_experiment

res = distribution_experiment(sample_size=300, us=(2.0, 3.0, 4.0), n=48, seed=1)
print(f"p = {res.p}")
print(res.table())

# %%
for row in res.to_json()["rows"]:
    lo, hi = row["pr_A_ci"]
    print(f"u={row['u']}: Pr[A] in [{100 * lo:.1f}%, {100 * hi:.1f}%] at 95% confidence")
