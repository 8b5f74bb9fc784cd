# %% [markdown]
# # Central intervals, HPD sets and credible bounds
#
# Three observations from an exponential model, rate lambda, Jeffreys prior
# 1/lambda. The posterior is gamma(n, sum x) = gamma(3, 4.5).

# %%
from credtest import (
    Scenario,
    central_interval,
    credible_bound,
    hpd_set,
    make_distribution,
    posterior_from_data,
)

post = posterior_from_data(Scenario("exponential_rate"), [1.0, 2.0, 1.5])
print(post, post.shape_class.value)

# %% [markdown]
# The equal-tailed interval puts alpha/2 in each tail. The HPD set is the
# level set {lambda: density >= k}; for a right-skewed posterior it is shifted
# left and is shorter.

# %%
for name, cset in [("central", central_interval(post, 0.05)), ("hpd", hpd_set(post, 0.05))]:
    lo, hi = cset.intervals[0]
    print(f"{name:8s} ({lo:.5f}, {hi:.5f})  length {cset.length:.5f}  mass {cset.achieved_mass:.10f}")

h = hpd_set(post, 0.05)
lo, hi = h.intervals[0]
print("density at both ends:", post.pdf(lo), post.pdf(hi), "level", h.density_level)

# %% [markdown]
# One-sided bounds.

# %%
print(credible_bound(post, 0.05, "lower").intervals)
print(credible_bound(post, 0.05, "upper").intervals)

# %% [markdown]
# A decreasing density (Pareto posterior for a uniform upper endpoint) gives
# an HPD set glued to the support minimum, i.e. an upper credible bound.

# %%
par = make_distribution("pareto", (2.0, 4.0))
print(hpd_set(par, 0.05))

# %% [markdown]
# For a normal posterior the two constructions coincide.

# %%
norm = make_distribution("normal", (0.3, 1.2))
print(central_interval(norm, 0.05).intervals, hpd_set(norm, 0.05).intervals)
