# %% [markdown]
# # Frequentist power of central and HPD tests
#
# Normal variance with known mean and exponential rate, Jeffreys priors, n = 20,
# H0 at 1. A small replication count keeps this quick; the acceptance suite
# uses R = 20000.

# %%
from credtest import PowerStudyConfig, Scenario, power_study, summarize_comparison
from credtest.power import default_grid

R = 2000

for scenario in (Scenario("normal_variance_known_mean", (0.0,)), Scenario("exponential_rate")):
    cfg = PowerStudyConfig(scenario, 1.0, default_grid(1.0), sample_size=20, replications=R, seed=1)
    curves = {c.test: c for c in power_study(cfg)}
    print(scenario.kind.value)
    print(" theta  central    hpd")
    for i, theta in enumerate(cfg.theta_grid):
        print(f"{theta:6.2f}  {curves['central'].rejection_rates[i]:.3f}  {curves['hpd'].rejection_rates[i]:.3f}")
    s = summarize_comparison(list(curves.values()), 1.0)
    print(f"mean central-hpd difference: below {s.below.mean_difference:+.3f}, above {s.above.mean_difference:+.3f}\n")

# %% [markdown]
# Power is similar below the null value. Above it the central test wins,
# because the HPD set of a right-skewed posterior leans toward small values
# and covers large ones for longer.

# %% [markdown]
# The uniform model with a Pareto prior behaves differently. The posterior
# density decreases, so the HPD set is an upper bound [max(m, max x), U].
# Above theta0 an observation soon exceeds theta0 and the null is excluded by
# the support itself.

# %%
cfg = PowerStudyConfig(Scenario("uniform_upper_pareto", (0.1, 1.0)), 1.0, (0.6, 0.8, 1.0, 1.2, 1.5),
                       replications=R, tests=("hpd",), seed=1)
(h,) = power_study(cfg)
print(list(zip(h.theta_values, h.rejection_rates)))
