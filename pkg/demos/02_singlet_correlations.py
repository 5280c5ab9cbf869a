"""
Singlet correlations: closed form against sampling
==================================================

Particle 1 reads +1 or -1 with probability 1/2; given that, particle 2 reads
the opposite value with probability cos^2(theta/2). The product averages to
-cos(theta).
"""

# %%
import math

from spinframe import (
    MeasurementSettings,
    RngStream,
    conditional_distribution,
    estimate_correlation,
    expected_correlation,
    joint_distribution,
)

theta = math.pi / 3
print(conditional_distribution(theta))
print(joint_distribution(theta))
print("E(theta) =", expected_correlation(theta).value)

# %%
est = estimate_correlation(MeasurementSettings.from_theta(theta), 10**6, RngStream(master_seed=1))
print(f"Monte Carlo: {est.mean:+.5f} +/- {est.std_error:.5f}   counts {est.counts}")

# %%
# at theta = 0 the anti-correlation is exact, not statistical
est0 = estimate_correlation(MeasurementSettings.from_theta(0.0), 10**6, RngStream(1))
print("theta = 0:", est0.counts)
