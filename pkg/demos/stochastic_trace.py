"""Stochastic estimation of the regulated mode sum: a noise-averaged
energy whose mean is exactly the half-weighted heat trace."""

import numpy as np

from caslab import heattrace, spectrum, stochastic

cube = spectrum.BoxSpec(
    axes=(
        spectrum.AxisSpec(1.0, "dirichlet"),
        spectrum.AxisSpec(1.0, "dirichlet"),
        spectrum.AxisSpec(1.0, "dirichlet"),
    )
)
stream = spectrum.enumerate_modes(cube, cutoff=200.0)
tau = 0.5
target = heattrace.regulated_trace(stream, tau).value
print(f"unit cube, tau = {tau}: regulated trace = {target:.12e}")

# E[U] equals the trace for any g because sigma ~ g^{-1/2} while the
# energy carries g/2 per mode; a forced all-ones draw shows the identity
class OnesRng:
    def standard_normal(self, size=None):
        return np.ones(size)


for g in (0.3, 1.0, 4.0):
    spec = stochastic.SourceSpec(stream=stream, tau=tau, g=g)
    u = stochastic.sample_U(spec, OnesRng())
    print(f"  g={g:<4} forced unit-noise U = {u:.12e}  (ratio {u / target:.15f})")

# genuine sampling: the MC mean converges to the trace at the 1/sqrt(n) rate
print()
print(f"{'n':>8} {'mean':>18} {'stderr':>12} {'z':>8}")
spec = stochastic.SourceSpec(stream=stream, tau=tau, g=1.0)
for n in (1_000, 10_000, 100_000):
    est = stochastic.mc_estimate(spec, n=n, seed=42, worker_count=4)
    z = (est.mean - target) / est.stderr
    print(f"{n:>8} {est.mean:>18.10e} {est.stderr:>12.2e} {z:>8.2f}")

# the complex channel halves the per-mode variance, so its standard error
# should sit near 1/sqrt(2) of the real channel's
cspec = stochastic.SourceSpec(stream=stream, tau=tau, g=1.0, channel="complex")
real = stochastic.mc_estimate(spec, n=50_000, seed=7)
comp = stochastic.mc_estimate(cspec, n=50_000, seed=7)
print()
print(f"real channel stderr    {real.stderr:.4e}")
print(f"complex channel stderr {comp.stderr:.4e}  (ratio {comp.stderr / real.stderr:.4f}, "
      f"1/sqrt(2) = {1 / np.sqrt(2):.4f})")

# fixed (seed, worker_count) reproduces bit-identically; changing the split
# changes the draws but not the statistics
a = stochastic.mc_estimate(spec, n=20_000, seed=11, worker_count=3)
b = stochastic.mc_estimate(spec, n=20_000, seed=11, worker_count=3)
c = stochastic.mc_estimate(spec, n=20_000, seed=11, worker_count=1)
print()
print(f"repeat with same split:  identical = {a.mean == b.mean}")
print(f"different worker split:  mean moves by {abs(a.mean - c.mean):.3e} "
      f"({abs(a.mean - c.mean) / a.stderr:.2f} sigma)")
