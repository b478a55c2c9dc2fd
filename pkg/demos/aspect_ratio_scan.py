"""Mean inverse distance over unit-volume aspect cells: three independent
evaluation routes, the cubical maximum, and the supporting monotonicity
ingredients (log-concavity scan and the positivity chain)."""

import numpy as np

from caslab import boxint

# Delta(alpha) for the cell (alpha^2/3, alpha^-1/3, alpha^-1/3) * scale:
# a one-dimensional t-integral, a 3D quadrature, and pair-sampling MC
print("Delta(alpha) by three methods")
print(f"{'alpha':>6} {'t-integral':>18} {'3D quadrature':>18} {'MC (5e5 pairs)':>18}")
for alpha in (0.5, 0.75, 1.0, 1.5, 2.0):
    res = boxint.aspect_result(alpha, budget=500_000, seed=99)
    print(
        f"{alpha:>6} {res.delta_t_integral:>18.12f} {res.delta_quadrature:>18.12f}"
        f" {res.delta_mc.mean:>18.12f}"
    )

# the cube value has a classical closed form
cube = boxint.delta_alpha(1.0)
closed = boxint.delta_cube_closed_form()
print()
print(f"cube by t-integral  {cube:.15f}")
print(f"cube closed form    {closed:.15f}")
print(f"difference          {abs(cube - closed):.2e}")

# Delta is symmetric under alpha -> 1/alpha and maximal at the cube
print()
print("reciprocal symmetry and the cubical maximum")
for alpha in (1.25, 1.5, 2.0):
    d, dinv = boxint.delta_alpha(alpha), boxint.delta_alpha(1.0 / alpha)
    print(f"  Delta({alpha}) - Delta({1 / alpha:.4f}) = {d - dinv:.3e}  "
          f"deficit vs cube {closed - d:.6f}")

# reference energy of a doubly charged cell, just the -(n^2/a) Q Delta law
e = boxint.reference_energy(q_strength=0.25, n=2, a=1.0, delta=closed)
print(f"\nreference energy (Q=1/4, n=2, a=1, cube): {e:.12f}")

# concavity of u -> log I_{e^u}(t): strictly negative second differences
# over the default (t, u) grid, an even symmetrized field, and a strictly
# decreasing product along beta
report = boxint.log_concavity_scan()
print()
print("log-concavity scan")
print(f"  max second difference {report.max_second_difference:.6e}")
print(f"  violations            {len(report.violations)}")
print(f"  symmetrized-field deviation {report.symmetry_deviation:.2e}")
print(f"  product monotone      {report.product_monotone}")
print(f"  passed                {report.passed}")

# the positivity chain behind the derivative argument: k > 0, h > 0,
# h(0) = 0, and h' = 2 E k on a strided subgrid
pos = boxint.positivity_chain()
print()
print("positivity chain")
print(f"  k_min {pos.k_min:.6e}  h_min {pos.h_min:.6e}  h(0) = {pos.h_at_zero}")
print(f"  max |h'/(2Ek) - 1| = {pos.max_derivative_rel_err:.2e}")
print(f"  passed {pos.passed}")

# small-r behavior of k: dominated by (5/6) r^4
rs = np.array([0.05, 0.1, 0.2])
for r in rs:
    print(f"  k({r:.2f}) / ((5/6) r^4) = {boxint.chain_k(float(r)) / ((5/6) * r**4):.6f}")
