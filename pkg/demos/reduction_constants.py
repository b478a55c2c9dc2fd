"""Reduction constants three ways: closed form, radial momentum quadrature,
and the proper-time representation, plus the combined two-step chain."""

import math

from caslab import riesz

print("reduction constants C(m, s), three routes")
print(f"{'m':>2} {'s':>5} {'closed':>22} {'momentum':>22} {'schwinger':>22}")
for m, s in ((1, 3.0), (2, 2.0), (3, 2.5), (3, 4.0), (4, 3.0)):
    lam = 1.0
    closed = riesz.reduction_constant(m, s) * lam ** (0.5 * m - s)
    mom = riesz.momentum_integral(m, s, lam)
    sch = riesz.schwinger_integral(m, s, lam)
    print(f"{m:>2} {s:>5.2f} {closed:>22.15e} {mom:>22.15e} {sch:>22.15e}")

print()
print("special values:")
print(f"  C(3, 5/2) = {riesz.reduction_constant(3, 2.5):.15e}")
print(f"  1/(6 pi^2) = {1.0 / (6.0 * math.pi**2):.15e}")
print(f"  C(1, 3)   = {riesz.reduction_constant(1, 3.0):.15e}  (= 3/16)")

# at the critical exponent s*(m) = 1 + m/2 the lambda dependence collapses
# to a pure 1/lambda law
print()
print("critical exponent: lambda * integral should be lambda-independent")
for m in (1, 2, 3):
    s = riesz.critical_exponent(m)
    vals = [lam * riesz.momentum_integral(m, s, lam) for lam in (0.5, 1.0, 5.0)]
    spread = (max(vals) - min(vals)) / min(vals)
    print(f"  m={m}, s*={s}: lambda*I = {vals[1]:.12e}, spread {spread:.2e}")

print()
c1, c3, nested = riesz.two_step_chain(1.0)
print("two-step chain at lambda = 1:")
print(f"  stage constants  {c1:.15e} * {c3:.15e}")
print(f"  product          {c1 * c3:.15e}")
print(f"  1/(32 pi^2)      {1.0 / (32.0 * math.pi**2):.15e}")
print(f"  nested 4D value  {nested:.15e}")
