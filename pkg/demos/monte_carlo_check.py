"""
Simulated versus exact coverage
===============================

The exact coverage sum checked against seeded Poisson simulation.
"""

from poisson_chisq import coverage_at, mc_coverage

cases = [("usual", 0.05, 10.0), ("structural", 0.01, 0.5), ("uniform", 0.05, 0.2), ("jeffreys", 0.05, 5.0)]
for method, alpha, lam in cases:
    exact = coverage_at(method, alpha, lam)
    est, se = mc_coverage(method, alpha, lam, reps=10**6, seed=2024)
    print(f"{method:<10} alpha={alpha:<5} lambda={lam:<5} exact={exact:.5f}  "
          f"simulated={est:.5f} +/- {se:.5f}  z={(est - exact) / se:+.2f}")
