"""
Six chi-square intervals for a Poisson count
============================================

Each method turns an observed count ``x`` into an interval
``[chi2(alpha/2, f1) / 2, chi2(1 - alpha/2, f2) / 2]``.  Only the degrees
of freedom differ.
"""

from poisson_chisq import MethodKind, degrees_for, lambda_interval, rate_interval

# A handful of counts, 95% level
for x in (0, 1, 3, 10, 50):
    print(f"x = {x}")
    for method in MethodKind:
        f1, f2 = degrees_for(method, x)
        iv = lambda_interval(method, x, alpha=0.05)
        print(f"  {method.value:<10} f=({f1:>3},{f2:>3})  [{iv.lower:9.4f}, {iv.upper:9.4f}]  width {iv.width:.4f}")

# At x = 0 the rules with f1 = 2x put the lower limit at 0, and the
# structural rule (f2 = 0) computes its upper limit with one degree of freedom.
print(lambda_interval("structural", 0, 0.05))

###############################################################################
# Rates: 7 events in 2.5 years of observation.  The rate interval is the
# lambda interval divided by the exposure.
nu = rate_interval("jeffreys", 7, t=2.5, alpha=0.05)
print(f"rate per year: [{nu.lower:.4f}, {nu.upper:.4f}]")
