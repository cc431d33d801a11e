"""
Mean, minimum and maximum coverage
==================================

Summaries of the coverage curves over lambda = 0.1 .. 75.0, printed next to
the published values.
"""

from poisson_chisq import summary_table
from poisson_chisq.report_cli import ROW_LABELS

PUBLISHED = {
    0.05: [(0.9611, 0.9504, 0.9964), (0.9473, 0.8701, 0.9964), (0.9497, 0.8187, 0.9743),
           (0.9499, 0.9048, 0.9865), (0.9561, 0.9048, 0.9865), (0.9549, 0.9086, 0.9964)],
    0.01: [(0.9926, 0.9902, 0.9992), (0.9891, 0.9653, 0.9992), (0.9898, 0.9048, 0.9947),
           (0.9900, 0.9736, 0.9982), (0.9915, 0.9825, 0.9982), (0.9912, 0.9788, 0.9992)],
}

for alpha, published in PUBLISHED.items():
    print(f"\n{100 * (1 - alpha):.0f}% intervals       computed (mean/min/max)    published")
    for (method, stats), ref in zip(summary_table(alpha).items(), published):
        got = stats.rounded()
        flag = "" if got == ref else "   <-- differs"
        print(f"{ROW_LABELS[method][:22]:<22}  {got[0]:.4f} {got[1]:.4f} {got[2]:.4f}    "
              f"{ref[0]:.4f} {ref[1]:.4f} {ref[2]:.4f}{flag}")
        print(f"{'':<22}  min at lambda={stats.argmin_lambda:g}, max at lambda={stats.argmax_lambda:g}")
