"""
Validating distance matrices
============================

Check a few small matrices against the pseudometric and metric axioms and
measure how far apart two of them are in the sup-metric.
"""
import numpy as np

from finmetric import discrete_metric, sup_distance, validate, zero_matrix

###############################################################################
# A valid metric and a broken one
# -------------------------------
# The discrete metric passes everything. Stretching one side of a triangle
# past the sum of the other two produces a triangle violation.

print(validate(discrete_metric(3)))

broken = np.array([[0, 1, 3], [1, 0, 1], [3, 1, 0]], dtype=float)
report = validate(broken)
print("pseudometric:", report.is_pseudometric)
for v in report.violations:
    print(f"  {v.kind} at {v.indices} by {v.magnitude}")

###############################################################################
# Pseudometrics that are not metrics
# ----------------------------------
# Zero distance between distinct points is allowed for a pseudometric only.

report = validate(zero_matrix(2))
print("zero matrix:", report.is_pseudometric, report.is_metric, [v.kind for v in report.violations])

###############################################################################
# Triangle slack
# --------------
# Floating-point results rarely satisfy triangle inequalities exactly; a
# tolerance absorbs the rounding.

nearly = broken.copy()
nearly[0, 2] = nearly[2, 0] = 2 + 1e-11
print("strict:", validate(nearly).is_pseudometric, " with 1e-9 slack:", validate(nearly, 1e-9).is_pseudometric)

###############################################################################
# Sup-distance
# ------------

print("D(zero, discrete) =", sup_distance(zero_matrix(3), discrete_metric(3)))
print("D(discrete, 2 * discrete) =", sup_distance(discrete_metric(4), discrete_metric(4, 2.0)))
