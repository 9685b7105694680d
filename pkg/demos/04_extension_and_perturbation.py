"""
Extending metrics and perturbing pseudometrics
==============================================

A metric given on some of the points is extended to all of them without
exceeding a cap. Adding such an extension to a pseudometric gives a
nearby metric whose value jumps by epsilon across a chosen pair.
"""
import numpy as np

from finmetric import discrete_metric, extend_metric, is_katetov, katetov_lift, perturb, sample_pseudometric, sup_distance

###############################################################################
# One new point
# -------------
# A raw distance profile to a space S is usually inconsistent with S.
# katetov_lift repairs it.

rho = np.array([[0, 2, 3], [2, 0, 1.5], [3, 1.5, 0]])
g = np.array([0.1, 0.1, 0.1])
t = katetov_lift(g, rho)
print("raw", g, "katetov?", is_katetov(g, rho))
print("lifted", t, "katetov?", is_katetov(t, rho))

###############################################################################
# Extending from a subset
# -----------------------
# Keep the distances among x_2 and x_4 and fill in the rest, capped at 1.

e = np.array([[0, 0.4], [0.4, 0]])
target = sample_pseudometric(5, seed=3, metric_only=True).entries
target = target / target.max()
full = extend_metric(e, 5, [1, 3], target, cap=1.0)
print(np.round(full.entries, 3))

###############################################################################
# An epsilon perturbation with a jump
# -----------------------------------

d = sample_pseudometric(5, seed=7)
for eps in (1.0, 0.1):
    r = perturb(d, 0, 1, eps)
    print(f"eps={eps}: D(d, rho)={sup_distance(d, r):.3g}, rho(x1,x2)-rho(x1,x1)={r[0, 1] - r[0, 0]:.3g}")

print(perturb(np.zeros((3, 3)), 0, 1, 1.0) == discrete_metric(3))
