"""
From pseudometric to metric
===========================

Raising every distance to at least a small metric ``base`` turns a
pseudometric into a metric while moving it by at most epsilon.
"""
import numpy as np

from finmetric import densify, family_member, sup_distance, validate

d = np.array([[0, 0, 2], [0, 0, 2], [2, 2, 0]], dtype=float)
print("pseudometric, not a metric:", validate(d).is_pseudometric, validate(d).is_metric)

for eps in (1.0, 0.5, 0.01):
    rho = densify(d, eps)
    print(f"eps={eps}: metric={validate(rho).is_metric}, D(d, rho)={sup_distance(d, rho)}")
    print(rho.entries)

###############################################################################
# A custom base metric
# --------------------
# Any metric bounded by epsilon works; here one that scales with index gaps.

idx = np.arange(4)
base = np.abs(idx[:, None] - idx[None, :]) / 3 * 0.05
d = family_member("011")  # x_0 ~ x_1 and x_2 ~ x_3 collapsed
rho = densify(d, 0.05, base)
print("custom base:", validate(rho, 1e-9).is_metric, sup_distance(d, rho))
