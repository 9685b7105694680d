"""Approximate a pseudometric by a metric in the sup-metric."""

from __future__ import annotations

import numpy as np

from finmetric.core import DistanceMatrix, TolLike, as_tolerance, discrete_metric, validate
from finmetric.errors import DimensionError, DomainError

__all__ = ["densify"]


def densify(d, epsilon: float, base=None, tol: TolLike = 1e-9) -> DistanceMatrix:
    """Entrywise maximum of ``d`` and a small metric ``base``.

    ``base`` must be a metric with every entry at most ``epsilon``; it
    defaults to ``epsilon`` times the discrete metric. The result is a
    metric, lies above ``d`` entrywise, agrees with ``d`` wherever
    ``d >= epsilon`` and is within ``epsilon`` of ``d`` in sup-distance.

    ``tol`` is the triangle slack used to accept ``d``.
    """
    d = DistanceMatrix(d)
    epsilon = float(epsilon)
    if not (epsilon > 0 and np.isfinite(epsilon)):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon}")
    tol = as_tolerance(tol)
    if not validate(d, tol).is_pseudometric:
        raise DomainError("d is not a pseudometric")
    if base is None:
        base = discrete_metric(d.n, epsilon)
    else:
        base = DistanceMatrix(base)
        if base.n != d.n:
            raise DimensionError(f"base has {base.n} points, d has {d.n}")
        if not validate(base, tol).is_metric:
            raise DomainError("base is not a metric")
        if base.n and base.entries.max() > epsilon:
            raise DomainError(f"base exceeds epsilon={epsilon}")
    return DistanceMatrix(np.maximum(d.entries, base.entries))
