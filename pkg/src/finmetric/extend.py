"""Extending metrics from a subset, one point at a time.

A new point z can be attached to a metric space (S, rho) with distances
t exactly when t satisfies the Katetov conditions

    |t[a] - t[b]| <= rho(a, b) <= t[a] + t[b]    for all a, b in S.

:func:`katetov_lift` turns any candidate profile into such a t without
exceeding the bounds the candidate and rho already respect, and
:func:`extend_metric` repeats it to grow a metric on a subset into a
metric on the full index set.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from finmetric.core import DistanceMatrix, TolLike, as_tolerance, discrete_metric, validate
from finmetric.errors import DimensionError, DomainError

__all__ = ["katetov_lift", "is_katetov", "extend_metric", "perturb"]


def _lift(g0: np.ndarray, rho: np.ndarray) -> np.ndarray:
    # raise until the lower Katetov bound holds, then min-convolve with rho
    raised = np.maximum(g0, np.max(rho - g0[None, :], axis=1))
    return np.min(raised[None, :] + rho, axis=1)


def katetov_lift(g, rho, floor: float = 0.0, tol: TolLike = None) -> np.ndarray:
    """Turn a candidate profile ``g`` into a Katetov profile over ``rho``.

    ``g`` is first clamped below by ``floor``. The result ``t`` satisfies
    the Katetov conditions, ``t >= floor``, and ``t <= C`` whenever every
    entry of ``rho`` and of the clamped ``g`` is at most ``C``. A profile
    that already satisfies the conditions (and the floor) is returned
    unchanged.
    """
    rho = DistanceMatrix(rho)
    g = np.asarray(g, dtype=np.float64).reshape(-1)
    if g.shape[0] != rho.n:
        raise DimensionError(f"profile has {g.shape[0]} values for {rho.n} points")
    if not np.all(np.isfinite(g)) or np.any(g < 0):
        raise DomainError("profile values must be finite and nonnegative")
    if not (floor >= 0 and np.isfinite(floor)):
        raise DomainError(f"floor must be finite and nonnegative, got {floor}")
    if not validate(rho, as_tolerance(tol)).is_metric:
        raise DomainError("rho is not a metric")
    if rho.n == 0:
        return g.copy()
    return _lift(np.maximum(g, floor), rho.entries)


def is_katetov(t, rho, tol: float = 1e-12) -> bool:
    """Brute-force check of both Katetov inequalities for every pair."""
    t = np.asarray(t, dtype=np.float64)
    r = DistanceMatrix(rho).entries
    diff = np.abs(t[:, None] - t[None, :])
    total = t[:, None] + t[None, :]
    return bool(np.all(t >= 0) and np.all(diff <= r + tol) and np.all(r <= total + tol))


def extend_metric(e, full_n: int, indices: Sequence[int], target, cap: float, floor: float | None = None,
                  tol: TolLike = None) -> DistanceMatrix:
    """Extend the metric ``e`` on the points ``indices`` to all ``full_n`` points.

    Points outside ``indices`` are attached in ascending index order. Each
    one starts from its distances in ``target`` clamped to ``[floor, cap]``
    and is fixed up with :func:`katetov_lift`. Entries of ``e`` are copied
    unchanged, every entry of the result is at most ``cap`` and every new
    off-diagonal entry is at least ``floor``.

    ``floor`` defaults to ``min(1e-3 * cap, smallest positive entry of e)``.
    """
    e = DistanceMatrix(e)
    target = DistanceMatrix(target)
    idx = [int(i) for i in indices]
    cap = float(cap)
    tol = as_tolerance(tol)

    if len(idx) != e.n:
        raise DimensionError(f"{len(idx)} indices for a {e.n}-point metric")
    if len(set(idx)) != len(idx) or any(not 0 <= i < full_n for i in idx):
        raise DomainError("indices must be distinct and within range")
    if target.n != full_n:
        raise DimensionError(f"target has {target.n} points, expected {full_n}")
    if not (cap > 0 and np.isfinite(cap)):
        raise DomainError(f"cap must be positive and finite, got {cap}")
    if not validate(e, tol).is_metric:
        raise DomainError("e is not a metric")
    if not validate(target, tol).is_metric:
        raise DomainError("target is not a metric")
    if e.n and e.entries.max() > cap:
        raise DomainError("e exceeds cap")
    if full_n and target.entries.max() > cap:
        raise DomainError("target exceeds cap")

    positive = e.entries[e.entries > 0]
    min_positive = float(positive.min()) if positive.size else np.inf
    if floor is None:
        floor = min(1e-3 * cap, min_positive)
    floor = float(floor)
    if not (floor > 0 and floor <= cap):
        raise DomainError(f"floor must lie in (0, cap], got {floor}")
    if floor > min_positive:
        raise DomainError(f"floor {floor} exceeds the smallest distance of e ({min_positive})")

    out = np.zeros((full_n, full_n))
    out[np.ix_(idx, idx)] = e.entries
    placed = list(idx)
    for p in range(full_n):
        if p in idx:
            continue
        if placed:
            profile = np.clip(target.entries[p, placed], floor, cap)
            sub = out[np.ix_(placed, placed)]
            t = np.minimum(_lift(profile, sub), cap)
            assert is_katetov(t, sub, tol=1e-12 * max(1.0, cap)), "cap clamp broke the Katetov conditions"
            out[p, placed] = t
            out[placed, p] = t
        placed.append(p)
    return DistanceMatrix(out)


def _bounded_sum(d: np.ndarray, e: np.ndarray, bound: float) -> np.ndarray:
    # d + e, nudged down by ulps where rounding would put it more than bound above d
    out = d + e
    over = (out - d) > bound
    while np.any(over):
        out[over] = np.nextafter(out[over], -np.inf)
        over = (out - d) > bound
    return out


def perturb(d, i: int, j: int, epsilon: float, tol: TolLike = 1e-9) -> DistanceMatrix:
    """Metric within ``epsilon`` of ``d`` that jumps by ``epsilon`` across ``(i, j)``.

    Returns ``d + e~`` where ``e~`` extends the two-point metric with
    ``e~(i, j) = epsilon`` to all points, bounded by ``epsilon``.
    """
    d = DistanceMatrix(d)
    epsilon = float(epsilon)
    if i == j:
        raise DomainError("perturb needs two distinct points")
    if not (0 <= i < d.n and 0 <= j < d.n):
        raise DomainError(f"pair ({i}, {j}) out of range for {d.n} points")
    if not (epsilon > 0 and np.isfinite(epsilon)):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon}")
    if not validate(d, as_tolerance(tol)).is_pseudometric:
        raise DomainError("d is not a pseudometric")
    pair = DistanceMatrix([[0.0, epsilon], [epsilon, 0.0]])
    bump = extend_metric(pair, d.n, [i, j], discrete_metric(d.n, epsilon), cap=epsilon, floor=epsilon * 1e-3)
    return DistanceMatrix(_bounded_sum(d.entries, bump.entries, epsilon))
