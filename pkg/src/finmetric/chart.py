"""Cube chart for the pseudometrics on n ordered points.

A pseudometric on x_1..x_n is built one point at a time. When x_k is
added, its distance to x_1 is free in [0, inf) and each further distance
d(x_i, x_k) is confined to the interval

    [max_{j<i} |d(x_j, x_i) - d(x_j, x_k)|,  min_{j<i} d(x_j, x_i) + d(x_j, x_k)].

Level k is therefore one half-open coordinate ``s`` (the free distance,
squashed by t -> t / (1 + t)) and k - 2 closed coordinates ``u`` giving the
relative position inside each interval. That is the "natural" chart.

The "canonical" chart merges the n - 1 half-open coordinates pairwise with
:func:`square_pack`, leaving n(n-1)/2 - 1 closed coordinates and one
half-open coordinate.

Point order matters: coordinates always refer to the input order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from finmetric.core import DistanceMatrix, TolLike, as_tolerance, validate
from finmetric.errors import DomainError, SamplingError

__all__ = [
    "Level",
    "NaturalCoords",
    "CanonicalCoords",
    "decode_natural",
    "encode_natural",
    "natural_intervals",
    "square_pack",
    "square_unpack",
    "to_canonical",
    "from_canonical",
    "random_natural_coords",
    "sample_pseudometric",
    "S_MAX",
]

# largest half-open coordinate the sampler draws
S_MAX = 1.0 - 2.0**-32

# slack before an empty interval counts as a real collapse rather than rounding
_COLLAPSE_SLACK = 1e-12

_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class Level:
    s: float
    u: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "u", tuple(float(x) for x in self.u))


@dataclass(frozen=True)
class NaturalCoords:
    """Per-level chart data; ``levels[k - 2]`` describes point x_k."""

    n: int
    levels: tuple[Level, ...]

    def __post_init__(self):
        levels = tuple(lv if isinstance(lv, Level) else Level(*lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        if self.n < 1:
            raise DomainError(f"n must be positive, got {self.n}")
        if len(levels) != self.n - 1:
            raise DomainError(f"expected {self.n - 1} levels for n={self.n}, got {len(levels)}")
        for k, lv in enumerate(levels, start=2):
            if not 0.0 <= lv.s < 1.0:
                raise DomainError(f"level {k}: s={lv.s} outside [0, 1)")
            if len(lv.u) != k - 2:
                raise DomainError(f"level {k}: expected {k - 2} interval coordinates, got {len(lv.u)}")
            if not all(0.0 <= x <= 1.0 for x in lv.u):
                raise DomainError(f"level {k}: interval coordinate outside [0, 1]")

    @property
    def dimension(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class CanonicalCoords:
    """A point of [0,1]^(N-1) x [0,1) with N = n(n-1)/2, for n >= 2."""

    n: int
    closed: tuple[float, ...]
    half_open: float

    def __post_init__(self):
        object.__setattr__(self, "closed", tuple(float(x) for x in self.closed))
        object.__setattr__(self, "half_open", float(self.half_open))
        if self.n < 2:
            raise DomainError("canonical coordinates need n >= 2; a singleton has only the zero pseudometric")
        want = self.n * (self.n - 1) // 2 - 1
        if len(self.closed) != want:
            raise DomainError(f"expected {want} closed coordinates for n={self.n}, got {len(self.closed)}")
        if not all(0.0 <= x <= 1.0 for x in self.closed):
            raise DomainError("closed coordinate outside [0, 1]")
        if not 0.0 <= self.half_open < 1.0:
            raise DomainError(f"half-open coordinate {self.half_open} outside [0, 1)")


def _interval(d, i: int, t: Sequence[float]) -> tuple[float, float]:
    # bounds on d(x_i, new) given the new point's distances t[0..i-1]
    lo = 0.0
    hi = math.inf
    for j in range(i):
        dji = d[j][i]
        lo = max(lo, abs(dji - t[j]))
        hi = min(hi, dji + t[j])
    return lo, hi


def decode_natural(c: NaturalCoords) -> DistanceMatrix:
    """Build the pseudometric described by natural coordinates."""
    n = c.n
    d = [[0.0] * n for _ in range(n)]
    for k, lv in enumerate(c.levels, start=1):
        # 0-based: point k is being attached to points 0..k-1
        t = [lv.s / (1.0 - lv.s)]
        for i in range(1, k):
            lo, hi = _interval(d, i, t)
            width = hi - lo
            if width < -_COLLAPSE_SLACK:
                raise AssertionError(f"interval collapse at level {k + 1}, i={i + 1}: [{lo}, {hi}]")
            t.append(lo + lv.u[i - 1] * max(width, 0.0))
        for i, ti in enumerate(t):
            d[i][k] = d[k][i] = ti
    return DistanceMatrix(d)


def natural_intervals(m) -> list[list[tuple[float, float]]]:
    """The ``(L, U)`` bounds that encoding ``m`` uses, level by level.

    Entry ``[k - 2][i - 2]`` is the interval for d(x_i, x_k). Decoding
    performs the same arithmetic, so for a decoded matrix these are the
    intervals the decoder saw.
    """
    m = DistanceMatrix(m)
    d = m.entries.tolist()
    out = []
    for k in range(1, m.n):
        t = [d[j][k] for j in range(k)]
        out.append([_interval(d, i, t) for i in range(1, k)])
    return out


def encode_natural(m, tol: TolLike = 1e-9) -> NaturalCoords:
    """Natural coordinates of a pseudometric.

    Inverse of :func:`decode_natural`. When an interval is degenerate
    (``U == L``) the position inside it carries no information and is set
    to 0. ``tol`` is the triangle slack used to accept ``m``.
    """
    m = DistanceMatrix(m)
    if m.n < 1:
        raise DomainError("need at least one point")
    report = validate(m, as_tolerance(tol))
    if not report.is_pseudometric:
        raise DomainError(f"not a pseudometric: {len(report.violations)} violation(s)")
    d = m.entries.tolist()
    levels = []
    for k, bounds in zip(range(1, m.n), natural_intervals(m)):
        t0 = d[0][k]
        s = t0 / (1.0 + t0)
        if s >= 1.0:
            raise DomainError(f"distance {t0} too large to encode in [0, 1)")
        u = []
        for i, (lo, hi) in enumerate(bounds, start=1):
            width = hi - lo
            u.append(min(1.0, max(0.0, (d[i][k] - lo) / width)) if width > 0 else 0.0)
        levels.append(Level(s, tuple(u)))
    return NaturalCoords(m.n, tuple(levels))


def _gauge_point(r: float, phi: float) -> tuple[float, float]:
    # point of the square at max-norm radius r/2 about the centre, angle phi
    cx, cy = math.cos(phi), math.sin(phi)
    scale = 0.5 * r / max(abs(cx), abs(cy))
    return 0.5 + scale * cx, 0.5 + scale * cy


def _angle_deg(x: float, y: float, low: float) -> float:
    theta = math.degrees(math.atan2(y, x))
    while theta < low:
        theta += 360.0
    while theta >= low + 360.0:
        theta -= 360.0
    return theta


def square_pack(a: float, b: float) -> tuple[float, float]:
    """Homeomorphism [0,1)^2 -> [0,1] x [0,1).

    Work radially about (0.5, 0.5) with the max-norm gauge. The boundary
    arc missing from the domain (right and top edges, -45 to 135 degrees)
    is squeezed onto the arc missing from the target (top edge, 45 to 135
    degrees) and the remaining arc is stretched to cover the rest. Both
    pieces of the angle map are linear, and 135 degrees is fixed.
    """
    a, b = float(a), float(b)
    if not (0.0 <= a < 1.0 and 0.0 <= b < 1.0):
        raise DomainError(f"square_pack needs a point of [0,1)^2, got ({a}, {b})")
    x, y = a - 0.5, b - 0.5
    r = 2.0 * max(abs(x), abs(y))
    if r == 0.0:
        return 0.5, 0.5
    theta = _angle_deg(x, y, -45.0)
    if theta <= 135.0:
        phi = 45.0 + 0.5 * (theta + 45.0)
    else:
        phi = 135.0 + 1.5 * (theta - 135.0)
    c, h = _gauge_point(r, math.radians(phi))
    return min(1.0, max(0.0, c)), min(_BELOW_ONE, max(0.0, h))


def square_unpack(c: float, h: float) -> tuple[float, float]:
    """Inverse of :func:`square_pack`."""
    c, h = float(c), float(h)
    if not (0.0 <= c <= 1.0 and 0.0 <= h < 1.0):
        raise DomainError(f"square_unpack needs a point of [0,1] x [0,1), got ({c}, {h})")
    x, y = c - 0.5, h - 0.5
    r = 2.0 * max(abs(x), abs(y))
    if r == 0.0:
        return 0.5, 0.5
    phi = _angle_deg(x, y, 45.0)
    if phi <= 135.0:
        theta = 2.0 * (phi - 45.0) - 45.0
    else:
        theta = 135.0 + (phi - 135.0) / 1.5
    a, b = _gauge_point(r, math.radians(theta))
    return min(_BELOW_ONE, max(0.0, a)), min(_BELOW_ONE, max(0.0, b))


def to_canonical(c: NaturalCoords) -> CanonicalCoords:
    """Fold the half-open coordinates into one.

    ``closed`` holds the n - 2 closed outputs of the fold (in fold order)
    followed by every interval coordinate in level order.
    """
    if c.n < 2:
        raise DomainError("a singleton has no cube chart")
    halves = [lv.s for lv in c.levels]
    packed = []
    h = halves[0]
    for s in halves[1:]:
        closed_part, h = square_pack(h, s)
        packed.append(closed_part)
    interval_coords = [x for lv in c.levels for x in lv.u]
    return CanonicalCoords(c.n, tuple(packed + interval_coords), h)


def from_canonical(q: CanonicalCoords) -> NaturalCoords:
    n = q.n
    packed, rest = q.closed[: n - 2], q.closed[n - 2 :]
    halves_rev = []
    h = q.half_open
    for closed_part in reversed(packed):
        h, s = square_unpack(closed_part, h)
        halves_rev.append(s)
    halves = [h] + halves_rev[::-1]
    levels = []
    pos = 0
    for k, s in enumerate(halves, start=2):
        levels.append(Level(s, rest[pos : pos + k - 2]))
        pos += k - 2
    return NaturalCoords(n, tuple(levels))


def random_natural_coords(n: int, rng: np.random.Generator) -> NaturalCoords:
    """Uniform draw: each s from [0, S_MAX], each u from [0, 1)."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    levels = []
    for k in range(2, n + 1):
        s = float(rng.uniform(0.0, S_MAX))
        u = rng.uniform(0.0, 1.0, size=k - 2).tolist()
        levels.append(Level(s, tuple(u)))
    return NaturalCoords(n, tuple(levels))


def sample_pseudometric(n: int, seed: int, metric_only: bool = False, max_draws: int = 10_000) -> DistanceMatrix:
    """Random pseudometric on n points, pushed forward from uniform coordinates.

    With ``metric_only`` draws are repeated until the result is a metric.
    The same ``(n, seed, metric_only)`` always gives the same matrix.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        m = decode_natural(random_natural_coords(n, rng))
        # decoding always yields a pseudometric; only positivity can fail
        if not metric_only or not validate(m).of_kind("positivity"):
            return m
    raise SamplingError(f"no metric found in {max_draws} draws for n={n}")
