"""Finite distance matrices, axiom validation and the sup-metric."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from finmetric.errors import DimensionError, StructureError

__all__ = [
    "DistanceMatrix",
    "Tolerance",
    "Violation",
    "ValidationReport",
    "as_tolerance",
    "validate",
    "sup_distance",
    "zero_matrix",
    "discrete_metric",
]


class DistanceMatrix:
    """Immutable square array of distances between points x_1..x_n.

    Construction only checks structure (square shape, finite entries).
    Whether the entries form a pseudometric or a metric is decided by
    :func:`validate`, which reports violations instead of raising.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        if isinstance(entries, DistanceMatrix):
            arr = entries._entries
        else:
            try:
                arr = np.array(entries, dtype=np.float64)
            except (TypeError, ValueError) as exc:
                raise StructureError(f"cannot read distance matrix: {exc}") from exc
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise StructureError(f"distance matrix must be square, got shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise StructureError("distance matrix has NaN or infinite entries")
            arr.flags.writeable = False
        self._entries = arr

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the underlying ``(n, n)`` float64 array."""
        return self._entries

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries.copy() if copy else self._entries
        return self._entries.astype(dtype)

    def __getitem__(self, key):
        return self._entries[key]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._entries, other._entries))

    __hash__ = None

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n}, entries={self._entries.tolist()!r})"

    def tolist(self) -> list[list[float]]:
        return self._entries.tolist()


@dataclass(frozen=True)
class Tolerance:
    """Absolute slack allowed on triangle inequalities."""

    eps_abs: float = 1e-12

    def __post_init__(self):
        if not (self.eps_abs >= 0 and np.isfinite(self.eps_abs)):
            raise ValueError(f"eps_abs must be a finite nonnegative number, got {self.eps_abs}")


TolLike = Union[Tolerance, float, None]


def as_tolerance(tol: TolLike, default: float = 1e-12) -> Tolerance:
    if tol is None:
        return Tolerance(default)
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


@dataclass(frozen=True)
class Violation:
    """One failing axiom.

    ``indices`` are 0-based. Triangle violations carry a triple
    ``(i, j, k)`` meaning ``d[i, k] > d[i, j] + d[j, k]`` with ``i < k``;
    the other kinds carry a pair.
    """

    kind: str
    indices: tuple[int, ...]
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    is_pseudometric: bool
    is_metric: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]


def validate(m, tol: TolLike = None) -> ValidationReport:
    """Check ``m`` against the pseudometric and metric axioms.

    Symmetry, zero diagonal and nonnegativity are checked exactly.
    Triangle inequalities ``d[i, k] <= d[i, j] + d[j, k]`` get the
    absolute slack ``tol.eps_abs`` (default ``1e-12``). A metric must also
    have strictly positive off-diagonal entries.

    Every failing constraint is listed, not just the first one.
    """
    m = DistanceMatrix(m)
    tol = as_tolerance(tol)
    d = m.entries
    n = m.n
    violations: list[Violation] = []

    iu, ju = np.triu_indices(n, k=1)
    asym = np.abs(d[iu, ju] - d[ju, iu])
    for p in np.flatnonzero(asym > 0):
        violations.append(Violation("symmetry", (int(iu[p]), int(ju[p])), float(asym[p])))

    diag = np.diag(d)
    for i in np.flatnonzero(diag != 0):
        violations.append(Violation("diagonal", (int(i), int(i)), float(abs(diag[i]))))

    iw, jw = np.triu_indices(n, k=0)
    lowest = np.minimum(d[iw, jw], d[jw, iw])
    for p in np.flatnonzero(lowest < 0):
        violations.append(Violation("negativity", (int(iw[p]), int(jw[p])), float(-lowest[p])))

    if n >= 3:
        # excess[i, j, k] = d[i, k] - d[i, j] - d[j, k]
        excess = d[:, None, :] - d[:, :, None] - d[None, :, :]
        idx = np.arange(n)
        excess[idx, idx, :] = -np.inf
        excess[:, idx, idx] = -np.inf
        excess[idx, :, idx] = -np.inf
        # (i, j, k) and (k, j, i) are the same constraint on a symmetric matrix
        worst = np.maximum(excess, excess.transpose(2, 1, 0))
        for i, j, k in zip(*np.nonzero(worst > tol.eps_abs)):
            if i < k:
                violations.append(Violation("triangle", (int(i), int(j), int(k)), float(worst[i, j, k])))

    is_pseudometric = not violations
    off = np.minimum(d[iu, ju], d[ju, iu])
    for p in np.flatnonzero(off <= 0):
        violations.append(Violation("positivity", (int(iu[p]), int(ju[p])), max(0.0, float(-off[p]))))
    is_metric = is_pseudometric and not any(v.kind == "positivity" for v in violations)
    return ValidationReport(is_pseudometric, is_metric, tuple(violations))


def sup_distance(a, b) -> float:
    """Largest absolute entrywise difference between two same-size matrices."""
    a = DistanceMatrix(a)
    b = DistanceMatrix(b)
    if a.n != b.n:
        raise DimensionError(f"size mismatch: {a.n} vs {b.n}")
    if a.n == 0:
        return 0.0
    return float(np.max(np.abs(a.entries - b.entries)))


def zero_matrix(n: int) -> DistanceMatrix:
    return DistanceMatrix(np.zeros((n, n)))


def discrete_metric(n: int, scale: float = 1.0) -> DistanceMatrix:
    """All off-diagonal entries equal to ``scale``."""
    return DistanceMatrix(scale * (1.0 - np.eye(n)))
