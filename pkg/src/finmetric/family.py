"""Binary families of pseudometrics at mutual sup-distance 1.

A bit string a = (a_1, ..., a_k) defines a pseudometric on x_0, x_1..x_k:
x_0 is at distance a_g from x_g, and d(x_g, x_l) = |a_g - a_l|. Distinct
bit strings give members exactly 1 apart.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from finmetric.core import DistanceMatrix, sup_distance
from finmetric.errors import DomainError

__all__ = ["parse_bits", "family_member", "family_separation", "all_selectors", "MAX_ENUMERATION_BITS"]

MAX_ENUMERATION_BITS = 20


def parse_bits(bits: str | Sequence[int]) -> tuple[int, ...]:
    """Accept ``"0110"`` or a sequence of 0/1 values."""
    if isinstance(bits, str):
        bits = bits.strip()
        if any(ch not in "01" for ch in bits):
            raise DomainError(f"bit string may contain only 0 and 1: {bits!r}")
        return tuple(int(ch) for ch in bits)
    out = []
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"selector entries must be 0 or 1, got {b!r}")
        out.append(int(b))
    return tuple(out)


def family_member(bits: str | Sequence[int]) -> DistanceMatrix:
    a = np.array((0,) + parse_bits(bits), dtype=np.float64)
    # row 0 is a itself since a[0] = 0
    return DistanceMatrix(np.abs(a[:, None] - a[None, :]))


def family_separation(selectors: Iterable[str | Sequence[int]]) -> float:
    """Smallest sup-distance between members of the listed selectors.

    Returns ``math.inf`` for a single selector. Duplicate selectors give 0.
    """
    parsed = [parse_bits(s) for s in selectors]
    if not parsed:
        raise DomainError("need at least one selector")
    if len({len(p) for p in parsed}) > 1:
        raise DomainError("selectors have different lengths")
    members = [family_member(p) for p in parsed]
    best = math.inf
    for x, y in itertools.combinations(members, 2):
        best = min(best, sup_distance(x, y))
        if best == 0.0:
            break
    return best


def all_selectors(k: int) -> Iterator[tuple[int, ...]]:
    """Every bit string of length ``k``; refuses ``k`` above 20."""
    if not 0 <= k <= MAX_ENUMERATION_BITS:
        raise DomainError(f"enumeration is limited to k <= {MAX_ENUMERATION_BITS}, got {k}")
    return itertools.product((0, 1), repeat=k)
