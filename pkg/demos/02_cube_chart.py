"""
Cube coordinates for pseudometrics
==================================

Every pseudometric on n ordered points has coordinates in a cube with
n(n-1)/2 - 1 closed factors and a single half-open one. This script walks
through the per-level ("natural") coordinates, the merged ("canonical")
ones, and uses the chart to sample random pseudometrics.
"""
import numpy as np

from finmetric import (
    Level,
    NaturalCoords,
    decode_natural,
    encode_natural,
    from_canonical,
    natural_intervals,
    sample_pseudometric,
    square_pack,
    square_unpack,
    sup_distance,
    to_canonical,
    validate,
)

###############################################################################
# Building a pseudometric level by level
# --------------------------------------
# Point x_2 sits at distance s/(1-s) = 1 from x_1. Point x_3 also sits at
# distance 1 from x_1, which confines d(x_2, x_3) to [0, 2]; u = 0.75 picks 1.5.

c = NaturalCoords(3, (Level(0.5), Level(0.5, (0.75,))))
d = decode_natural(c)
print(d.entries)
print("intervals:", natural_intervals(d))
print("encoded back:", encode_natural(d))

###############################################################################
# Merging half-open coordinates
# -----------------------------
# square_pack maps [0,1)^2 onto [0,1] x [0,1), so two half-open coordinates
# become one closed and one half-open coordinate.

for p in [(0.5, 0.5), (0.0, 0.0), (0.9, 0.1), (0.99, 0.99)]:
    q = square_pack(*p)
    print(p, "->", tuple(round(x, 6) for x in q), "-> back", tuple(round(x, 6) for x in square_unpack(*q)))

###############################################################################
# Canonical coordinates
# ---------------------

for n in range(2, 7):
    d = sample_pseudometric(n, seed=n)
    q = to_canonical(encode_natural(d))
    back = decode_natural(from_canonical(q))
    print(f"n={n}: {len(q.closed)} closed + 1 half-open, roundtrip error {sup_distance(back, d):.1e}")

###############################################################################
# Sampling
# --------
# Uniform coordinates push forward to random pseudometrics; almost all of
# them are genuine metrics.

samples = [sample_pseudometric(6, seed) for seed in range(1000)]
metrics = sum(validate(s, 1e-9).is_metric for s in samples)
print(f"{metrics} of {len(samples)} samples are metrics")
median = np.median([s.entries[np.triu_indices(6, 1)].mean() for s in samples])
print(f"median mean distance: {median:.3f}")
