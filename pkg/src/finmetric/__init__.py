"""Finite pseudometric spaces: validation, sup-metric, cube charts, densification and extension."""

from finmetric.chart import (
    CanonicalCoords,
    Level,
    NaturalCoords,
    decode_natural,
    encode_natural,
    from_canonical,
    natural_intervals,
    random_natural_coords,
    sample_pseudometric,
    square_pack,
    square_unpack,
    to_canonical,
)
from finmetric.core import (
    DistanceMatrix,
    Tolerance,
    ValidationReport,
    Violation,
    discrete_metric,
    sup_distance,
    validate,
    zero_matrix,
)
from finmetric.densify import densify
from finmetric.errors import DimensionError, DomainError, MetricError, SamplingError, StructureError
from finmetric.extend import extend_metric, is_katetov, katetov_lift, perturb
from finmetric.family import all_selectors, family_member, family_separation

__version__ = "0.1.0"
