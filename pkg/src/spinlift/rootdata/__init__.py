"""
Root data, their catalog, and weight multisets.
"""

from spinlift.rootdata.catalog import CATALOG_NAMES, catalog, split_catalog
from spinlift.rootdata.datum import (
    RootDatum,
    ValidationReport,
    character_quotient,
    dualize,
    fundamental_group,
    positive_coroot_sum,
    validate,
    weyl_group,
)
from spinlift.rootdata.weights import (
    CHARACTER,
    COCHARACTER,
    WeightMultiset,
    adjoint_weights,
    double,
    hyperbolic,
    orthogonal_sum,
    random_multiset,
    relative_adjoint_weights,
    tautological_weights,
)

__all__ = [
    "CATALOG_NAMES",
    "catalog",
    "split_catalog",
    "RootDatum",
    "ValidationReport",
    "character_quotient",
    "dualize",
    "fundamental_group",
    "positive_coroot_sum",
    "validate",
    "weyl_group",
    "CHARACTER",
    "COCHARACTER",
    "WeightMultiset",
    "adjoint_weights",
    "double",
    "hyperbolic",
    "orthogonal_sum",
    "random_multiset",
    "relative_adjoint_weights",
    "tautological_weights",
]
