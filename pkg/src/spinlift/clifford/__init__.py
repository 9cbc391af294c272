"""
Exact Clifford algebras, pin lifts and Stiefel-Whitney classes of finite
orthogonal representations.
"""

from spinlift.clifford.algebra import (
    CliffordElement,
    clifford_mul,
    inverse,
    main_antiinvolution,
    spinor_norm,
    twisted_conjugate,
)
from spinlift.clifford.catalog import (
    REPRESENTATION_NAMES,
    representation,
    rotation_rep,
    rotation_weights,
)
from spinlift.clifford.pin import (
    OrthRep,
    StiefelWhitney2,
    WhitneyReport,
    decomposition_independent,
    direct_sum,
    induced_matrix,
    pin_cocycle,
    pin_extension,
    pin_lift,
    sw1,
    sw2,
    trivial_rep,
    whitney_check,
)
from spinlift.clifford.quadratic import (
    QuadSpace,
    compose_reflections,
    reflection_decompose,
    reflection_matrix,
)

__all__ = [
    "CliffordElement",
    "clifford_mul",
    "inverse",
    "main_antiinvolution",
    "spinor_norm",
    "twisted_conjugate",
    "REPRESENTATION_NAMES",
    "representation",
    "rotation_rep",
    "rotation_weights",
    "OrthRep",
    "StiefelWhitney2",
    "WhitneyReport",
    "decomposition_independent",
    "direct_sum",
    "induced_matrix",
    "pin_cocycle",
    "pin_extension",
    "pin_lift",
    "sw1",
    "sw2",
    "trivial_rep",
    "whitney_check",
    "QuadSpace",
    "compose_reflections",
    "reflection_decompose",
    "reflection_matrix",
]
