"""
Size bounds for the bounded searches and exact computations.
"""

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from spinlift.errors import SizeBoundExceeded

BOUND_ENV_VAR = "SPINLIFT_BOUND"


@dataclass(frozen=True)
class Bounds:
    """
    Every configurable size limit in one place.

    Attributes:
        group_order: Largest group handled by table-based searches (|G x| W| etc.)
        module_order: Largest coefficient module |A|
        h2_size: Largest |G| * rank(A) accepted by h2
        extension_order: Largest |A| * |G| accepted by extension_from_cocycle
        weyl_order: Largest Weyl group enumerated
        clifford_dim: Largest quadratic space dimension
    """

    group_order: int = 64
    module_order: int = 16
    h2_size: int = 16
    extension_order: int = 1024
    weyl_order: int = 10080
    clifford_dim: int = 12

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Bounds":
        """Build bounds, applying SPINLIFT_BOUND to the group order limit."""
        environ = os.environ if environ is None else environ
        raw = environ.get(BOUND_ENV_VAR)
        if raw is None or raw == "":
            return cls()
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{BOUND_ENV_VAR} must be an integer, got {raw!r}")
        return cls().with_group_order(value)

    def with_group_order(self, value: int) -> "Bounds":
        if value < 0:
            raise ValueError("Size bounds must be non-negative")
        return replace(self, group_order=value)

    def check(self, what: str, size: int, bound: int) -> None:
        if size > bound:
            raise SizeBoundExceeded(what, size, bound)


DEFAULT_BOUNDS = Bounds()
