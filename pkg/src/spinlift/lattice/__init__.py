"""
Exact integer lattice arithmetic.
"""

from spinlift.lattice.intmatrix import IntMatrix, IntVector, as_vector, dot
from spinlift.lattice.snf import (
    FinAbPresentation,
    SmithDecomposition,
    diagonal_presentation,
    quotient,
    smith_decomposition,
    smith_normal_form,
)
from spinlift.lattice.solve import (
    ModularEchelon,
    SubLattice,
    integer_kernel,
    solve_congruence,
    solve_mod,
    xgcd,
)

__all__ = [
    "IntMatrix",
    "IntVector",
    "as_vector",
    "dot",
    "FinAbPresentation",
    "SmithDecomposition",
    "diagonal_presentation",
    "quotient",
    "smith_decomposition",
    "smith_normal_form",
    "ModularEchelon",
    "SubLattice",
    "integer_kernel",
    "solve_congruence",
    "solve_mod",
    "xgcd",
]
