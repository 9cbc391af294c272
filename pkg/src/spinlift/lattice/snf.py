"""
Smith normal form and finitely generated abelian group presentations.

All arithmetic is on Python integers, so intermediate coefficient swell is
harmless. Pivoting always takes the nonzero entry of smallest absolute value
in the unreduced block, ties broken by lowest (row, column), which makes the
unimodular transforms reproducible.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from spinlift.lattice.intmatrix import IntMatrix, IntVector, as_vector


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D, with u_inverse the inverse of U."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inverse: IntMatrix

    @property
    def diagonal(self) -> IntVector:
        return self.d.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def _select_pivot(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    best_value = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            value = abs(row[j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
    return best


def smith_decomposition(matrix: IntMatrix) -> SmithDecomposition:
    """Compute U, D, V (and U^-1) with U M V = D and d_i | d_{i+1}."""
    m, n = matrix.shape
    a = matrix.to_rows()
    u = IntMatrix.identity(m).to_rows()
    u_inv = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    # Row operations act on a and u; the matching inverse column operation acts on u_inv.
    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]
        for row in u_inv:
            row[i], row[k] = row[k], row[i]

    def add_row(target: int, source: int, q: int) -> None:
        # row_target += q * row_source
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        u[target] = [x + q * y for x, y in zip(u[target], u[source])]
        for row in u_inv:
            row[source] -= q * row[target]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_col(target: int, source: int, q: int) -> None:
        for row in a:
            row[target] += q * row[source]
        for row in v:
            row[target] += q * row[source]

    for t in range(min(m, n)):
        while True:
            pivot = _select_pivot(a, t)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                swap_rows(pi, t)
            if pj != t:
                swap_cols(pj, t)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            negate_row(t)
        if _select_pivot(a, t) is None:
            break

    return SmithDecomposition(
        u=IntMatrix.from_rows(u, m),
        d=IntMatrix.from_rows(a, n),
        v=IntMatrix.from_rows(v, n),
        u_inverse=IntMatrix.from_rows(u_inv, m),
    )


def smith_normal_form(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form of an integer matrix.

    Returns:
        (U, D, V) with U, V unimodular, U @ M @ V == D diagonal, d_i | d_{i+1},
        d_i >= 0 and zero entries after the nonzero ones.
    """
    decomposition = smith_decomposition(matrix)
    return decomposition.u, decomposition.d, decomposition.v


@dataclass(frozen=True)
class FinAbPresentation:
    """
    The abelian group Z^ambient_rank / L, L the column span of relation_matrix.

    ``diagonal`` holds the full SNF diagonal (one entry per ambient coordinate,
    0 for free coordinates). Group elements are tuples with one coordinate per
    non-unit diagonal entry, reduced into [0, d) for finite factors.
    """

    ambient_rank: int
    relation_matrix: IntMatrix
    diagonal: IntVector
    projector: IntMatrix = field(repr=False)
    lifter: IntMatrix = field(repr=False)

    @property
    def invariant_factors(self) -> IntVector:
        """Non-unit invariant factors, finite ones first, 0 for each free factor."""
        return tuple(d for d in self.diagonal if d != 1)

    @property
    def _active(self) -> Tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.diagonal) if d != 1)

    @property
    def rank(self) -> int:
        """Number of coordinates of a group element."""
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> IntVector:
        return tuple(d for d in self.invariant_factors if d != 0)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.rank == 0

    def order(self) -> Optional[int]:
        """Group order, or None for an infinite group."""
        if not self.is_finite():
            return None
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    def project(self, vector: Sequence[int]) -> IntVector:
        """Map an ambient vector to its group element."""
        image = self.projector @ as_vector(vector)
        return tuple(
            image[i] % d if d else image[i]
            for i, d in zip(self._active, self.invariant_factors)
        )

    def lift(self, element: Sequence[int]) -> IntVector:
        """An ambient representative of a group element."""
        element = as_vector(element)
        if len(element) != self.rank:
            raise ValueError(f"Expected {self.rank} coordinates, got {len(element)}")
        full = [0] * self.ambient_rank
        for i, value in zip(self._active, element):
            full[i] = value
        return self.lifter @ full

    def reduce(self, element: Sequence[int]) -> IntVector:
        """Canonical form of a group element given in coordinates."""
        return tuple(x % d if d else x for x, d in zip(element, self.invariant_factors))

    def add(self, x: Sequence[int], y: Sequence[int]) -> IntVector:
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x: Sequence[int]) -> IntVector:
        return self.reduce(-a for a in x)

    def zero(self) -> IntVector:
        return (0,) * self.rank

    def is_zero_ambient(self, vector: Sequence[int]) -> bool:
        return all(c == 0 for c in self.project(vector))

    def elements(self) -> Iterator[IntVector]:
        """All group elements in lexicographic coordinate order."""
        if not self.is_finite():
            raise ValueError("Cannot enumerate an infinite group")
        return iter(itertools.product(*(range(d) for d in self.invariant_factors)))

    def describe(self) -> str:
        if self.is_trivial():
            return "trivial"
        parts = ["Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors]
        return " x ".join(parts)


def quotient(ambient_rank: int, sublattice_gens: IntMatrix) -> FinAbPresentation:
    """
    Present Z^ambient_rank modulo the column span of sublattice_gens.

    A generator matrix with zero columns presents the free group Z^ambient_rank.
    """
    if sublattice_gens.rows != ambient_rank:
        raise ValueError(
            f"Generators have {sublattice_gens.rows} rows, ambient rank is {ambient_rank}"
        )
    decomposition = smith_decomposition(sublattice_gens)
    diagonal = list(decomposition.diagonal) + [0] * (ambient_rank - min(sublattice_gens.shape))
    logging.debug(f"Quotient of Z^{ambient_rank} by {sublattice_gens.cols} generators: "
                  f"diagonal {diagonal}")
    return FinAbPresentation(
        ambient_rank=ambient_rank,
        relation_matrix=sublattice_gens,
        diagonal=tuple(diagonal),
        projector=decomposition.u,
        lifter=decomposition.u_inverse,
    )


def diagonal_presentation(moduli: Sequence[int]) -> FinAbPresentation:
    """
    Present the product of Z/d over the given moduli (0 meaning Z).

    The factors keep the given order and are not rearranged into divisibility
    order, so coordinates match the moduli one for one (unit moduli dropped).
    """
    moduli = tuple(abs(d) for d in as_vector(moduli))
    n = len(moduli)
    relations = IntMatrix.from_columns(
        [tuple(d if i == j else 0 for i in range(n)) for j, d in enumerate(moduli) if d != 0],
        n,
    )
    identity = IntMatrix.identity(n)
    return FinAbPresentation(
        ambient_rank=n,
        relation_matrix=relations,
        diagonal=moduli,
        projector=identity,
        lifter=identity,
    )
