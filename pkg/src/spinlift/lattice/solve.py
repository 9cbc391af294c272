"""
Linear algebra over Z modulo a sublattice.

The workhorse is a column echelon over Z in which every row may carry its own
modulus (0 meaning an exact row). Columns are sparse and carry the integer
combination of the original unknowns they represent, so the same pass answers
"solve A x = b mod L" and "which x have A x = 0 mod L".
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from spinlift.lattice.intmatrix import IntMatrix, IntVector, as_vector
from spinlift.lattice.snf import smith_decomposition

Sparse = Dict[int, int]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _combine(x: Sparse, a: int, y: Sparse, b: int) -> Sparse:
    result = {k: a * v for k, v in x.items()} if a else {}
    if b:
        for k, v in y.items():
            result[k] = result.get(k, 0) + b * v
    return {k: v for k, v in result.items() if v}


def _reduce(entries: Sparse, moduli: Sequence[int]) -> Sparse:
    reduced = {}
    for row, value in entries.items():
        q = moduli[row]
        if q:
            value %= q
        if value:
            reduced[row] = value
    return reduced


@dataclass
class _Column:
    entries: Sparse
    coeffs: Sparse


@dataclass
class ModularEchelon:
    """
    Column echelon form of a matrix with per-row moduli.

    ``pivots`` maps a row to the unique pivot column with a nonzero entry
    there and zeros above; ``kernel`` holds the coefficient vectors of
    combinations that vanish modulo the row moduli.
    """

    nrows: int
    ncols: int
    moduli: IntVector
    pivots: Dict[int, _Column] = field(default_factory=dict)
    kernel: List[Sparse] = field(default_factory=list)

    @classmethod
    def build(cls, columns: Sequence[Sparse], nrows: int,
              moduli: Sequence[int]) -> "ModularEchelon":
        moduli = as_vector(moduli)
        if len(moduli) != nrows:
            raise ValueError(f"Expected {nrows} moduli, got {len(moduli)}")
        echelon = cls(nrows, len(columns), moduli)
        active: List[_Column] = []
        for j, column in enumerate(columns):
            entries = _reduce(column, moduli)
            if entries:
                active.append(_Column(entries, {j: 1}))
            else:
                echelon.kernel.append({j: 1})

        # After row r is processed every active column vanishes on rows <= r.
        for r in range(nrows):
            hits = [c for c in active if r in c.entries]
            if not hits:
                continue
            pivot = hits[0]
            survivors = []
            for other in hits[1:]:
                a, b = pivot.entries[r], other.entries[r]
                g, s, t = xgcd(a, b)
                new_pivot = _Column(
                    _reduce(_combine(pivot.entries, s, other.entries, t), moduli),
                    _combine(pivot.coeffs, s, other.coeffs, t),
                )
                remainder = _Column(
                    _reduce(_combine(other.entries, a // g, pivot.entries, -(b // g)), moduli),
                    _combine(other.coeffs, a // g, pivot.coeffs, -(b // g)),
                )
                pivot = new_pivot
                survivors.append(remainder)
            q = moduli[r]
            if q:
                a = pivot.entries[r]
                g, s, _ = xgcd(a, q)
                entries = {k: s * v for k, v in pivot.entries.items() if k != r}
                entries = _reduce(entries, moduli)
                entries[r] = g
                remainder = _Column(
                    _reduce({k: -(q // g) * v for k, v in pivot.entries.items() if k != r},
                            moduli),
                    {k: -(q // g) * v for k, v in pivot.coeffs.items()},
                )
                pivot = _Column(entries, {k: s * v for k, v in pivot.coeffs.items() if s * v})
                survivors.append(remainder)
            echelon.pivots[r] = pivot
            hit_ids = {id(c) for c in hits}
            next_active = [c for c in active if id(c) not in hit_ids]
            for column in survivors:
                if column.entries:
                    next_active.append(column)
                elif column.coeffs:
                    echelon.kernel.append(column.coeffs)
            active = next_active
        for column in active:
            if column.coeffs:
                echelon.kernel.append(column.coeffs)
        return echelon

    def solve(self, target: Sparse) -> Optional[IntVector]:
        """A coefficient vector x with sum x_j column_j == target, or None."""
        residual = _reduce(target, self.moduli)
        x: Sparse = {}
        for r in range(self.nrows):
            value = residual.get(r, 0)
            if not value:
                continue
            pivot = self.pivots.get(r)
            if pivot is None:
                return None
            g = pivot.entries[r]
            k = value // g
            if k * g != value:
                return None
            residual = _reduce(_combine(residual, 1, pivot.entries, -k), self.moduli)
            x = _combine(x, 1, pivot.coeffs, k)
        return tuple(x.get(j, 0) for j in range(self.ncols))

    def kernel_vectors(self) -> List[IntVector]:
        return [tuple(c.get(j, 0) for j in range(self.ncols)) for c in self.kernel]


def _sparse_columns(matrix: IntMatrix) -> List[Sparse]:
    return [{i: v for i, v in enumerate(matrix.column(j)) if v} for j in range(matrix.cols)]


def _diagonal_moduli(relations: IntMatrix) -> Optional[IntVector]:
    """Row moduli when every relation column has a single nonzero entry."""
    moduli = [0] * relations.rows
    for column in relations.to_columns():
        support = [i for i, v in enumerate(column) if v]
        if len(support) > 1:
            return None
        if support:
            i = support[0]
            moduli[i] = xgcd(moduli[i], column[i])[0]
    return tuple(moduli)


def solve_congruence(columns: Sequence[Sparse], target: Sparse, moduli: Sequence[int]
                     ) -> Optional[IntVector]:
    """Solve sum x_j columns_j == target with row i taken modulo moduli[i]."""
    echelon = ModularEchelon.build(columns, len(moduli), moduli)
    return echelon.solve(target)


def solve_mod(a: IntMatrix, b: Sequence[int], lattice: IntMatrix) -> Optional[IntVector]:
    """
    Find x with A @ x == b modulo the column span of ``lattice``.

    Returns:
        One integer solution, or None when the congruence has no solution.
    """
    b = as_vector(b)
    if len(b) != a.rows or lattice.rows != a.rows:
        raise ValueError(
            f"Incompatible shapes: A {a.shape}, b {len(b)}, L {lattice.shape}"
        )
    moduli = _diagonal_moduli(lattice)
    if moduli is None:
        # Change coordinates so the relation lattice becomes diagonal.
        decomposition = smith_decomposition(lattice)
        a = decomposition.u @ a
        b = decomposition.u @ b
        diagonal = list(decomposition.diagonal)
        moduli = tuple(diagonal + [0] * (a.rows - len(diagonal)))
    logging.debug(f"solve_mod: {a.rows} congruences in {a.cols} unknowns")
    target = {i: v for i, v in enumerate(b) if v}
    return solve_congruence(_sparse_columns(a), target, moduli)


def integer_kernel(matrix: IntMatrix, moduli: Optional[Sequence[int]] = None) -> List[IntVector]:
    """Generators of {x in Z^cols : matrix @ x == 0, row i modulo moduli[i]}."""
    moduli = (0,) * matrix.rows if moduli is None else as_vector(moduli)
    return ModularEchelon.build(_sparse_columns(matrix), matrix.rows, moduli).kernel_vectors()


@dataclass(frozen=True)
class SubLattice:
    """A sublattice of Z^dim with a basis and exact coordinates."""

    dim: int
    basis: Tuple[IntVector, ...]
    _u: IntMatrix = field(repr=False)
    _scales: IntVector = field(repr=False)

    @classmethod
    def spanned_by(cls, generators: Sequence[Sequence[int]], dim: int) -> "SubLattice":
        if not generators:
            return cls(dim, (), IntMatrix.identity(dim), ())
        decomposition = smith_decomposition(IntMatrix.from_columns(generators, dim))
        scales = tuple(d for d in decomposition.diagonal if d)
        columns = decomposition.u_inverse.to_columns()
        basis = tuple(tuple(d * x for x in columns[i]) for i, d in enumerate(scales))
        return cls(dim, basis, decomposition.u, scales)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, vector: Sequence[int]) -> Optional[IntVector]:
        """Coordinates in ``basis``, or None if the vector is not in the lattice."""
        image = self._u @ as_vector(vector)
        coords = []
        for i, value in enumerate(image):
            if i < self.rank:
                if value % self._scales[i]:
                    return None
                coords.append(value // self._scales[i])
            elif value:
                return None
        return tuple(coords)

    def __contains__(self, vector: Sequence[int]) -> bool:
        return self.coordinates(vector) is not None
