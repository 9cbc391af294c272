"""
Root data with a finite automorphism (Galois) action.

Roots live in X*(T) = Z^rank and coroots in X_*(T) = Z^rank; the pairing is
the standard dot product. Galois generators are matrices acting on X*(T);
on X_*(T) they act by the inverse transpose so that pairings are preserved.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import OrderBoundExceeded
from spinlift.lattice import FinAbPresentation, IntMatrix, IntVector, as_vector, dot, quotient


def unimodular_inverse(matrix: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    if not matrix.is_unimodular():
        raise ValueError(f"Matrix {matrix!r} is not unimodular")
    inverse = sympy.Matrix(matrix.to_rows()).inv()
    return IntMatrix.from_rows(
        [[int(inverse[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)],
        matrix.cols,
    )


def contragredient(matrix: IntMatrix) -> IntMatrix:
    """The inverse transpose, i.e. the action on the dual lattice."""
    return unimodular_inverse(matrix).transpose()


def reflection_matrix(root: Sequence[int], coroot: Sequence[int]) -> IntMatrix:
    """x -> x - <coroot, x> root, as a matrix on the lattice of ``root``."""
    n = len(root)
    return IntMatrix.from_rows(
        [[int(i == j) - root[i] * coroot[j] for j in range(n)] for i in range(n)], n
    )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation: ``failures`` lists every failed check."""

    valid: bool
    failures: Tuple[str, ...] = ()

    @classmethod
    def from_failures(cls, failures: Sequence[str]) -> "ValidationReport":
        return cls(valid=not failures, failures=tuple(failures))

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures)}


@dataclass(frozen=True)
class RootDatum:
    """
    A reduced root datum (X*, roots, X_*, coroots) with a base and Galois action.

    Attributes:
        rank: Rank of X*(T)
        roots: Roots in X*(T); roots[i] is paired with coroots[i]
        coroots: Coroots in X_*(T)
        simple_indices: Indices into ``roots`` of a base
        galois_gens: Lattice automorphisms of X*(T) generating the Galois image
        name: Catalog name, ignored by equality
    """

    rank: int
    roots: Tuple[IntVector, ...]
    coroots: Tuple[IntVector, ...]
    simple_indices: Tuple[int, ...]
    galois_gens: Tuple[IntMatrix, ...] = ()
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, rank: int, roots: Sequence[Sequence[int]], coroots: Sequence[Sequence[int]],
              simple_indices: Sequence[int], galois_gens: Sequence[IntMatrix] = (),
              name: str = "") -> "RootDatum":
        return cls(
            rank=rank,
            roots=tuple(as_vector(r) for r in roots),
            coroots=tuple(as_vector(c) for c in coroots),
            simple_indices=tuple(simple_indices),
            galois_gens=tuple(galois_gens),
            name=name,
        )

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_indices)

    @property
    def simple_roots(self) -> Tuple[IntVector, ...]:
        return tuple(self.roots[i] for i in self.simple_indices)

    @property
    def simple_coroots(self) -> Tuple[IntVector, ...]:
        return tuple(self.coroots[i] for i in self.simple_indices)

    @cached_property
    def root_index(self) -> Dict[IntVector, int]:
        return {root: i for i, root in enumerate(self.roots)}

    @cached_property
    def coroot_index(self) -> Dict[IntVector, int]:
        return {coroot: i for i, coroot in enumerate(self.coroots)}

    def simple_coordinates(self, vector: Sequence[int]) -> Optional[Tuple[sympy.Rational, ...]]:
        """Coordinates of a vector in the basis of simple roots, if it lies in their span."""
        if not self.simple_indices:
            return () if not any(vector) else None
        basis = sympy.Matrix([list(r) for r in self.simple_roots]).T
        try:
            solution, params = basis.gauss_jordan_solve(sympy.Matrix(list(vector)))
        except ValueError:
            return None
        if params.shape[0]:
            return None
        return tuple(solution)

    @cached_property
    def positive_indices(self) -> Tuple[int, ...]:
        """Indices of roots that are nonnegative combinations of the base."""
        positive = []
        for i, root in enumerate(self.roots):
            coords = self.simple_coordinates(root)
            if coords is not None and all(c >= 0 for c in coords):
                positive.append(i)
        return tuple(positive)

    @property
    def positive_roots(self) -> Tuple[IntVector, ...]:
        return tuple(self.roots[i] for i in self.positive_indices)

    @property
    def positive_coroots(self) -> Tuple[IntVector, ...]:
        return tuple(self.coroots[i] for i in self.positive_indices)

    def galois_on_characters(self) -> Tuple[IntMatrix, ...]:
        return self.galois_gens

    def galois_on_cocharacters(self) -> Tuple[IntMatrix, ...]:
        return tuple(contragredient(g) for g in self.galois_gens)

    def simple_reflection(self, k: int) -> IntMatrix:
        """The k-th simple reflection acting on X*(T)."""
        i = self.simple_indices[k]
        return reflection_matrix(self.roots[i], self.coroots[i])

    def describe(self) -> str:
        label = self.name or "root datum"
        return f"{label} (rank {self.rank}, {len(self.roots)} roots)"


def validate(d: RootDatum) -> ValidationReport:
    """Check every root datum axiom, collecting failures instead of raising."""
    failures: List[str] = []

    if len(d.roots) != len(d.coroots):
        failures.append(f"{len(d.roots)} roots but {len(d.coroots)} coroots")
        return ValidationReport.from_failures(failures)
    for i, (root, coroot) in enumerate(zip(d.roots, d.coroots)):
        if len(root) != d.rank or len(coroot) != d.rank:
            failures.append(f"root/coroot {i} does not have length {d.rank}")
    if failures:
        return ValidationReport.from_failures(failures)
    if len(set(d.roots)) != len(d.roots):
        failures.append("roots are not distinct")

    for i, (root, coroot) in enumerate(zip(d.roots, d.coroots)):
        pairing = dot(coroot, root)
        if pairing != 2:
            failures.append(f"pairing of root {i} with its coroot is {pairing}, expected 2")

    for i, (root, coroot) in enumerate(zip(d.roots, d.coroots)):
        j = d.root_index.get(tuple(-x for x in root))
        if j is None:
            failures.append(f"negative of root {i} is not a root")
        elif d.coroots[j] != tuple(-x for x in coroot):
            failures.append(f"coroot of -root {i} is not the negated coroot")

    if any(k < 0 or k >= len(d.roots) for k in d.simple_indices):
        failures.append("simple index out of range")
        return ValidationReport.from_failures(failures)
    if d.simple_indices:
        rank = sympy.Matrix([list(r) for r in d.simple_roots]).rank()
        if rank != len(d.simple_indices):
            failures.append("simple roots are linearly dependent")
    for i, root in enumerate(d.roots):
        coords = d.simple_coordinates(root)
        if coords is None:
            failures.append(f"root {i} is not in the span of the simple roots")
        elif not all(c.is_integer for c in coords):
            failures.append(f"root {i} is not an integral combination of simple roots")
        elif not (all(c >= 0 for c in coords) or all(c <= 0 for c in coords)):
            failures.append(f"root {i} mixes signs in simple root coordinates")

    pairs = set(zip(d.roots, d.coroots))
    for k, i in enumerate(d.simple_indices):
        alpha, alpha_check = d.roots[i], d.coroots[i]
        for root, coroot in zip(d.roots, d.coroots):
            image = tuple(x - dot(alpha_check, root) * a for x, a in zip(root, alpha))
            coimage = tuple(y - dot(coroot, alpha) * c for y, c in zip(coroot, alpha_check))
            if (image, coimage) not in pairs:
                failures.append(f"simple reflection {k} does not permute roots and coroots")
                break

    simple = set(d.simple_roots)
    for k, g in enumerate(d.galois_gens):
        if g.shape != (d.rank, d.rank) or not g.is_unimodular():
            failures.append(f"galois generator {k} is not a lattice automorphism")
            continue
        dual = contragredient(g)
        if any((g @ r, dual @ c) not in pairs for r, c in zip(d.roots, d.coroots)):
            failures.append(f"galois generator {k} does not permute roots and coroots")
        if {g @ r for r in d.simple_roots} != simple:
            failures.append(f"galois generator {k} does not preserve the base")

    if failures:
        logging.debug(f"Validation of {d.describe()} failed: {failures}")
    return ValidationReport.from_failures(failures)


def fundamental_group(d: RootDatum) -> FinAbPresentation:
    """pi_1 = X_*(T) / <coroots>; ``project`` maps cocharacters to pi_1."""
    return quotient(d.rank, IntMatrix.from_columns(d.coroots, d.rank))


def character_quotient(d: RootDatum) -> FinAbPresentation:
    """X*(T) / <roots>, the character group of the center."""
    return quotient(d.rank, IntMatrix.from_columns(d.roots, d.rank))


def dualize(d: RootDatum) -> RootDatum:
    """Swap the roles of characters and cocharacters."""
    name = d.name
    if name:
        name = name[:-1] if name.endswith("^") else name + "^"
    return RootDatum(
        rank=d.rank,
        roots=d.coroots,
        coroots=d.roots,
        simple_indices=d.simple_indices,
        galois_gens=d.galois_on_cocharacters(),
        name=name,
    )


def weyl_group(d: RootDatum, bounds: Bounds = DEFAULT_BOUNDS) -> List[IntMatrix]:
    """
    Enumerate the Weyl group acting on X*(T).

    Elements are produced breadth-first from the identity, applying simple
    reflections in base order, so the listing is deterministic.

    Raises:
        OrderBoundExceeded: if more than ``bounds.weyl_order`` elements appear
    """
    identity = IntMatrix.identity(d.rank)
    generators = [d.simple_reflection(k) for k in range(d.semisimple_rank)]
    seen = {identity.entries: identity}
    elements = [identity]
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for s in generators:
            product = s @ current
            if product.entries in seen:
                continue
            seen[product.entries] = product
            elements.append(product)
            if len(elements) > bounds.weyl_order:
                raise OrderBoundExceeded("Weyl group order", len(elements), bounds.weyl_order)
            queue.append(product)
    logging.debug(f"Weyl group of {d.describe()} has order {len(elements)}")
    return elements


def positive_coroot_sum(d: RootDatum) -> IntVector:
    """Sum of the positive coroots, the cocharacter behind the canonical involution."""
    total = [0] * d.rank
    for coroot in d.positive_coroots:
        total = [a + b for a, b in zip(total, coroot)]
    return tuple(total)
