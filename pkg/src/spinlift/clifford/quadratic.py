"""
Rational positive-definite quadratic spaces and reflection decompositions.

Vectors are tuples of Fractions in the standard basis of Q^n; the form is
B(u, v) = u^T G v with G the Gram matrix, and Q(v) = B(v, v).
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import List, Optional, Sequence, Tuple

import sympy

from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import NotOrthogonal, NotPositiveDefinite

RationalVector = Tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions, strings like '1/2' and sympy Rationals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Basic):
        rational = sympy.Rational(value)
        return Fraction(int(rational.p), int(rational.q))
    return Fraction(value)


def rational_matrix(rows: Sequence[Sequence]) -> sympy.ImmutableMatrix:
    return sympy.ImmutableMatrix([[sympy.Rational(str(to_fraction(x))) for x in row] for row in rows])


def matrix_fractions(matrix: sympy.MatrixBase) -> List[List[Fraction]]:
    return [[to_fraction(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


@dataclass(frozen=True, eq=False)
class QuadSpace:
    """
    Q^n with a positive-definite rational Gram matrix.

    The orthogonal frame f_1..f_n is obtained by Gram-Schmidt from the
    standard basis, so f_i - e_i lies in the span of e_1..e_{i-1}.
    """

    gram: sympy.ImmutableMatrix

    @classmethod
    def from_gram(cls, rows: Sequence[Sequence], bounds: Bounds = DEFAULT_BOUNDS) -> "QuadSpace":
        """
        Raises:
            NotPositiveDefinite: if the matrix is not square, symmetric and positive definite
            SizeBoundExceeded: if the dimension exceeds ``bounds.clifford_dim``
        """
        gram = rational_matrix(rows)
        if gram.rows != gram.cols:
            raise NotPositiveDefinite(f"Gram matrix has shape {gram.shape}")
        bounds.check("quadratic space dimension", gram.rows, bounds.clifford_dim)
        if gram != gram.T:
            raise NotPositiveDefinite("Gram matrix is not symmetric")
        for k in range(1, gram.rows + 1):
            if gram[:k, :k].det() <= 0:
                raise NotPositiveDefinite(f"Leading principal minor of size {k} is not positive")
        return cls(gram)

    @classmethod
    def standard(cls, n: int, bounds: Bounds = DEFAULT_BOUNDS) -> "QuadSpace":
        return cls.from_gram(sympy.eye(n).tolist(), bounds)

    @property
    def dim(self) -> int:
        return self.gram.rows

    @cached_property
    def _gram_fractions(self) -> List[List[Fraction]]:
        return matrix_fractions(self.gram)

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        g = self._gram_fractions
        return sum((to_fraction(u[i]) * g[i][j] * to_fraction(v[j])
                    for i in range(self.dim) for j in range(self.dim) if u[i] and v[j]),
                   Fraction(0))

    def quadratic(self, v: Sequence) -> Fraction:
        return self.bilinear(v, v)

    @cached_property
    def frame(self) -> Tuple[RationalVector, ...]:
        vectors: List[RationalVector] = []
        for i in range(self.dim):
            v = [Fraction(int(i == j)) for j in range(self.dim)]
            for f in vectors:
                c = self.bilinear(v, f) / self.quadratic(f)
                v = [a - c * b for a, b in zip(v, f)]
            vectors.append(tuple(v))
        logging.debug(f"Orthogonal frame of a {self.dim}-dimensional quadratic space: {vectors}")
        return tuple(vectors)

    @cached_property
    def frame_squares(self) -> Tuple[Fraction, ...]:
        """Q(f_i) for the orthogonal frame."""
        return tuple(self.quadratic(f) for f in self.frame)

    def frame_coordinates(self, v: Sequence) -> RationalVector:
        """c with v = sum c_i f_i."""
        return tuple(self.bilinear(v, f) / q for f, q in zip(self.frame, self.frame_squares))

    def from_frame(self, c: Sequence[Fraction]) -> RationalVector:
        result = [Fraction(0)] * self.dim
        for coefficient, f in zip(c, self.frame):
            if coefficient:
                result = [r + coefficient * x for r, x in zip(result, f)]
        return tuple(result)

    def is_orthogonal(self, matrix: sympy.MatrixBase) -> bool:
        return matrix.shape == self.gram.shape and matrix.T * self.gram * matrix == self.gram

    def check_orthogonal(self, matrix: sympy.MatrixBase) -> None:
        """
        Raises:
            NotOrthogonal: unless M^T G M = G
        """
        if not self.is_orthogonal(matrix):
            raise NotOrthogonal(f"Matrix {matrix.tolist()} does not preserve the form")

    def same_space(self, other: "QuadSpace") -> bool:
        return self is other or self.gram == other.gram

    def describe(self) -> str:
        return f"Q^{self.dim} with Gram matrix {self.gram.tolist()}"


def reflection_matrix(u: Sequence, space: QuadSpace) -> sympy.ImmutableMatrix:
    """r_u(x) = x - 2 B(x, u) / Q(u) u."""
    column = sympy.Matrix([sympy.Rational(str(to_fraction(x))) for x in u])
    q = column.T * space.gram * column
    return sympy.ImmutableMatrix(sympy.eye(space.dim) - 2 * column * column.T * space.gram / q[0, 0])


def compose_reflections(vectors: Sequence[Sequence], space: QuadSpace) -> sympy.ImmutableMatrix:
    """r_{v_1} ... r_{v_k}; the identity for an empty list."""
    return reduce(lambda m, v: sympy.ImmutableMatrix(m * reflection_matrix(v, space)),
                  vectors, sympy.ImmutableMatrix(sympy.eye(space.dim)))


def primitive_vector(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """The primitive integer multiple of v whose first nonzero entry is positive."""
    denominator = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    integers = [int(x * denominator) for x in v]
    content = reduce(gcd, integers, 0) or 1
    integers = [x // content for x in integers]
    for x in integers:
        if x:
            if x < 0:
                integers = [-y for y in integers]
            break
    return tuple(integers)


def reflection_decompose(matrix: sympy.MatrixBase, space: QuadSpace,
                         rng: Optional[random.Random] = None) -> List[Tuple[int, ...]]:
    """
    Write M = r_{v_1} ... r_{v_k} with k <= dim.

    The deterministic pivot is the first basis vector M moves. With ``rng``
    the pivots are visited in random order and each vector is rescaled by a
    random nonzero integer, which changes the vectors but not the reflections.

    Raises:
        NotOrthogonal: if M does not preserve the form
    """
    matrix = sympy.ImmutableMatrix(matrix)
    space.check_orthogonal(matrix)
    order = list(range(space.dim))
    if rng is not None:
        rng.shuffle(order)
    current = matrix
    vectors: List[Tuple[int, ...]] = []
    for i in order:
        column = [to_fraction(x) for x in current[:, i]]
        moved = [c - int(i == j) for j, c in enumerate(column)]
        if not any(moved):
            continue
        u = primitive_vector(moved)
        if rng is not None:
            scale = rng.choice((-3, -2, -1, 1, 2, 3))
            u = tuple(scale * x for x in u)
        vectors.append(u)
        current = sympy.ImmutableMatrix(reflection_matrix(u, space) * current)
    if compose_reflections(vectors, space) != matrix:
        raise RuntimeError("Reflection decomposition does not recompose to the input")
    return vectors
