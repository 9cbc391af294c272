"""
Unit tests for exact integer lattice arithmetic.
"""

import random

import pytest

from spinlift.lattice import (
    IntMatrix,
    SubLattice,
    diagonal_presentation,
    integer_kernel,
    quotient,
    smith_decomposition,
    smith_normal_form,
    solve_mod,
    xgcd,
)


@pytest.fixture
def rng():
    """Seeded generator for random matrices."""
    return random.Random(20240611)


def random_matrix(rng, rows, cols, spread=6):
    return IntMatrix.from_rows(
        [[rng.randint(-spread, spread) for _ in range(cols)] for _ in range(rows)], cols
    )


class TestIntMatrix:
    """Test cases for IntMatrix construction and arithmetic."""

    def test_rows_and_columns_agree(self):
        """Test that row and column constructors describe the same matrix."""
        by_rows = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        by_columns = IntMatrix.from_columns([[1, 4], [2, 5], [3, 6]])
        assert by_rows == by_columns
        assert by_rows.shape == (2, 3)
        assert by_rows.column(1) == (2, 5)

    def test_ragged_rows_rejected(self):
        """Test that rows of different lengths are rejected."""
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_product_and_determinant(self):
        """Test matrix products and exact determinants."""
        a = IntMatrix.from_rows([[2, 1], [1, 1]])
        b = IntMatrix.from_rows([[1, -1], [-1, 2]])
        assert a @ b == IntMatrix.identity(2)
        assert a.determinant() == 1
        assert a.is_unimodular()
        assert IntMatrix.from_rows([[2, 0], [0, 3]]).determinant() == 6

    def test_matrix_vector_product(self):
        """Test applying a matrix to a vector."""
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert a @ (1, -1) == (-1, -1)


class TestSmithNormalForm:
    """Test cases for the Smith normal form."""

    def test_small_example(self):
        """Test a hand-checked diagonal."""
        _, d, _ = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
        assert d.diagonal_entries() == (2, 4)

    def test_zero_matrix(self):
        """Test that the zero matrix is its own normal form."""
        _, d, _ = smith_normal_form(IntMatrix.zeros(2, 3))
        assert d == IntMatrix.zeros(2, 3)

    def test_transforms_are_unimodular(self, rng):
        """Test U M V = D with unimodular U, V on random matrices."""
        for _ in range(40):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            m = random_matrix(rng, rows, cols)
            decomposition = smith_decomposition(m)
            assert decomposition.u @ m @ decomposition.v == decomposition.d
            assert decomposition.u.is_unimodular()
            assert decomposition.v.is_unimodular()
            assert decomposition.u @ decomposition.u_inverse == IntMatrix.identity(rows)

    def test_diagonal_divisibility(self, rng):
        """Test d_i | d_{i+1}, non-negativity and zeros last."""
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            _, d, _ = smith_normal_form(m)
            assert d.is_diagonal()
            diagonal = d.diagonal_entries()
            assert all(x >= 0 for x in diagonal)
            nonzero = [x for x in diagonal if x]
            assert list(diagonal[:len(nonzero)]) == nonzero
            for a, b in zip(nonzero, nonzero[1:]):
                assert b % a == 0

    def test_reproducible(self, rng):
        """Test that repeated runs give identical transforms."""
        m = random_matrix(rng, 3, 3)
        assert smith_decomposition(m) == smith_decomposition(m)


class TestQuotient:
    """Test cases for finitely generated abelian group presentations."""

    def test_finite_quotient(self):
        """Test Z^2 modulo the columns (2, 0) and (0, 3)."""
        group = quotient(2, IntMatrix.from_columns([[2, 0], [0, 3]]))
        assert group.invariant_factors == (6,)
        assert group.order() == 6
        assert group.describe() == "Z/6"

    def test_free_part(self):
        """Test that missing relations leave free factors."""
        group = quotient(2, IntMatrix.from_columns([[2, 0]]))
        assert group.free_rank == 1
        assert group.torsion == (2,)
        assert group.order() is None
        assert not group.is_finite()

    def test_no_relations(self):
        """Test that a generator matrix with no columns presents a free group."""
        group = quotient(3, IntMatrix.from_columns([], 3))
        assert group.invariant_factors == (0, 0, 0)

    def test_project_kills_relations(self):
        """Test that relation columns project to zero."""
        relations = IntMatrix.from_columns([[2, 2], [0, 4]])
        group = quotient(2, relations)
        for column in relations.to_columns():
            assert group.is_zero_ambient(column)

    def test_lift_then_project(self):
        """Test that project inverts lift on every element."""
        group = quotient(2, IntMatrix.from_columns([[2, 2], [0, 4]]))
        for element in group.elements():
            assert group.project(group.lift(element)) == element

    def test_mismatched_rows_rejected(self):
        """Test that generators of the wrong height are rejected."""
        with pytest.raises(ValueError):
            quotient(3, IntMatrix.from_columns([[1, 0]]))

    def test_diagonal_presentation_keeps_order(self):
        """Test that moduli are kept in the given order, units dropped."""
        group = diagonal_presentation([4, 1, 2])
        assert group.invariant_factors == (4, 2)
        assert group.add((3, 1), (2, 1)) == (1, 0)
        assert len(list(group.elements())) == 8


class TestSolving:
    """Test cases for congruence solving and kernels."""

    def test_xgcd(self):
        """Test the Bezout identity."""
        for a, b in [(12, 18), (-7, 5), (0, 9), (4, 0)]:
            g, s, t = xgcd(a, b)
            assert g >= 0
            assert s * a + t * b == g
            assert a % g == 0 if g else a == 0

    def test_solve_mod_diagonal_lattice(self):
        """Test 2x = 1 mod 5."""
        x = solve_mod(IntMatrix.from_rows([[2]]), [1], IntMatrix.from_rows([[5]]))
        assert x is not None
        assert (2 * x[0] - 1) % 5 == 0

    def test_solve_mod_unsolvable(self):
        """Test 2x = 1 mod 4 has no solution."""
        assert solve_mod(IntMatrix.from_rows([[2]]), [1], IntMatrix.from_rows([[4]])) is None

    def test_solve_mod_general_lattice(self, rng):
        """Test solutions modulo a non-diagonal lattice."""
        lattice = IntMatrix.from_columns([[2, 2], [0, 4]])
        group = quotient(2, lattice)
        for _ in range(20):
            a = random_matrix(rng, 2, 2, spread=3)
            x0 = (rng.randint(-3, 3), rng.randint(-3, 3))
            b = a @ x0
            x = solve_mod(a, b, lattice)
            assert x is not None
            residual = tuple(p - q for p, q in zip(a @ x, b))
            assert group.is_zero_ambient(residual)

    def test_integer_kernel(self):
        """Test kernel generators of x + y + z = 0."""
        matrix = IntMatrix.from_rows([[1, 1, 1]])
        kernel = integer_kernel(matrix)
        assert len([v for v in kernel if any(v)]) >= 2
        for v in kernel:
            assert sum(v) == 0

    def test_kernel_modulo(self):
        """Test kernel of 2x = 0 mod 4 contains 2."""
        kernel = integer_kernel(IntMatrix.from_rows([[2]]), [4])
        assert all((2 * v[0]) % 4 == 0 for v in kernel)
        assert any(v[0] % 4 == 2 for v in kernel)


class TestSubLattice:
    """Test cases for sublattice membership."""

    def test_membership(self):
        """Test the even lattice 2Z + 2Z contains (2, 4) and not (1, 0)."""
        lattice = SubLattice.spanned_by([[2, 0], [0, 2]], 2)
        assert lattice.rank == 2
        assert (2, 4) in lattice
        assert (1, 0) not in lattice

    def test_coordinates_reconstruct(self):
        """Test that coordinates recombine to the vector."""
        lattice = SubLattice.spanned_by([[1, 1], [1, -1]], 2)
        vector = (4, 2)
        coords = lattice.coordinates(vector)
        assert coords is not None
        rebuilt = tuple(
            sum(c * b[i] for c, b in zip(coords, lattice.basis)) for i in range(2)
        )
        assert rebuilt == vector

    def test_empty_lattice(self):
        """Test the zero lattice contains only zero."""
        lattice = SubLattice.spanned_by([], 2)
        assert (0, 0) in lattice
        assert (1, 0) not in lattice
