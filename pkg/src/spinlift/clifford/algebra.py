"""
The Clifford algebra Cl(V0) of a rational quadratic space.

Elements are stored on the blade basis of the orthogonal frame: a blade is a
bitmask S of frame indices and stands for f_{s_1} ... f_{s_k} with
s_1 < ... < s_k. The product of two blades is

    f_S f_T = (-1)^{#{(i, j) : i in S, j in T, i > j}} * prod_{i in S & T} Q(f_i) * f_{S ^ T}.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from spinlift.clifford.quadratic import QuadSpace, RationalVector, to_fraction
from spinlift.errors import NotScalarNorm, SpaceMismatch


def blade_grade(blade: int) -> int:
    return bin(blade).count("1")


def blade_indices(blade: int) -> Tuple[int, ...]:
    return tuple(i for i in range(blade.bit_length()) if blade >> i & 1)


def blade_product(space: QuadSpace, left: int, right: int) -> Tuple[Fraction, int]:
    """Coefficient and blade of f_left * f_right."""
    swaps = 0
    for j in blade_indices(right):
        swaps += blade_grade(left >> (j + 1))
    coefficient = Fraction(-1 if swaps % 2 else 1)
    for i in blade_indices(left & right):
        coefficient *= space.frame_squares[i]
    return coefficient, left ^ right


@dataclass(frozen=True, eq=False)
class CliffordElement:
    """A finite rational combination of frame blades."""

    space: QuadSpace
    coeffs: Mapping[int, Fraction]

    @classmethod
    def from_terms(cls, space: QuadSpace, terms: Iterable[Tuple[int, Fraction]]) -> "CliffordElement":
        merged: Dict[int, Fraction] = {}
        for blade, value in terms:
            merged[blade] = merged.get(blade, Fraction(0)) + to_fraction(value)
        return cls(space, {b: c for b, c in sorted(merged.items()) if c})

    @classmethod
    def scalar(cls, space: QuadSpace, value=1) -> "CliffordElement":
        return cls.from_terms(space, [(0, to_fraction(value))])

    @classmethod
    def zero(cls, space: QuadSpace) -> "CliffordElement":
        return cls(space, {})

    @classmethod
    def blade(cls, space: QuadSpace, indices: Sequence[int]) -> "CliffordElement":
        """f_{i_1} ... f_{i_k} in the given order (repetitions allowed)."""
        result = cls.scalar(space)
        for i in indices:
            result = result * cls.from_terms(space, [(1 << i, Fraction(1))])
        return result

    @classmethod
    def vector(cls, space: QuadSpace, v: Sequence) -> "CliffordElement":
        """Embed a vector of Q^n given in the standard basis."""
        c = space.frame_coordinates(v)
        return cls.from_terms(space, [(1 << i, x) for i, x in enumerate(c)])

    def _check_space(self, other: "CliffordElement") -> None:
        if not self.space.same_space(other.space):
            raise SpaceMismatch("Clifford elements live over different quadratic spaces")

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._check_space(other)
        return CliffordElement.from_terms(self.space, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __neg__(self) -> "CliffordElement":
        return self.scale(-1)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def scale(self, value) -> "CliffordElement":
        value = to_fraction(value)
        return CliffordElement.from_terms(self.space, [(b, c * value) for b, c in self.coeffs.items()])

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        self._check_space(other)
        terms = []
        for left, a in self.coeffs.items():
            for right, b in other.coeffs.items():
                sign, blade = blade_product(self.space, left, right)
                terms.append((blade, sign * a * b))
        return CliffordElement.from_terms(self.space, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.space.same_space(other.space) and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def grade_involution(self) -> "CliffordElement":
        """Negate the odd part."""
        return CliffordElement.from_terms(
            self.space, [(b, -c if blade_grade(b) % 2 else c) for b, c in self.coeffs.items()]
        )

    def reverse(self) -> "CliffordElement":
        """The main anti-involution: reverse the order of every product of vectors."""
        return CliffordElement.from_terms(
            self.space,
            [(b, -c if blade_grade(b) * (blade_grade(b) - 1) // 2 % 2 else c)
             for b, c in self.coeffs.items()],
        )

    def is_scalar(self) -> bool:
        return set(self.coeffs) <= {0}

    def scalar_part(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))

    def parity(self) -> int:
        grades = {blade_grade(b) % 2 for b in self.coeffs}
        if len(grades) != 1:
            raise ValueError("Element has no single parity")
        return grades.pop()

    def vector_part(self) -> RationalVector:
        """Frame coordinates of the grade-one part."""
        return tuple(self.coeffs.get(1 << i, Fraction(0)) for i in range(self.space.dim))

    def is_vector(self) -> bool:
        return all(blade_grade(b) == 1 for b in self.coeffs)

    def to_json(self) -> Dict[str, str]:
        return {",".join(str(i + 1) for i in blade_indices(b)) or "1": str(c)
                for b, c in self.coeffs.items()}

    def __repr__(self) -> str:
        terms = []
        for b, c in self.coeffs.items():
            name = "".join(f"f{i + 1}" for i in blade_indices(b)) or "1"
            terms.append(f"{c}*{name}")
        return " + ".join(terms) or "0"


def clifford_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    return x * y


def main_antiinvolution(x: CliffordElement) -> CliffordElement:
    return x.reverse()


def spinor_norm(x: CliffordElement) -> Fraction:
    """
    x * reverse(x), which must be a scalar.

    Raises:
        NotScalarNorm: if the product has a non-scalar part
    """
    product = x * x.reverse()
    if not product.is_scalar():
        raise NotScalarNorm(f"x * reverse(x) = {product!r} is not a scalar")
    return product.scalar_part()


def inverse(x: CliffordElement) -> CliffordElement:
    """reverse(x) / N(x) for elements with nonzero scalar norm."""
    norm = spinor_norm(x)
    if norm == 0:
        raise NotScalarNorm("Element has zero norm and is not invertible")
    return x.reverse().scale(1 / norm)


def twisted_conjugate(x: CliffordElement, v: CliffordElement) -> CliffordElement:
    """grade_involution(x) v x^-1; for a product of k vectors this is (-1)^k x v x^-1."""
    return x.grade_involution() * v * inverse(x)
