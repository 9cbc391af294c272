"""
Pin lifts of finite orthogonal representations and their first two
Stiefel-Whitney classes.

Lifts are products of the reflection vectors, so they have positive spinor
norm but are not normalized to norm one. For lifts x_g of g the product
x_g x_h x_gh^-1 is then a nonzero scalar, and its sign is the pin cocycle.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from spinlift.clifford.algebra import CliffordElement, inverse, spinor_norm, twisted_conjugate
from spinlift.clifford.quadratic import QuadSpace, rational_matrix, reflection_decompose
from spinlift.cohomology import (
    ClassComparison,
    Cocycle2,
    FiniteGroup,
    GModule,
    GroupExtension,
    classes_equal,
    cup1,
    extension_from_cocycle,
)
from spinlift.cohomology.groups import Hom, from_elements
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import NonScalarDefect, NotAHomomorphism, NotOrthogonal


@dataclass(frozen=True, eq=False)
class OrthRep:
    """
    r: G -> O(V0) with one rational matrix per group element.

    ``from_images`` and the other constructors validate orthogonality and
    the homomorphism property.
    """

    group: FiniteGroup
    images: Tuple[sympy.ImmutableMatrix, ...]
    space: QuadSpace
    name: str = ""

    @classmethod
    def from_images(cls, group: FiniteGroup, images: Sequence, space: QuadSpace,
                    name: str = "") -> "OrthRep":
        """
        Raises:
            NotOrthogonal: if an image does not preserve the form
            NotAHomomorphism: if the images do not multiply like the group
        """
        matrices = tuple(
            m if isinstance(m, sympy.ImmutableMatrix) else rational_matrix(m) for m in images
        )
        rep = cls(group, matrices, space, name)
        rep.check()
        return rep

    @classmethod
    def from_generator_images(cls, group: FiniteGroup, generators: Sequence[int],
                              generator_images: Sequence, space: QuadSpace,
                              name: str = "") -> "OrthRep":
        """Extend images of generators along the Cayley graph, then validate."""
        given = [rational_matrix(m) for m in generator_images]
        images: List[Optional[sympy.ImmutableMatrix]] = [None] * group.order
        images[group.identity] = sympy.ImmutableMatrix(sympy.eye(space.dim))
        queue = [group.identity]
        for x in queue:
            for g, m in zip(generators, given):
                y = group.mul(x, g)
                if images[y] is None:
                    images[y] = sympy.ImmutableMatrix(images[x] * m)
                    queue.append(y)
        if any(m is None for m in images):
            raise NotAHomomorphism("Generators do not generate the group")
        return cls.from_images(group, images, space, name)

    @classmethod
    def from_generators(cls, generator_images: Sequence, space: QuadSpace, name: str = "",
                        group_name: str = "", bounds: Bounds = DEFAULT_BOUNDS) -> "OrthRep":
        """The faithful representation of the matrix group the generators span."""
        given = [rational_matrix(m) for m in generator_images]
        for m in given:
            space.check_orthogonal(m)
        identity = sympy.ImmutableMatrix(sympy.eye(space.dim))
        elements = [identity]
        seen = {identity}
        for x in elements:
            for m in given:
                y = sympy.ImmutableMatrix(x * m)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    bounds.check("matrix group order", len(elements), bounds.group_order)
        group = from_elements(elements, lambda a, b: sympy.ImmutableMatrix(a * b), group_name,
                              [str(e.tolist()) for e in elements])
        return cls.from_images(group, elements, space, name)

    def check(self) -> None:
        if len(self.images) != self.group.order:
            raise NotAHomomorphism(f"{len(self.images)} images for a group of order {self.group.order}")
        for m in self.images:
            self.space.check_orthogonal(m)
        if self.images[self.group.identity] != sympy.eye(self.space.dim):
            raise NotAHomomorphism("The identity is not sent to the identity matrix")
        for g in self.group.elements():
            for h in self.group.elements():
                if self.images[g] * self.images[h] != self.images[self.group.mul(g, h)]:
                    raise NotAHomomorphism(f"Images do not respect the product of {g} and {h}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def describe(self) -> str:
        return f"{self.name or 'representation'} of {self.group.describe()} on {self.space.describe()}"


def pin_lift(matrix: sympy.MatrixBase, space: QuadSpace,
             rng: Optional[random.Random] = None) -> CliffordElement:
    """
    The product v_1 ... v_k of a reflection decomposition of M.

    Raises:
        NotOrthogonal: if M does not preserve the form
    """
    result = CliffordElement.scalar(space)
    for v in reflection_decompose(matrix, space, rng):
        result = result * CliffordElement.vector(space, v)
    return result


def induced_matrix(lift: CliffordElement) -> sympy.ImmutableMatrix:
    """The matrix of v -> grade_involution(x) v x^-1 on V0 in the standard basis."""
    space = lift.space
    columns = []
    for i in range(space.dim):
        e = [Fraction(int(i == j)) for j in range(space.dim)]
        image = twisted_conjugate(lift, CliffordElement.vector(space, e))
        if not image.is_vector():
            raise NotOrthogonal("Twisted conjugation does not preserve the vectors")
        columns.append(space.from_frame(image.vector_part()))
    return rational_matrix([[columns[j][i] for j in range(space.dim)] for i in range(space.dim)])


def lifts(rep: OrthRep, rng: Optional[random.Random] = None) -> Tuple[CliffordElement, ...]:
    return tuple(pin_lift(m, rep.space, rng) for m in rep.images)


def direct_sum(first: OrthRep, second: OrthRep, bounds: Bounds = DEFAULT_BOUNDS) -> OrthRep:
    """Block-diagonal sum over the same group, with the orthogonal sum of the forms."""
    if first.group != second.group:
        raise ValueError("Direct sums need representations of the same group")
    gram = sympy.diag(first.space.gram, second.space.gram)
    space = QuadSpace.from_gram(gram.tolist(), bounds)
    images = [sympy.ImmutableMatrix(sympy.diag(a, b)) for a, b in zip(first.images, second.images)]
    name = f"{first.name}+{second.name}" if first.name and second.name else ""
    return OrthRep.from_images(first.group, images, space, name)


def trivial_rep(group: FiniteGroup, dim: int = 1, bounds: Bounds = DEFAULT_BOUNDS) -> OrthRep:
    images = [sympy.ImmutableMatrix(sympy.eye(dim))] * group.order
    return OrthRep.from_images(group, images, QuadSpace.standard(dim, bounds), f"trivial{dim}")


def sw1(rep: OrthRep) -> Hom:
    """g -> 1 when det r(g) = -1, else 0."""
    return tuple(int(bool(m.det() < 0)) for m in rep.images)


@dataclass(frozen=True)
class StiefelWhitney2:
    """The pin cocycle of a representation with its triviality verdict."""

    cocycle: Cocycle2
    nontrivial: bool
    witness: Optional[Tuple[Tuple[int, ...], ...]]
    norms: Tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "cocycle": [[v[0] for v in row] for row in self.cocycle.values],
            "nontrivial": self.nontrivial,
            "witness": None if self.witness is None else [x[0] for x in self.witness],
            "norms": [str(n) for n in self.norms],
        }


def pin_cocycle(rep: OrthRep, rng: Optional[random.Random] = None) -> Cocycle2:
    """
    z(g, h) = 1 when x_g x_h x_gh^-1 is a negative scalar, else 0.

    Raises:
        NonScalarDefect: if some x_g x_h x_gh^-1 is not a scalar
    """
    group = rep.group
    xs = lifts(rep, rng)
    inverses = tuple(inverse(x) for x in xs)
    module = GModule.trivial(group, [2])
    values = []
    for g in group.elements():
        row = []
        for h in group.elements():
            defect = xs[g] * xs[h] * inverses[group.mul(g, h)]
            if not defect.is_scalar() or defect.scalar_part() == 0:
                raise NonScalarDefect(f"Lift defect at ({g}, {h}) is {defect!r}")
            row.append((int(defect.scalar_part() < 0),))
        values.append(tuple(row))
    return Cocycle2.from_table(module, values)


def sw2(rep: OrthRep, rng: Optional[random.Random] = None) -> StiefelWhitney2:
    cocycle = pin_cocycle(rep, rng)
    comparison: ClassComparison = classes_equal(cocycle, Cocycle2.zero(cocycle.module))
    norms = tuple(spinor_norm(x) for x in lifts(rep))
    logging.debug(f"sw2 of {rep.describe()}: nontrivial={not comparison.equal}")
    return StiefelWhitney2(cocycle, not comparison.equal, comparison.witness, norms)


def pin_extension(rep: OrthRep, bounds: Bounds = DEFAULT_BOUNDS) -> GroupExtension:
    """The pullback of the pin double cover along r, built from the pin cocycle."""
    return extension_from_cocycle(pin_cocycle(rep), bounds)


def decomposition_independent(rep: OrthRep, rng: random.Random) -> bool:
    """The pin cocycle from randomized reflection decompositions has the same class."""
    return classes_equal(pin_cocycle(rep), pin_cocycle(rep, rng)).equal


@dataclass(frozen=True)
class WhitneyReport:
    """w2(r + s) against w2(r) + w1(r) w1(s) + w2(s), compared as classes."""

    holds: bool
    witness: Optional[Tuple[Tuple[int, ...], ...]]
    sw2_sum: bool
    sw2_first: bool
    sw2_second: bool
    cross_term: bool

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else [x[0] for x in self.witness],
            "sw2_sum": self.sw2_sum,
            "sw2_first": self.sw2_first,
            "sw2_second": self.sw2_second,
            "cross_term": self.cross_term,
        }


def whitney_check(first: OrthRep, second: OrthRep, rng: Optional[random.Random] = None,
                  bounds: Bounds = DEFAULT_BOUNDS) -> WhitneyReport:
    """
    Check the Whitney sum formula for sw2 on first + second.

    Raises:
        ValueError: if the representations are of different groups
    """
    total = pin_cocycle(direct_sum(first, second, bounds), rng)
    z_first = pin_cocycle(first, rng).with_module(total.module)
    z_second = pin_cocycle(second, rng).with_module(total.module)
    cross = cup1(total.module, sw1(first), sw1(second))
    comparison = classes_equal(total, z_first + cross + z_second)
    zero = Cocycle2.zero(total.module)
    return WhitneyReport(
        holds=comparison.equal,
        witness=comparison.witness,
        sw2_sum=not classes_equal(total, zero).equal,
        sw2_first=not classes_equal(z_first, zero).equal,
        sw2_second=not classes_equal(z_second, zero).equal,
        cross_term=not classes_equal(cross, zero).equal,
    )
