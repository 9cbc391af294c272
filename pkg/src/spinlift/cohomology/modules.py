"""
Finite abelian coefficient modules for finite groups.

A module A = Z^r / L is handled in the coordinates of its presentation: an
element is a tuple with one entry per non-unit invariant factor. Ambient
action matrices are converted once into coordinate matrices, after which the
action is integer matrix multiplication followed by reduction.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, Optional, Sequence, Tuple

from spinlift.cohomology.groups import FiniteGroup, Hom, check_homomorphism
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import InvalidAction, NotEquivariant
from spinlift.lattice import (
    FinAbPresentation,
    IntMatrix,
    IntVector,
    as_vector,
    diagonal_presentation,
)

Element = IntVector


def coordinate_matrix(presentation: FinAbPresentation, ambient: IntMatrix) -> IntMatrix:
    """The endomorphism of A induced by an ambient matrix, in presentation coordinates."""
    columns = []
    for k in range(presentation.rank):
        unit = [0] * presentation.rank
        unit[k] = 1
        columns.append(presentation.project(ambient @ presentation.lift(unit)))
    return IntMatrix.from_columns(columns, presentation.rank)


@dataclass(frozen=True)
class GModule:
    """
    A finite G-module.

    Attributes:
        group: The acting group
        presentation: A as Z^r / L
        action: Coordinate matrix of each group element, acting on A
    """

    group: FiniteGroup
    presentation: FinAbPresentation
    action: Tuple[IntMatrix, ...]

    @classmethod
    def from_ambient(cls, group: FiniteGroup, presentation: FinAbPresentation,
                     ambient_action: Sequence[IntMatrix], bounds: Bounds = DEFAULT_BOUNDS
                     ) -> "GModule":
        """
        Build from matrices acting on Z^r; they must preserve L and form an action.

        Raises:
            InvalidAction: if a matrix does not descend or the map is not an action
        """
        if len(ambient_action) != group.order:
            raise InvalidAction(f"Expected {group.order} action matrices, got {len(ambient_action)}")
        for g, matrix in enumerate(ambient_action):
            if matrix.shape != (presentation.ambient_rank, presentation.ambient_rank):
                raise InvalidAction(f"Action matrix of {g} has shape {matrix.shape}")
            for column in presentation.relation_matrix.to_columns():
                if not presentation.is_zero_ambient(matrix @ column):
                    raise InvalidAction(f"Action matrix of {g} does not preserve the relations")
        module = cls(group, presentation,
                     tuple(coordinate_matrix(presentation, m) for m in ambient_action))
        module.check(bounds)
        return module

    @classmethod
    def trivial(cls, group: FiniteGroup, moduli: Sequence[int]) -> "GModule":
        """prod Z/d with trivial action."""
        presentation = diagonal_presentation(moduli)
        identity = IntMatrix.identity(presentation.rank)
        return cls(group, presentation, (identity,) * group.order)

    @classmethod
    def from_coordinates(cls, group: FiniteGroup, moduli: Sequence[int],
                         matrices: Sequence[IntMatrix], bounds: Bounds = DEFAULT_BOUNDS
                         ) -> "GModule":
        """prod Z/d with the given coordinate matrices (one per group element)."""
        presentation = diagonal_presentation(moduli)
        if presentation.rank != len(moduli):
            raise InvalidAction("Coordinate modules need moduli different from 1")
        module = cls(group, presentation, tuple(matrices))
        module.check(bounds)
        return module

    def check(self, bounds: Bounds = DEFAULT_BOUNDS) -> None:
        """Check the coordinate matrices define an action by automorphisms."""
        order = self.order()
        if order is not None:
            bounds.check("module order", order, bounds.module_order)
        if len(self.action) != self.group.order:
            raise InvalidAction("One action matrix per group element is required")
        basis = [self.unit(k) for k in range(self.rank)]
        for g in self.group.elements():
            for k, d in enumerate(self.invariant_factors):
                if d and any(self.act(g, tuple(d * x for x in basis[k]))):
                    raise InvalidAction(f"Action of {g} is not well defined modulo {d}")
        if any(self.act(self.group.identity, e) != e for e in basis):
            raise InvalidAction("The identity does not act trivially")
        for g in self.group.elements():
            for h in self.group.elements():
                gh = self.group.mul(g, h)
                for e in basis:
                    if self.act(gh, e) != self.act(g, self.act(h, e)):
                        raise InvalidAction(f"Action is not multiplicative at ({g}, {h})")

    @property
    def rank(self) -> int:
        return self.presentation.rank

    @property
    def invariant_factors(self) -> IntVector:
        return self.presentation.invariant_factors

    def order(self) -> Optional[int]:
        return self.presentation.order()

    def is_trivial_action(self) -> bool:
        identity = IntMatrix.identity(self.rank)
        return all(self.reduce_matrix(m) == self.reduce_matrix(identity) for m in self.action)

    def reduce_matrix(self, matrix: IntMatrix) -> Tuple[IntVector, ...]:
        return tuple(self.reduce(c) for c in matrix.to_columns())

    def unit(self, k: int) -> Element:
        return tuple(int(i == k) for i in range(self.rank))

    def zero(self) -> Element:
        return (0,) * self.rank

    def reduce(self, a: Sequence[int]) -> Element:
        return self.presentation.reduce(a)

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.presentation.add(a, b)

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.reduce(x - y for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> Element:
        return self.presentation.neg(a)

    def act(self, g: int, a: Sequence[int]) -> Element:
        return self.reduce(self.action[g] @ as_vector(a))

    def elements(self) -> Iterator[Element]:
        return self.presentation.elements()

    @cached_property
    def element_index(self) -> Dict[Element, int]:
        return {a: i for i, a in enumerate(self.elements())}

    @cached_property
    def element_list(self) -> Tuple[Element, ...]:
        return tuple(self.elements())

    def same_structure(self, other: "GModule") -> bool:
        """Same group, same coefficients and the same action on A."""
        return (
            self.group == other.group
            and self.invariant_factors == other.invariant_factors
            and all(self.reduce_matrix(a) == other.reduce_matrix(b)
                    for a, b in zip(self.action, other.action))
        )

    def describe(self) -> str:
        kind = "trivial" if self.is_trivial_action() else "nontrivial"
        return f"{self.presentation.describe()} with {kind} action of {self.group.describe()}"


def pullback_module(module: GModule, source: FiniteGroup, gamma: Sequence[int]) -> GModule:
    """gamma^* A: the source group acts through gamma."""
    gamma = check_homomorphism(source, module.group, gamma, "gamma")
    return GModule(source, module.presentation, tuple(module.action[gamma[g]] for g in source.elements()))


@dataclass(frozen=True)
class ModuleMap:
    """A homomorphism A -> A' given by a coordinate matrix."""

    source: GModule
    target: GModule
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ValueError(
                f"Module map matrix has shape {self.matrix.shape}, "
                f"expected {(self.target.rank, self.source.rank)}"
            )
        for k, d in enumerate(self.source.invariant_factors):
            if d and any(self.target.reduce(d * x for x in self.matrix.column(k))):
                raise ValueError(f"Module map is not well defined on the factor Z/{d}")

    @classmethod
    def identity(cls, module: GModule) -> "ModuleMap":
        return cls(module, module, IntMatrix.identity(module.rank))

    @classmethod
    def zero(cls, source: GModule, target: GModule) -> "ModuleMap":
        return cls(source, target, IntMatrix.zeros(target.rank, source.rank))

    def apply(self, a: Sequence[int]) -> Element:
        return self.target.reduce(self.matrix @ as_vector(a))

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self after inner."""
        return ModuleMap(inner.source, self.target, self.matrix @ inner.matrix)

    def retarget(self, target: GModule) -> "ModuleMap":
        return ModuleMap(self.source, target, self.matrix)

    def check_equivariant(self, gamma: Optional[Hom] = None) -> None:
        """
        alpha(g a) == gamma(g) alpha(a) for all g and a basis of A.

        Without ``gamma`` both modules must be over the same group.

        Raises:
            NotEquivariant: naming the first failing group element
        """
        if gamma is None:
            if self.source.group != self.target.group:
                raise NotEquivariant("Module map between modules over different groups")
            gamma = tuple(self.source.group.elements())
        for g in self.source.group.elements():
            for k in range(self.source.rank):
                e = self.source.unit(k)
                if self.apply(self.source.act(g, e)) != self.target.act(gamma[g], self.apply(e)):
                    raise NotEquivariant(f"Module map does not commute with the action of {g}")

    def is_equivariant(self, gamma: Optional[Hom] = None) -> bool:
        try:
            self.check_equivariant(gamma)
        except NotEquivariant:
            return False
        return True

