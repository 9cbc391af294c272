"""
Normalized 2-cochains, coboundaries and the second cohomology group.

Every coboundary question becomes a system of congruences over Z: the
unknowns are the coordinates f(g)_k of a normalized 1-cochain and each row
of the system is one coordinate of one value (df)(g, h), taken modulo the
corresponding invariant factor of A.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from spinlift.cohomology.groups import FiniteGroup, check_homomorphism
from spinlift.cohomology.modules import Element, GModule, ModuleMap, pullback_module
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import NotACocycle, SizeBoundExceeded
from spinlift.lattice import (
    FinAbPresentation,
    IntMatrix,
    IntVector,
    ModularEchelon,
    SubLattice,
    quotient,
    solve_congruence,
)

OneCochain = Tuple[Element, ...]


@dataclass(frozen=True)
class Cocycle2:
    """
    A normalized 2-cochain z: G x G -> A stored as a full table.

    The constructor only checks shape; ``check`` (run by ``from_table`` and
    ``from_function``) verifies normalization and the cocycle identity.
    """

    module: GModule
    values: Tuple[Tuple[Element, ...], ...]

    def __post_init__(self) -> None:
        n = self.module.group.order
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise NotACocycle(f"Cochain table must be {n} x {n}")

    @classmethod
    def from_table(cls, module: GModule, values: Sequence[Sequence[Sequence[int]]],
                   check: bool = True) -> "Cocycle2":
        table = tuple(tuple(module.reduce(v) for v in row) for row in values)
        cocycle = cls(module, table)
        if check:
            cocycle.check()
        return cocycle

    @classmethod
    def from_function(cls, module: GModule, fn: Callable[[int, int], Sequence[int]],
                      check: bool = True) -> "Cocycle2":
        group = module.group
        return cls.from_table(
            module, [[fn(g, h) for h in group.elements()] for g in group.elements()], check
        )

    @classmethod
    def zero(cls, module: GModule) -> "Cocycle2":
        n = module.group.order
        return cls(module, tuple(tuple(module.zero() for _ in range(n)) for _ in range(n)))

    @property
    def group(self) -> FiniteGroup:
        return self.module.group

    def value(self, g: int, h: int) -> Element:
        return self.values[g][h]

    def is_normalized(self) -> bool:
        e = self.group.identity
        zero = self.module.zero()
        return all(self.values[e][g] == zero and self.values[g][e] == zero
                   for g in self.group.elements())

    def defect(self, g: int, h: int, k: int) -> Element:
        """g z(h, k) - z(gh, k) + z(g, hk) - z(g, h)."""
        group, module = self.group, self.module
        total = module.act(g, self.values[h][k])
        total = module.sub(total, self.values[group.mul(g, h)][k])
        total = module.add(total, self.values[g][group.mul(h, k)])
        return module.sub(total, self.values[g][h])

    def check(self) -> None:
        if not self.is_normalized():
            raise NotACocycle("Cochain is not normalized: z(1, g) and z(g, 1) must vanish")
        zero = self.module.zero()
        elements = self.group.elements()
        for g in elements:
            for h in elements:
                for k in elements:
                    if self.defect(g, h, k) != zero:
                        raise NotACocycle(f"Cocycle identity fails at ({g}, {h}, {k})")

    def is_cocycle(self) -> bool:
        try:
            self.check()
        except NotACocycle:
            return False
        return True

    def _combine(self, other: "Cocycle2", sign: int) -> "Cocycle2":
        if not self.module.same_structure(other.module):
            raise ValueError("Cocycles take values in different modules")
        module = self.module
        return Cocycle2(module, tuple(
            tuple(module.reduce(a + sign * b for a, b in zip(x, y)) for x, y in zip(r, s))
            for r, s in zip(self.values, other.values)
        ))

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        return self._combine(other, 1)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        return self._combine(other, -1)

    def __neg__(self) -> "Cocycle2":
        return Cocycle2.zero(self.module) - self

    def with_module(self, module: GModule) -> "Cocycle2":
        """The same table viewed in a module with identical structure."""
        if not self.module.same_structure(module):
            raise ValueError("Modules differ in structure")
        return Cocycle2(module, self.values)

    def to_json(self) -> List[List[List[int]]]:
        return [[list(v) for v in row] for row in self.values]


def coboundary(module: GModule, f: Sequence[Sequence[int]]) -> Cocycle2:
    """(df)(g, h) = g f(h) - f(gh) + f(g)."""
    group = module.group
    f = tuple(module.reduce(x) for x in f)
    if f[group.identity] != module.zero():
        raise ValueError("1-cochain must vanish at the identity")
    values = []
    for g in group.elements():
        row = []
        for h in group.elements():
            value = module.act(g, f[h])
            value = module.sub(value, f[group.mul(g, h)])
            row.append(module.add(value, f[g]))
        values.append(tuple(row))
    return Cocycle2(module, tuple(values))


def _coboundary_system(module: GModule) -> Tuple[List[Dict[int, int]], List[int], Dict]:
    """
    Columns of the linear map f -> df on normalized cochains.

    Unknown (g, k) for g != 1 is f(g)_k; row (g, h, j) for g, h != 1 is
    (df)(g, h)_j with modulus d_j.
    """
    group = module.group
    r = module.rank
    others = [g for g in group.elements() if g != group.identity]
    unknown = {(g, k): i for i, (g, k) in enumerate((g, k) for g in others for k in range(r))}
    row = {(g, h, j): i for i, (g, h, j) in
           enumerate((g, h, j) for g in others for h in others for j in range(r))}
    columns: List[Dict[int, int]] = [dict() for _ in unknown]

    def bump(column: int, target: int, value: int) -> None:
        if value:
            entries = columns[column]
            entries[target] = entries.get(target, 0) + value

    for g in others:
        action = module.action[g]
        for h in others:
            gh = group.mul(g, h)
            for j in range(r):
                target = row[(g, h, j)]
                for k in range(r):
                    bump(unknown[(h, k)], target, action[j, k])
                    bump(unknown[(g, k)], target, int(j == k))
                if gh != group.identity:
                    bump(unknown[(gh, j)], target, -1)
    moduli = [module.invariant_factors[j] for (_, _, j) in row]
    return columns, moduli, {"unknown": unknown, "row": row, "others": others}


@dataclass(frozen=True)
class ClassComparison:
    """Whether two cocycles are cohomologous, with f such that z1 - z2 = df."""

    equal: bool
    witness: Optional[OneCochain] = None

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "witness": None if self.witness is None else [list(x) for x in self.witness],
        }


def classes_equal(z1: Cocycle2, z2: Cocycle2) -> ClassComparison:
    """Decide z1 ~ z2 by solving z1 - z2 = df exactly."""
    difference = z1 - z2
    module = z1.module
    group = module.group
    columns, moduli, index = _coboundary_system(module)
    target = {}
    for (g, h, j), i in index["row"].items():
        value = difference.values[g][h][j]
        if value:
            target[i] = value
    solution = solve_congruence(columns, target, moduli)
    if solution is None:
        return ClassComparison(False)
    f = [module.zero()] * group.order
    for g in index["others"]:
        f[g] = module.reduce(solution[index["unknown"][(g, k)]] for k in range(module.rank))
    witness = tuple(f)
    return ClassComparison(True, witness)


def is_coboundary(z: Cocycle2) -> bool:
    return classes_equal(z, Cocycle2.zero(z.module)).equal


@dataclass(frozen=True)
class H2Result:
    """
    H^2(G, A) as a finitely generated abelian group.

    ``representatives[i]`` is a cocycle representing the i-th generator of
    ``presentation``.
    """

    module: GModule
    presentation: FinAbPresentation
    representatives: Tuple[Cocycle2, ...]
    cocycle_lattice: SubLattice

    def order(self) -> Optional[int]:
        return self.presentation.order()

    def class_of(self, z: Cocycle2) -> IntVector:
        """Coordinates of the class of z in ``presentation``."""
        coordinates = self.cocycle_lattice.coordinates(_flatten(z))
        if coordinates is None:
            raise NotACocycle("Cochain is not a cocycle")
        return self.presentation.project(coordinates)

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.presentation.invariant_factors),
            "order": self.order(),
            "representatives": [z.to_json() for z in self.representatives],
        }


def _pairs(group: FiniteGroup) -> List[Tuple[int, int]]:
    others = [g for g in group.elements() if g != group.identity]
    return [(g, h) for g in others for h in others]


def _flatten(z: Cocycle2) -> IntVector:
    return tuple(x for g, h in _pairs(z.group) for x in z.values[g][h])


def _unflatten(module: GModule, vector: Sequence[int]) -> Cocycle2:
    group = module.group
    r = module.rank
    values = [[module.zero() for _ in group.elements()] for _ in group.elements()]
    for i, (g, h) in enumerate(_pairs(group)):
        values[g][h] = module.reduce(vector[i * r:(i + 1) * r])
    return Cocycle2(module, tuple(tuple(row) for row in values))


def h2(module: GModule, bounds: Bounds = DEFAULT_BOUNDS) -> H2Result:
    """
    Compute H^2(G, A) = Z^2 / B^2 over normalized cochains.

    Raises:
        SizeBoundExceeded: if |G| * rank(A) exceeds ``bounds.h2_size``
    """
    group = module.group
    bounds.check("|G| * rank(A)", group.order * module.rank, bounds.h2_size)
    r = module.rank
    pairs = _pairs(group)
    pair_index = {p: i for i, p in enumerate(pairs)}
    others = [g for g in group.elements() if g != group.identity]
    dim = len(pairs) * r
    factors = module.invariant_factors

    # Cocycle condition: rows (g, h, k, j) of d^2 on normalized cochains.
    def coordinate(g: int, h: int, j: int) -> Optional[int]:
        if g == group.identity or h == group.identity:
            return None
        return pair_index[(g, h)] * r + j

    columns: List[Dict[int, int]] = [dict() for _ in range(dim)]
    row_moduli = []
    for g in others:
        action = module.action[g]
        for h in others:
            gh = group.mul(g, h)
            for k in others:
                hk = group.mul(h, k)
                for j in range(r):
                    row = len(row_moduli)
                    row_moduli.append(factors[j])
                    terms = [(coordinate(h, k, t), action[j, t]) for t in range(r)]
                    terms += [(coordinate(a, b, j), sign)
                              for (a, b), sign in (((gh, k), -1), ((g, hk), 1), ((g, h), -1))]
                    for c, value in terms:
                        if c is not None and value:
                            entries = columns[c]
                            entries[row] = entries.get(row, 0) + value
    kernel = ModularEchelon.build(columns, len(row_moduli), row_moduli).kernel_vectors()
    cocycles = SubLattice.spanned_by(kernel, dim)

    relations = []
    for g in others:
        for k in range(r):
            f = [module.zero() for _ in group.elements()]
            f[g] = module.unit(k)
            relations.append(_flatten(coboundary(module, f)))
    for i in range(len(pairs)):
        for j, d in enumerate(factors):
            if d:
                vector = [0] * dim
                vector[i * r + j] = d
                relations.append(tuple(vector))
    coordinates = []
    for vector in relations:
        c = cocycles.coordinates(vector)
        if c is None:
            raise NotACocycle("Coboundary outside the cocycle lattice")
        coordinates.append(c)
    presentation = quotient(
        cocycles.rank, IntMatrix.from_columns(coordinates, cocycles.rank)
    )
    representatives = []
    for k in range(presentation.rank):
        unit = [0] * presentation.rank
        unit[k] = 1
        lifted = presentation.lift(unit)
        vector = [0] * dim
        for coefficient, basis_vector in zip(lifted, cocycles.basis):
            if coefficient:
                vector = [v + coefficient * b for v, b in zip(vector, basis_vector)]
        representatives.append(_unflatten(module, vector))
    logging.info(f"H^2 of {group.describe()} with coefficients {module.presentation.describe()}: "
                 f"{presentation.describe()}")
    return H2Result(module, presentation, tuple(representatives), cocycles)


def cup1(module: GModule, f1: Sequence[int], f2: Sequence[int]) -> Cocycle2:
    """
    (f1 u f2)(g, h) = f1(g) f2(h) for homomorphisms f1, f2: G -> Z/2.

    ``module`` must be Z/2 with trivial action.
    """
    if module.invariant_factors != (2,) or not module.is_trivial_action():
        raise ValueError("Cup products are taken in Z/2 with trivial action")
    group = module.group
    z2 = _z2()
    f1 = check_homomorphism(group, z2, [x % 2 for x in f1], "f1")
    f2 = check_homomorphism(group, z2, [x % 2 for x in f2], "f2")
    return Cocycle2(module, tuple(
        tuple((f1[g] * f2[h] % 2,) for h in group.elements()) for g in group.elements()
    ))


def _z2() -> FiniteGroup:
    return FiniteGroup(((0, 1), (1, 0)), 0, ("0", "1"), "C2")


def pushout(z: Cocycle2, alpha: ModuleMap) -> Cocycle2:
    """
    alpha_* z = alpha o z.

    Raises:
        NotEquivariant: if alpha does not commute with the G-actions
    """
    if not z.module.same_structure(alpha.source):
        raise ValueError("alpha does not start at the coefficient module of z")
    alpha.check_equivariant()
    return Cocycle2(alpha.target, tuple(tuple(alpha.apply(v) for v in row) for row in z.values))


def pullback(z: Cocycle2, gamma: Sequence[int], source: FiniteGroup) -> Cocycle2:
    """
    gamma^* z = z o (gamma x gamma), with coefficients gamma^* A.

    Raises:
        NotAHomomorphism: if gamma is not a homomorphism source -> G
    """
    module = pullback_module(z.module, source, gamma)
    return Cocycle2(module, tuple(
        tuple(z.values[gamma[g]][gamma[h]] for h in source.elements()) for g in source.elements()
    ))


ENUMERATION_LIMIT = 1 << 16


def h2_order_by_enumeration(module: GModule, limit: int = ENUMERATION_LIMIT) -> int:
    """
    |H^2(G, A)| by listing every normalized cocycle and coboundary.

    Only for tiny cases; ``h2`` is the real computation.

    Raises:
        SizeBoundExceeded: if there are more than ``limit`` normalized 2-cochains
    """
    group = module.group
    elements = module.element_list
    others = [g for g in group.elements() if g != group.identity]
    slots = [(g, h) for g in others for h in others]
    count = len(elements) ** len(slots)
    if count > limit:
        raise SizeBoundExceeded("normalized 2-cochains", count, limit)
    zero = module.zero()
    cocycles = 0
    for choice in itertools.product(elements, repeat=len(slots)):
        table = [[zero] * group.order for _ in group.elements()]
        for (g, h), value in zip(slots, choice):
            table[g][h] = value
        if Cocycle2(module, tuple(tuple(row) for row in table)).is_cocycle():
            cocycles += 1
    coboundaries = set()
    for choice in itertools.product(elements, repeat=len(others)):
        f = [zero] * group.order
        for g, value in zip(others, choice):
            f[g] = value
        coboundaries.add(coboundary(module, f).values)
    return cocycles // len(coboundaries)
