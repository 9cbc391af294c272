"""
Group extensions 1 -> A -> E -> G -> 1 and their dictionary with cocycles.

An extension carries its kernel as a coordinate module: ``inject`` maps each
element of A (a coordinate tuple) to an element of E. The G-action on A is
always the conjugation action s(g) i(a) s(g)^-1, which does not depend on the
section s.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from spinlift.cohomology.cocycles import Cocycle2, pullback, pushout
from spinlift.cohomology.groups import (
    FiniteGroup,
    Hom,
    check_homomorphism,
    extend_homomorphism,
    from_elements,
)
from spinlift.cohomology.modules import Element, GModule, ModuleMap
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import InvalidGroup, NotASection
from spinlift.lattice import IntMatrix

Section = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GroupExtension:
    """
    An extension of ``module.group`` by ``module``.

    Attributes:
        total: The group E
        module: A as a G-module (conjugation action)
        inject: A -> E, keyed by coordinate tuples
        project: E -> G as a tuple of images
    """

    total: FiniteGroup
    module: GModule
    inject: Dict[Element, int]
    project: Hom

    @property
    def quotient(self) -> FiniteGroup:
        return self.module.group

    @classmethod
    def build(cls, total: FiniteGroup, quotient: FiniteGroup, moduli: Sequence[int],
              basis_images: Sequence[int], project: Sequence[int],
              bounds: Bounds = DEFAULT_BOUNDS) -> "GroupExtension":
        """
        Assemble an extension from the kernel's generators.

        A = prod Z/moduli[k] is sent into E by the k-th unit going to
        ``basis_images[k]``; the action on A is read off by conjugation.

        Raises:
            InvalidGroup: if the data is not an exact sequence with abelian kernel
            NotAHomomorphism: if ``project`` is not a homomorphism
        """
        project = check_homomorphism(total, quotient, project, "projection")
        if set(project) != set(quotient.elements()):
            raise InvalidGroup("Projection is not surjective")
        moduli = tuple(int(d) for d in moduli)
        if len(moduli) != len(basis_images) or any(d < 2 for d in moduli):
            raise InvalidGroup("Kernel generators need one modulus >= 2 each")
        for x, y in itertools.combinations(basis_images, 2):
            if total.mul(x, y) != total.mul(y, x):
                raise InvalidGroup("Kernel generators do not commute")
        for x, d in zip(basis_images, moduli):
            if total.power(x, d) != total.identity:
                raise InvalidGroup(f"Kernel generator {x} does not have order dividing {d}")
        trivial = GModule.trivial(quotient, moduli)
        inject = {}
        for a in trivial.elements():
            image = total.product(total.power(x, k) for x, k in zip(basis_images, a))
            inject[a] = image
        kernel = {e for e in total.elements() if project[e] == quotient.identity}
        if len(set(inject.values())) != len(inject) or set(inject.values()) != kernel:
            raise InvalidGroup("Kernel generators do not give an injection onto the kernel")
        coordinates = {e: a for a, e in inject.items()}
        section = _canonical_section(total, quotient, project)
        matrices = []
        for g in quotient.elements():
            columns = [coordinates[total.conjugate(section[g], x)] for x in basis_images]
            matrices.append(IntMatrix.from_columns(columns, len(moduli)))
        module = GModule.from_coordinates(quotient, moduli, matrices, bounds)
        return cls(total, module, inject, project)

    @property
    def coordinates(self) -> Dict[int, Element]:
        """i^-1 on the image of A."""
        return {e: a for a, e in self.inject.items()}

    def section(self) -> Section:
        return _canonical_section(self.total, self.quotient, self.project)

    def fibers(self) -> List[List[int]]:
        result: List[List[int]] = [[] for _ in self.quotient.elements()]
        for e in self.total.elements():
            result[self.project[e]].append(e)
        return result

    def describe(self) -> str:
        return (f"extension of {self.quotient.describe()} by "
                f"{self.module.presentation.describe()} with total group of order {self.total.order}")


def _canonical_section(total: FiniteGroup, quotient: FiniteGroup, project: Sequence[int]) -> Section:
    # Smallest element of each fiber, and the identity over the identity.
    section: List[Optional[int]] = [None] * quotient.order
    for e in total.elements():
        if section[project[e]] is None:
            section[project[e]] = e
    section[quotient.identity] = total.identity
    return tuple(section)


def canonical_section(ext: GroupExtension) -> Section:
    return ext.section()


def check_section(ext: GroupExtension, section: Sequence[int]) -> Section:
    """
    Raises:
        NotASection: if project o section is not the identity or section(1) != 1
    """
    section = tuple(int(x) for x in section)
    if len(section) != ext.quotient.order:
        raise NotASection(f"Section has {len(section)} values for {ext.quotient.order} elements")
    for g, e in enumerate(section):
        if not 0 <= e < ext.total.order or ext.project[e] != g:
            raise NotASection(f"Section value over {g} does not project to {g}")
    if section[ext.quotient.identity] != ext.total.identity:
        raise NotASection("Section must send the identity to the identity")
    return section


def cocycle_from_extension(ext: GroupExtension, section: Optional[Sequence[int]] = None) -> Cocycle2:
    """
    z_s(g, h) = i^-1(s(g) s(h) s(gh)^-1).

    Raises:
        NotASection: if ``section`` is not a normalized set-theoretic section
    """
    section = ext.section() if section is None else check_section(ext, section)
    total, group = ext.total, ext.quotient
    coordinates = ext.coordinates
    values = []
    for g in group.elements():
        row = []
        for h in group.elements():
            e = total.mul(total.mul(section[g], section[h]), total.inv(section[group.mul(g, h)]))
            row.append(coordinates[e])
        values.append(tuple(row))
    return Cocycle2(ext.module, tuple(values))


def extension_from_cocycle(z: Cocycle2, bounds: Bounds = DEFAULT_BOUNDS) -> GroupExtension:
    """
    A x_z G: pairs (a, g) with (a, g)(a', g') = (a + g a' + z(g, g'), g g').

    The pair (a, g) has index idx(a) * |G| + g, so the section g -> (0, g) is
    the identity on indices and is the canonical section.

    Raises:
        NotACocycle: if z fails normalization or the cocycle identity
        SizeBoundExceeded: if |A| * |G| exceeds ``bounds.extension_order``
    """
    z.check()
    module = z.module
    group = module.group
    elements = module.element_list
    n = group.order
    bounds.check("|A| * |G|", len(elements) * n, bounds.extension_order)
    index = module.element_index
    table = []
    for x in range(len(elements) * n):
        a, g = elements[x // n], x % n
        row = []
        for y in range(len(elements) * n):
            b, h = elements[y // n], y % n
            product = module.add(module.add(a, module.act(g, b)), z.values[g][h])
            row.append(index[product] * n + group.mul(g, h))
        table.append(tuple(row))
    labels = tuple(f"({list(elements[x // n])},{group.label(x % n)})" for x in range(len(elements) * n))
    total = FiniteGroup(tuple(table), index[module.zero()] * n + group.identity, labels)
    inject = {a: index[a] * n + group.identity for a in elements}
    project = tuple(x % n for x in range(len(elements) * n))
    logging.debug(f"Built extension of order {total.order} from a cocycle")
    return GroupExtension(total, module, inject, project)


def find_equivalence(first: GroupExtension, second: GroupExtension) -> Optional[Hom]:
    """
    An isomorphism E1 -> E2 that is the identity on A and on G, or None.

    The images of i(A)'s generators are forced; each generator of G is lifted
    and its image ranges over the fiber of E2 above it.
    """
    if first.quotient != second.quotient or not first.module.same_structure(second.module):
        return None
    module = first.module
    section = first.section()
    fixed = [first.inject[module.unit(k)] for k in range(module.rank)]
    fixed_images = [second.inject[module.unit(k)] for k in range(module.rank)]
    lifts = [section[g] for g in first.quotient.generators]
    fibers = second.fibers()
    choices = [fibers[g] for g in first.quotient.generators]
    for images in itertools.product(*choices):
        mapping = extend_homomorphism(first.total, second.total, fixed + lifts,
                                      fixed_images + list(images))
        if mapping is None or len(set(mapping)) != second.total.order:
            continue
        if all(second.project[mapping[e]] == first.project[e] for e in first.total.elements()):
            return mapping
    return None


def are_equivalent(first: GroupExtension, second: GroupExtension) -> bool:
    return find_equivalence(first, second) is not None


def find_splitting(ext: GroupExtension) -> Optional[Hom]:
    """A homomorphic section G -> E, i.e. a complement to A, or None."""
    group = ext.quotient
    generators = group.generators
    fibers = ext.fibers()
    for images in itertools.product(*(fibers[g] for g in generators)):
        mapping = extend_homomorphism(group, ext.total, generators, images)
        if mapping is not None:
            return mapping
    return None


def pushout_extension(ext: GroupExtension, alpha: ModuleMap,
                      bounds: Bounds = DEFAULT_BOUNDS) -> Tuple[GroupExtension, Hom]:
    """
    alpha_* E together with the morphism E -> alpha_* E over G.

    e = i(a) s(p(e)) is sent to (alpha(a), p(e)).

    Raises:
        NotEquivariant: if alpha does not commute with the G-actions
    """
    section = ext.section()
    pushed = extension_from_cocycle(pushout(cocycle_from_extension(ext, section), alpha), bounds)
    total, n = ext.total, ext.quotient.order
    coordinates = ext.coordinates
    index = pushed.module.element_index
    morphism = []
    for e in total.elements():
        g = ext.project[e]
        a = coordinates[total.mul(e, total.inv(section[g]))]
        morphism.append(index[alpha.apply(a)] * n + g)
    return pushed, tuple(morphism)


def pullback_extension(ext: GroupExtension, gamma: Sequence[int], source: FiniteGroup,
                       bounds: Bounds = DEFAULT_BOUNDS) -> Tuple[GroupExtension, Hom]:
    """
    gamma^* E as the fiber product {(e, g') : p(e) = gamma(g')}, with its map to E.

    Raises:
        NotAHomomorphism: if gamma is not a homomorphism source -> G
    """
    gamma = check_homomorphism(source, ext.quotient, gamma, "gamma")
    bounds.check("fiber product order", len(ext.inject) * source.order, bounds.extension_order)
    total = ext.total
    pairs = [(total.identity, source.identity)]
    pairs += [(e, g) for e in total.elements() for g in source.elements()
              if ext.project[e] == gamma[g] and (e, g) != pairs[0]]

    def multiply(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
        return total.mul(x[0], y[0]), source.mul(x[1], y[1])

    product = from_elements(pairs, multiply,
                            labels=[f"({total.label(e)},{source.label(g)})" for e, g in pairs])
    position = {p: i for i, p in enumerate(pairs)}
    module = ext.module
    basis = [position[(ext.inject[module.unit(k)], source.identity)] for k in range(module.rank)]
    project = tuple(g for _, g in pairs)
    pulled = GroupExtension.build(product, source, module.invariant_factors, basis, project, bounds)
    return pulled, tuple(e for e, _ in pairs)


def pullback_cocycle_extension(ext: GroupExtension, gamma: Sequence[int], source: FiniteGroup,
                               bounds: Bounds = DEFAULT_BOUNDS) -> GroupExtension:
    """gamma^* E built from the pulled-back cocycle instead of the fiber product."""
    return extension_from_cocycle(pullback(cocycle_from_extension(ext), gamma, source), bounds)
