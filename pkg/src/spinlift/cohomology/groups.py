"""
Finite groups given by multiplication tables.

Elements are the integers 0..order-1. Homomorphisms are tuples mapping each
source element to a target element. Searches (isomorphisms, automorphisms,
splittings) are driven by small generating sets, so they stay cheap for the
orders handled here.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import InvalidAction, InvalidGroup, NotAHomomorphism, UnknownName

Hom = Tuple[int, ...]
Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group as a multiplication table.

    ``table[a][b]`` is the index of a*b. The constructor checks the table
    shape and the identity; ``from_table`` additionally checks that every row
    and column is a permutation and that multiplication is associative.
    """

    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise InvalidGroup("A group needs at least one element")
        if any(len(row) != n for row in self.table):
            raise InvalidGroup("Multiplication table is not square")
        if not 0 <= self.identity < n:
            raise InvalidGroup(f"Identity index {self.identity} out of range")
        if self.labels is not None and len(self.labels) != n:
            raise InvalidGroup("Label count does not match the group order")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], identity: int = 0,
                   labels: Optional[Sequence[str]] = None, name: str = "",
                   bounds: Bounds = DEFAULT_BOUNDS) -> "FiniteGroup":
        bounds.check("group order", len(table), bounds.group_order)
        group = cls(
            tuple(tuple(int(x) for x in row) for row in table),
            identity,
            tuple(labels) if labels is not None else None,
            name,
        )
        group.check_axioms()
        return group

    def check_axioms(self) -> None:
        n = self.order
        full = set(range(n))
        for a in range(n):
            if self.table[self.identity][a] != a or self.table[a][self.identity] != a:
                raise InvalidGroup(f"Element {self.identity} is not an identity")
            if set(self.table[a]) != full:
                raise InvalidGroup(f"Row {a} is not a permutation (no inverses)")
            if {self.table[b][a] for b in range(n)} != full:
                raise InvalidGroup(f"Column {a} is not a permutation")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidGroup(f"Associativity fails for ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        inverse = [0] * self.order
        for a in range(self.order):
            row = self.table[a]
            inverse[a] = row.index(self.identity)
        return tuple(inverse)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def product(self, elements: Iterable[int]) -> int:
        result = self.identity
        for x in elements:
            result = self.table[result][x]
        return result

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        for _ in range(k):
            result = self.table[result][a]
        return result

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inv(g)]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    def center(self) -> Tuple[int, ...]:
        return tuple(z for z in self.elements()
                     if all(self.table[z][g] == self.table[g][z] for g in self.elements()))

    def subgroup_generated(self, generators: Iterable[int]) -> frozenset:
        generators = list(generators)
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = self.table[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        candidates = sorted(self.elements(), key=lambda a: (-self.element_order(a), a))
        chosen: List[int] = []
        span = frozenset([self.identity])
        for a in candidates:
            if len(span) == self.order:
                break
            if a not in span:
                chosen.append(a)
                span = self.subgroup_generated(chosen)
        return tuple(chosen)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def describe(self) -> str:
        return f"{self.name or 'group'} of order {self.order}"


def check_homomorphism(source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int],
                       what: str = "map") -> Hom:
    """Validate a homomorphism given as a tuple; raise NotAHomomorphism otherwise."""
    mapping = tuple(int(x) for x in mapping)
    if len(mapping) != source.order:
        raise NotAHomomorphism(f"{what} has {len(mapping)} images for {source.order} elements")
    if any(not 0 <= x < target.order for x in mapping):
        raise NotAHomomorphism(f"{what} has an image out of range")
    for a in source.elements():
        for b in source.elements():
            if mapping[source.mul(a, b)] != target.mul(mapping[a], mapping[b]):
                raise NotAHomomorphism(f"{what} does not respect the product of {a} and {b}")
    return mapping


def is_homomorphism(source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int]) -> bool:
    try:
        check_homomorphism(source, target, mapping)
    except NotAHomomorphism:
        return False
    return True


def compose(outer: Sequence[int], inner: Sequence[int]) -> Hom:
    """outer after inner."""
    return tuple(outer[x] for x in inner)


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> Hom:
    return (target.identity,) * source.order


def identity_hom(group: FiniteGroup) -> Hom:
    return tuple(group.elements())


def extend_homomorphism(source: FiniteGroup, target: FiniteGroup, generators: Sequence[int],
                        images: Sequence[int]) -> Optional[Hom]:
    """
    The homomorphism sending each generator to its image, if one exists.

    The map is propagated along the Cayley graph; it is a homomorphism exactly
    when every edge x -> x*g is consistent, which this checks.
    """
    mapping: List[Optional[int]] = [None] * source.order
    mapping[source.identity] = target.identity
    queue = [source.identity]
    for x in queue:
        for g, h in zip(generators, images):
            y = source.mul(x, g)
            image = target.mul(mapping[x], h)
            if mapping[y] is None:
                mapping[y] = image
                queue.append(y)
            elif mapping[y] != image:
                return None
    if any(m is None for m in mapping):
        return None
    return tuple(mapping)


def _candidate_images(source: FiniteGroup, target: FiniteGroup, generators: Sequence[int]
                      ) -> List[List[int]]:
    by_order: Dict[int, List[int]] = {}
    for b in target.elements():
        by_order.setdefault(target.element_order(b), []).append(b)
    return [by_order.get(source.element_order(g), []) for g in generators]


def homomorphisms(source: FiniteGroup, target: FiniteGroup) -> Iterable[Hom]:
    """Every homomorphism source -> target (images of generators enumerated)."""
    generators = source.generators
    for images in itertools.product(target.elements(), repeat=len(generators)):
        if any(target.element_order(h) and source.element_order(g) % target.element_order(h)
               for g, h in zip(generators, images)):
            continue
        mapping = extend_homomorphism(source, target, generators, images)
        if mapping is not None:
            yield mapping


def find_isomorphism(source: FiniteGroup, target: FiniteGroup) -> Optional[Hom]:
    """Some isomorphism source -> target, or None."""
    if source.order != target.order:
        return None
    if sorted(source.element_order(a) for a in source.elements()) != sorted(
            target.element_order(b) for b in target.elements()):
        return None
    generators = source.generators
    for images in itertools.product(*_candidate_images(source, target, generators)):
        mapping = extend_homomorphism(source, target, generators, images)
        if mapping is not None and len(set(mapping)) == target.order:
            return mapping
    return None


def are_isomorphic(first: FiniteGroup, second: FiniteGroup) -> bool:
    return find_isomorphism(first, second) is not None


# One name per isomorphism class of groups of order at most 16.
SMALL_GROUPS = (
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7",
    "C8", "C2xC4", "C2xC2xC2", "D8", "Q8", "C9", "C3xC3", "C10", "D10", "C11",
    "C12", "C2xC6", "A4", "D12", "Dic12", "C13", "C14", "D14", "C15",
    "C16", "C4xC4", "C2xC8", "M16", "C2xC2xC4", "C2xD8", "C2xQ8", "D16", "SD16", "Q16",
    "C4:C4", "C2^2:C4", "C4oD8", "C2xC2xC2xC2",
)


def identify_group(group: FiniteGroup) -> Optional[str]:
    """The catalog name of a group isomorphic to ``group``, if one is listed."""
    for name in SMALL_GROUPS:
        candidate = small_group(name)
        if candidate.order == group.order and are_isomorphic(candidate, group):
            return name
    return None


def automorphisms(group: FiniteGroup) -> List[Hom]:
    """All automorphisms, the identity first."""
    generators = group.generators
    found = []
    for images in itertools.product(*_candidate_images(group, group, generators)):
        mapping = extend_homomorphism(group, group, generators, images)
        if mapping is not None and len(set(mapping)) == group.order:
            found.append(mapping)
    found.sort(key=lambda m: m != identity_hom(group))
    return found


def inner_automorphism(group: FiniteGroup, g: int) -> Hom:
    return tuple(group.conjugate(g, x) for x in group.elements())


# Constructions


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidGroup("Cyclic group order must be positive")
    return FiniteGroup(
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
        0,
        tuple(f"g^{a}" for a in range(n)),
        f"C{n}",
    )


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """Elements (g, h) are indexed g * |H| + h."""
    m = second.order
    table = tuple(
        tuple(first.mul(a // m, b // m) * m + second.mul(a % m, b % m)
              for b in range(first.order * m))
        for a in range(first.order * m)
    )
    labels = tuple(f"({first.label(a // m)},{second.label(a % m)})" for a in range(first.order * m))
    name = f"{first.name}x{second.name}" if first.name and second.name else ""
    return FiniteGroup(table, first.identity * m + second.identity, labels, name)


def from_elements(elements: Sequence, multiply, name: str = "",
                  labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Build a table from explicit elements (identity first) and a product function."""
    index = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(index[multiply(x, y)] for y in elements) for x in elements)
    return FiniteGroup(table, 0, tuple(labels) if labels else tuple(str(x) for x in elements), name)


def from_permutations(generators: Sequence[Sequence[int]], name: str = "",
                      bounds: Bounds = DEFAULT_BOUNDS) -> FiniteGroup:
    """
    The permutation group generated by the given permutations of 0..n-1.

    Elements are listed in breadth-first order from the identity.
    """
    generators = [tuple(int(x) for x in g) for g in generators]
    if not generators:
        return trivial_group()
    n = len(generators[0])
    for g in generators:
        if sorted(g) != list(range(n)):
            raise InvalidGroup(f"{list(g)} is not a permutation of 0..{n - 1}")
    identity = tuple(range(n))
    elements = [identity]
    seen = {identity}
    for x in elements:
        for g in generators:
            y = tuple(x[g[i]] for i in range(n))
            if y not in seen:
                seen.add(y)
                elements.append(y)
                bounds.check("group order", len(elements), bounds.group_order)

    def multiply(x: Permutation, y: Permutation) -> Permutation:
        # Apply y first, then x.
        return tuple(x[y[i]] for i in range(n))

    return from_elements(elements, multiply, name, [str(list(p)) for p in elements])


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    transposition = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return from_permutations([cycle, transposition], f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return from_permutations([rotation, reflection], f"D{2 * n}")


def quaternion() -> FiniteGroup:
    """Q8 with elements (sign, unit), units 1, i, j, k."""
    units = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, u) for s in (1, -1) for u in range(4)]

    def multiply(x, y):
        sign, unit = units[(x[1], y[1])]
        return (x[0] * y[0] * sign, unit)

    names = ["1", "i", "j", "k"]
    labels = [("" if s == 1 else "-") + names[u] for s, u in elements]
    return from_elements(elements, multiply, "Q8", labels)


def alternating(n: int) -> FiniteGroup:
    """Even permutations of 0..n-1, generated by the 3-cycles (0 1 i)."""
    if n < 3:
        return trivial_group()
    generators = []
    for i in range(2, n):
        cycle = list(range(n))
        cycle[0], cycle[1], cycle[i] = 1, i, 0
        generators.append(cycle)
    return from_permutations(generators, f"A{n}")


def dicyclic(n: int) -> FiniteGroup:
    """
    <a, x | a^(n/2) = 1, x^2 = a^(n/4), x a x^-1 = a^-1>, of order n.

    Elements a^i x^j are pairs (i, j); powers of two give the generalized
    quaternion groups.
    """
    if n < 8 or n % 4:
        raise InvalidGroup(f"Dicyclic groups have order divisible by 4 and at least 8, got {n}")
    half = n // 2
    elements = [(i, j) for j in (0, 1) for i in range(half)]

    def multiply(x, y):
        (i, j), (k, l) = x, y
        if j == 0:
            return (i + k) % half, l
        if l == 0:
            return (i - k) % half, 1
        return (i - k + half // 2) % half, 0

    labels = [f"a^{i}" + ("x" if j else "") for i, j in elements]
    name = f"Q{n}" if n & (n - 1) == 0 else f"Dic{n}"
    return from_elements(elements, multiply, name, labels)


def metacyclic(n: int, k: int, name: str) -> FiniteGroup:
    """C_(n/2) x| C2 with the involution acting by x -> x^k."""
    base, c2 = cyclic(n // 2), cyclic(2)
    automorphism = tuple((k * x) % base.order for x in base.elements())
    product = semidirect(base, c2, cyclic_action(base, c2, automorphism)).group
    return replace(product, name=name)


def _c4_by_c4() -> FiniteGroup:
    c4 = cyclic(4)
    inversion = tuple((-x) % 4 for x in c4.elements())
    return replace(semidirect(c4, c4, cyclic_action(c4, c4, inversion)).group, name="C4:C4")


def _klein_by_c4() -> FiniteGroup:
    klein, c4 = small_group("C2xC2"), cyclic(4)
    swap = tuple((x % 2) * 2 + x // 2 for x in klein.elements())
    return replace(semidirect(klein, c4, cyclic_action(klein, c4, swap)).group, name="C2^2:C4")


def _pauli() -> FiniteGroup:
    """C4 o D8: C4 x D8 with the two central involutions identified."""
    d8 = dihedral(4)
    z = next(x for x in d8.center() if x != d8.identity)
    product = direct_product(cyclic(4), d8)
    group, _ = quotient_group(product, {product.identity, 2 * d8.order + z})
    return replace(group, name="C4oD8")


def quotient_group(group: FiniteGroup, normal: Iterable[int]) -> Tuple[FiniteGroup, Hom]:
    """
    G/N together with the projection G -> G/N.

    Cosets are numbered by their smallest element, in increasing order.
    """
    normal = frozenset(normal)
    coset_of: Dict[int, int] = {}
    representatives: List[int] = []
    for g in group.elements():
        if g in coset_of:
            continue
        index = len(representatives)
        representatives.append(g)
        for n in normal:
            coset_of[group.mul(g, n)] = index
    if len(representatives) * len(normal) != group.order:
        raise InvalidGroup("Subset is not a subgroup")
    for g in group.elements():
        for n in normal:
            if group.conjugate(g, n) not in normal:
                raise InvalidGroup("Subgroup is not normal")
    table = tuple(
        tuple(coset_of[group.mul(r, s)] for s in representatives) for r in representatives
    )
    projection = tuple(coset_of[g] for g in group.elements())
    name = f"{group.name}/N" if group.name else ""
    return FiniteGroup(table, coset_of[group.identity], None, name), projection


_PRODUCT_SPLIT = re.compile(r"\s*x\s*")


@lru_cache(maxsize=None)
def small_group(name: str) -> FiniteGroup:
    """
    Catalog groups by name: C<n>, S<n>, A<n>, D<2n>, Q8, Q<2^k>, Dic<4n>,
    SD<2^k>, M<2^k>, the order-16 groups C4:C4, C2^2:C4 and C4oD8, and direct
    products such as C2xC2 or C2xD8.

    Raises:
        UnknownName: if a factor is not recognized
    """
    factors = _PRODUCT_SPLIT.split(name.strip())
    groups = [_catalog_factor(f) for f in factors]
    result = groups[0]
    for g in groups[1:]:
        result = direct_product(result, g)
    if len(groups) > 1:
        result = FiniteGroup(result.table, result.identity, result.labels, name.strip())
    return result


_NAMED_FACTORS = {"C4:C4": _c4_by_c4, "C2^2:C4": _klein_by_c4, "C4oD8": _pauli}


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _catalog_factor(name: str) -> FiniteGroup:
    if name in _NAMED_FACTORS:
        return _NAMED_FACTORS[name]()
    match = re.match(r"^(Dic|SD|C|S|A|D|Q|M)(\d+)$", name)
    if not match:
        raise UnknownName(f"Unknown group {name!r}")
    family, n = match.group(1), int(match.group(2))
    if family == "C" and n >= 1:
        return cyclic(n)
    if family == "S" and 1 <= n <= 5:
        return symmetric(n)
    if family == "A" and 3 <= n <= 5:
        return alternating(n)
    if family == "D" and n >= 4 and n % 2 == 0:
        return dihedral(n // 2)
    if family == "Q" and n == 8:
        return quaternion()
    if family == "Q" and n > 8 and _is_power_of_two(n):
        return dicyclic(n)
    if family == "Dic" and n >= 8 and n % 4 == 0:
        return replace(dicyclic(n), name=name)
    if family == "SD" and n >= 16 and _is_power_of_two(n):
        return metacyclic(n, n // 4 - 1, name)
    if family == "M" and n >= 16 and _is_power_of_two(n):
        return metacyclic(n, n // 4 + 1, name)
    raise UnknownName(f"Unknown group {name!r}")


@dataclass(frozen=True)
class SemidirectProduct:
    """
    G x| W with its canonical maps.

    Elements (g, w) are indexed g + |G| * w. ``include`` is G -> G x| W,
    ``project`` is G x| W -> W and ``section`` is W -> G x| W.
    """

    group: FiniteGroup
    normal: FiniteGroup
    complement: FiniteGroup
    action: Tuple[Permutation, ...]
    include: Hom
    project: Hom
    section: Hom

    def pair(self, element: int) -> Tuple[int, int]:
        n = self.normal.order
        return element % n, element // n

    def element(self, g: int, w: int) -> int:
        return g + self.normal.order * w


def check_action(group: FiniteGroup, acting: FiniteGroup, action: Sequence[Sequence[int]]
                 ) -> Tuple[Permutation, ...]:
    """Validate a homomorphism acting -> Aut(group); raise InvalidAction otherwise."""
    action = tuple(tuple(int(x) for x in a) for a in action)
    if len(action) != acting.order:
        raise InvalidAction(f"Action lists {len(action)} automorphisms for {acting.order} elements")
    for w, phi in enumerate(action):
        if len(phi) != group.order or len(set(phi)) != group.order:
            raise InvalidAction(f"Action of {w} is not a bijection")
        if not is_homomorphism(group, group, phi):
            raise InvalidAction(f"Action of {w} is not an automorphism")
    if action[acting.identity] != identity_hom(group):
        raise InvalidAction("The identity does not act trivially")
    for w in acting.elements():
        for v in acting.elements():
            if action[acting.mul(w, v)] != compose(action[w], action[v]):
                raise InvalidAction(f"Action is not multiplicative at ({w}, {v})")
    return action


def semidirect(group: FiniteGroup, acting: FiniteGroup, action: Sequence[Sequence[int]],
               bounds: Bounds = DEFAULT_BOUNDS) -> SemidirectProduct:
    """
    (g, w)(g', w') = (g * w(g'), w w').

    Raises:
        InvalidAction: if ``action`` is not a homomorphism acting -> Aut(group)
    """
    action = check_action(group, acting, action)
    n, k = group.order, acting.order
    bounds.check("semidirect product order", n * k, bounds.group_order)
    table = []
    for a in range(n * k):
        g, w = a % n, a // n
        row = []
        for b in range(n * k):
            h, v = b % n, b // n
            row.append(group.mul(g, action[w][h]) + n * acting.mul(w, v))
        table.append(tuple(row))
    labels = tuple(f"({group.label(a % n)},{acting.label(a // n)})" for a in range(n * k))
    name = f"{group.name}:{acting.name}" if group.name and acting.name else ""
    product = FiniteGroup(tuple(table), group.identity + n * acting.identity, labels, name)
    logging.debug(f"Built semidirect product of order {n * k}")
    return SemidirectProduct(
        group=product,
        normal=group,
        complement=acting,
        action=action,
        include=tuple(g + n * acting.identity for g in range(n)),
        project=tuple(a // n for a in range(n * k)),
        section=tuple(group.identity + n * w for w in range(k)),
    )


def trivial_action(group: FiniteGroup, acting: FiniteGroup) -> Tuple[Permutation, ...]:
    return (identity_hom(group),) * acting.order


def cyclic_action(group: FiniteGroup, acting: FiniteGroup, automorphism: Sequence[int]
                  ) -> Tuple[Permutation, ...]:
    """Action of a cyclic group whose generator (element 1) acts by ``automorphism``."""
    result = []
    current = identity_hom(group)
    for _ in range(acting.order):
        result.append(current)
        current = compose(tuple(automorphism), current)
    return tuple(result)
