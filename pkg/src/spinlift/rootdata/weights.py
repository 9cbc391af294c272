"""
Weight multisets of orthogonal representations.

A multiset lives either on the cocharacter side (weights in X_*(T), i.e. a
representation of the dual group) or on the character side (weights in
X*(T), a representation of G itself).
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import sympy

from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import LeviNotGaloisStable, UnknownName
from spinlift.lattice import IntMatrix, IntVector, as_vector
from spinlift.rootdata.datum import (
    RootDatum,
    ValidationReport,
    dualize,
    weyl_group,
)

COCHARACTER = "cocharacter"
CHARACTER = "character"
LATTICES = (COCHARACTER, CHARACTER)


@dataclass(frozen=True)
class WeightMultiset:
    """
    A finite multiset of weights with positive multiplicities.

    ``entries`` is kept sorted by weight so that equal multisets compare equal.
    """

    datum: RootDatum
    entries: Tuple[Tuple[IntVector, int], ...]
    lattice: str = COCHARACTER

    def __post_init__(self) -> None:
        if self.lattice not in LATTICES:
            raise ValueError(f"lattice must be one of {LATTICES}, got {self.lattice!r}")
        for weight, multiplicity in self.entries:
            if len(weight) != self.datum.rank:
                raise ValueError(f"Weight {weight} does not have length {self.datum.rank}")
            if multiplicity <= 0:
                raise ValueError(f"Multiplicity of {weight} must be positive, got {multiplicity}")

    @classmethod
    def from_mapping(cls, datum: RootDatum, entries: Mapping[Sequence[int], int],
                     lattice: str = COCHARACTER) -> "WeightMultiset":
        merged: Dict[IntVector, int] = {}
        for weight, multiplicity in entries.items():
            key = as_vector(weight)
            merged[key] = merged.get(key, 0) + int(multiplicity)
        return cls(datum, tuple(sorted((w, m) for w, m in merged.items() if m)), lattice)

    @classmethod
    def from_pairs(cls, datum: RootDatum, pairs: Iterable[Tuple[Sequence[int], int]],
                   lattice: str = COCHARACTER) -> "WeightMultiset":
        merged: Dict[IntVector, int] = {}
        for weight, multiplicity in pairs:
            key = as_vector(weight)
            merged[key] = merged.get(key, 0) + int(multiplicity)
        return cls.from_mapping(datum, merged, lattice)

    def as_dict(self) -> Dict[IntVector, int]:
        return dict(self.entries)

    def multiplicity(self, weight: Sequence[int]) -> int:
        return self.as_dict().get(as_vector(weight), 0)

    @property
    def zero(self) -> IntVector:
        return (0,) * self.datum.rank

    @property
    def zero_multiplicity(self) -> int:
        return self.multiplicity(self.zero)

    @property
    def nonzero_weights(self) -> Tuple[IntVector, ...]:
        return tuple(w for w, _ in self.entries if any(w))

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def weight_set(self) -> frozenset:
        return frozenset(w for w, _ in self.entries)

    def galois_matrices(self) -> Tuple[IntMatrix, ...]:
        """Galois generators acting on the lattice the weights live in."""
        if self.lattice == CHARACTER:
            return self.datum.galois_on_characters()
        return self.datum.galois_on_cocharacters()

    def partners(self) -> Tuple[IntVector, ...]:
        """Vectors of the dual lattice that must pair evenly for descent and centrality."""
        return self.datum.roots if self.lattice == COCHARACTER else self.datum.coroots

    def ambient_datum(self) -> RootDatum:
        """The datum whose character lattice holds the weights."""
        return dualize(self.datum) if self.lattice == COCHARACTER else self.datum

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        return orthogonal_sum(self, other)

    def scaled(self, k: int) -> "WeightMultiset":
        if k <= 0:
            raise ValueError("Scale factor must be positive")
        return WeightMultiset(self.datum, tuple((w, k * m) for w, m in self.entries), self.lattice)

    def validate(self, weyl: bool = False, bounds: Bounds = DEFAULT_BOUNDS) -> ValidationReport:
        """Check negation and Galois stability, and Weyl stability when asked."""
        failures: List[str] = []
        counts = self.as_dict()
        for weight, multiplicity in self.entries:
            negative = tuple(-x for x in weight)
            if counts.get(negative, 0) != multiplicity:
                failures.append(f"weight {list(weight)} and its negative have different multiplicities")
        for k, g in enumerate(self.galois_matrices()):
            for weight, multiplicity in self.entries:
                if counts.get(g @ weight, 0) != multiplicity:
                    failures.append(f"galois generator {k} does not preserve weight {list(weight)}")
                    break
        if weyl:
            for w in weyl_group(self.ambient_datum(), bounds):
                if any(counts.get(w @ weight, 0) != m for weight, m in self.entries):
                    failures.append("multiset is not Weyl-stable")
                    break
        return ValidationReport.from_failures(failures)

    def describe(self) -> str:
        body = ", ".join(f"{list(w)}:{m}" for w, m in self.entries)
        return f"{{{body}}} on the {self.lattice} lattice of {self.datum.describe()}"


def orthogonal_sum(first: WeightMultiset, second: WeightMultiset) -> WeightMultiset:
    if first.datum != second.datum or first.lattice != second.lattice:
        raise ValueError("Cannot add weight multisets of different data or lattices")
    return WeightMultiset.from_pairs(first.datum, first.entries + second.entries, first.lattice)


def double(m: WeightMultiset) -> WeightMultiset:
    """m + m, the weights of r (+) r."""
    return m.scaled(2)


def hyperbolic(datum: RootDatum, weights: Iterable[Sequence[int]],
               lattice: str = COCHARACTER) -> WeightMultiset:
    """Weights of V (+) V^dual for V with the given weights (with repetition)."""
    pairs: List[Tuple[IntVector, int]] = []
    for weight in weights:
        weight = as_vector(weight)
        pairs.append((weight, 1))
        pairs.append((tuple(-x for x in weight), 1))
    return WeightMultiset.from_pairs(datum, pairs, lattice)


def galois_orbit(weight: IntVector, matrices: Sequence[IntMatrix]) -> List[IntVector]:
    orbit = [weight]
    seen = {weight}
    for current in orbit:
        for g in matrices:
            image = g @ current
            if image not in seen:
                seen.add(image)
                orbit.append(image)
    return orbit


def tautological_weights(datum: RootDatum) -> WeightMultiset:
    """
    Weights of the standard representation of an SO(m) catalog datum.

    The weights are +-e_i on the character side, plus the zero weight when m
    is odd.
    """
    name = datum.name
    if not name.startswith("SO") or not name[2:].isdigit():
        raise UnknownName(f"No tautological representation for {name or 'unnamed datum'}")
    m = int(name[2:])
    n = datum.rank
    pairs = []
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        pairs.append((e, 1))
        pairs.append((tuple(-x for x in e), 1))
    if m % 2:
        pairs.append(((0,) * n, 1))
    return WeightMultiset.from_pairs(datum, pairs, CHARACTER)


def adjoint_weights(d: RootDatum) -> WeightMultiset:
    """Weights of the adjoint representation of the dual group: coroots and rank zeros."""
    pairs = [(c, 1) for c in d.coroots]
    if d.rank:
        pairs.append(((0,) * d.rank, d.rank))
    return WeightMultiset.from_pairs(d, pairs, COCHARACTER)


def _check_levi(d: RootDatum, levi: Iterable[int]) -> Tuple[int, ...]:
    levi = tuple(sorted(set(levi)))
    simple = set(d.simple_indices)
    if not set(levi) <= simple:
        raise ValueError(f"Levi indices {list(levi)} are not all simple root indices")
    levi_roots = {d.roots[i] for i in levi}
    for k, g in enumerate(d.galois_gens):
        if {g @ r for r in levi_roots} != levi_roots:
            raise LeviNotGaloisStable(f"Galois generator {k} moves the Levi {list(levi)}")
    return levi


def galois_fixed_rank(d: RootDatum, levi: Iterable[int]) -> int:
    """Rank of the Galois-fixed part of X_*(T) / <levi coroots>, computed over Q."""
    levi = _check_levi(d, levi)
    span = sympy.Matrix([list(d.coroots[i]) for i in levi]).T if levi else sympy.zeros(d.rank, 0)
    span_dim = span.rank() if levi else 0
    annihilator = span.T.nullspace() if levi else [sympy.eye(d.rank)[:, i] for i in range(d.rank)]
    blocks = []
    for g in d.galois_on_cocharacters():
        moved = sympy.Matrix(g.to_rows()) - sympy.eye(d.rank)
        for functional in annihilator:
            blocks.append(functional.T * moved)
    constraint_rank = sympy.Matrix.vstack(*blocks).rank() if blocks else 0
    return d.rank - constraint_rank - span_dim


def relative_adjoint_weights(d: RootDatum, levi: Iterable[int]) -> WeightMultiset:
    """
    Weights of the adjoint representation relative to a Levi subgroup.

    Nonzero weights are the coroots; the zero weight has multiplicity
    rank - rank((X_*(T) / <levi coroots>)^Galois).

    Raises:
        LeviNotGaloisStable: if a Galois generator moves the Levi subset
    """
    zero = d.rank - galois_fixed_rank(d, levi)
    pairs = [(c, 1) for c in d.coroots]
    if zero:
        pairs.append(((0,) * d.rank, zero))
    logging.debug(f"Relative adjoint weights of {d.describe()}: zero multiplicity {zero}")
    return WeightMultiset.from_pairs(d, pairs, COCHARACTER)


def random_multiset(d: RootDatum, rng: random.Random, lattice: str = COCHARACTER,
                    max_weights: int = 4, spread: int = 3) -> WeightMultiset:
    """A Galois- and negation-stable random multiset with small weights."""
    matrices = (d.galois_on_characters() if lattice == CHARACTER
                else d.galois_on_cocharacters())
    pairs: List[Tuple[IntVector, int]] = []
    for _ in range(rng.randint(1, max_weights)):
        weight = tuple(rng.randint(-spread, spread) for _ in range(d.rank))
        if not any(weight):
            continue
        multiplicity = rng.randint(1, 3)
        for image in galois_orbit(weight, matrices):
            pairs.append((image, multiplicity))
            pairs.append((tuple(-x for x in image), multiplicity))
    zeros = rng.randint(0, 2)
    if zeros and d.rank:
        pairs.append(((0,) * d.rank, zeros))
    return _stabilize(d, pairs, matrices, lattice)


def _stabilize(d: RootDatum, pairs: List[Tuple[IntVector, int]],
               matrices: Sequence[IntMatrix], lattice: str) -> WeightMultiset:
    # Overlapping orbits can leave multiplicities uneven; equalize them per
    # orbit of the group generated by Galois and negation.
    merged: Dict[IntVector, int] = {}
    for weight, multiplicity in pairs:
        merged[weight] = merged.get(weight, 0) + multiplicity
    negation = IntMatrix.identity(d.rank).scaled(-1)
    result: Dict[IntVector, int] = {}
    for weight in sorted(merged):
        if weight in result:
            continue
        orbit = galois_orbit(weight, list(matrices) + [negation])
        top = max(merged.get(w, 0) for w in orbit)
        for w in orbit:
            result[w] = top
    return WeightMultiset.from_mapping(d, result, lattice)

