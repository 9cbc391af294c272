"""
Gauges, half-sums of positive weights, spin lifting and canonical involutions.

Two independent routes decide spin lifting: the half-sum rho is computed
exactly and tested for integrality, while the spin character accumulates
weight parities directly. Their agreement is a tested property.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from spinlift.lattice import FinAbPresentation, IntMatrix, IntVector, dot, quotient
from spinlift.rootdata.weights import WeightMultiset


def lex_positive(weight: IntVector) -> bool:
    for x in weight:
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class Gauge:
    """The weights declared positive: one of each nonzero pair {w, -w}."""

    positive_set: FrozenSet[IntVector]

    def is_gauge_for(self, m: WeightMultiset) -> bool:
        nonzero = set(m.nonzero_weights)
        if not self.positive_set <= nonzero:
            return False
        return all(
            (w in self.positive_set) != (tuple(-x for x in w) in self.positive_set)
            for w in nonzero
        )

    def sorted_weights(self) -> List[IntVector]:
        return sorted(self.positive_set)


@dataclass(frozen=True)
class HalfWeight:
    """numerator / denominator with denominator 1 or 2, in lowest terms."""

    numerator: IntVector
    denominator: int

    @classmethod
    def from_doubled(cls, doubled: IntVector) -> "HalfWeight":
        if all(x % 2 == 0 for x in doubled):
            return cls(tuple(x // 2 for x in doubled), 1)
        return cls(tuple(doubled), 2)

    @property
    def doubled(self) -> IntVector:
        return tuple(x * (2 // self.denominator) for x in self.numerator)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": self.denominator}


@dataclass(frozen=True)
class TorsionCharacter:
    """A vector with entries in {0, 1}: an element of L / 2L for a lattice L."""

    vector_mod2: IntVector

    @classmethod
    def from_vector(cls, vector: IntVector) -> "TorsionCharacter":
        return cls(tuple(x % 2 for x in vector))

    def is_trivial(self) -> bool:
        return not any(self.vector_mod2)

    def __add__(self, other: "TorsionCharacter") -> "TorsionCharacter":
        return TorsionCharacter(tuple((a + b) % 2 for a, b in zip(self.vector_mod2, other.vector_mod2)))

    def evaluate(self, dual_vector: IntVector) -> int:
        """(-1)^<dual_vector, self> as +1 or -1."""
        return -1 if dot(dual_vector, self.vector_mod2) % 2 else 1


@dataclass(frozen=True)
class SpinCharacterReport:
    """
    The spin character together with its behaviour on the fundamental group.

    Attributes:
        character: The parity vector (2 rho mod 2)
        descends: Whether it kills every partner vector, i.e. factors through pi_1
        pi1: Presentation of the fundamental group it descends to
        values: Value (+1/-1) on each generator of pi_1, in presentation order
    """

    character: TorsionCharacter
    descends: bool
    pi1: FinAbPresentation
    values: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "vector": list(self.character.vector_mod2),
            "descends": self.descends,
            "pi1": list(self.pi1.invariant_factors),
            "values": list(self.values),
        }


@dataclass(frozen=True)
class InvolutionReport:
    """The class of z_m in L/2L with centrality and Galois-fixedness verdicts."""

    involution: TorsionCharacter
    central: bool
    galois_fixed: bool

    def to_json(self) -> dict:
        return {
            "involution": list(self.involution.vector_mod2),
            "central": self.central,
            "galois_fixed": self.galois_fixed,
        }


def choose_gauge(m: WeightMultiset) -> Gauge:
    """The lexicographic gauge: a weight is positive iff its first nonzero entry is."""
    return Gauge(frozenset(w for w in m.nonzero_weights if lex_positive(w)))


def random_gauge(m: WeightMultiset, rng: random.Random) -> Gauge:
    positive = []
    for w in m.nonzero_weights:
        if lex_positive(w):
            positive.append(w if rng.random() < 0.5 else tuple(-x for x in w))
    return Gauge(frozenset(positive))


def _weighted_sum(m: WeightMultiset, gauge: Gauge) -> IntVector:
    counts = m.as_dict()
    total = [0] * m.datum.rank
    for w in gauge.sorted_weights():
        k = counts[w]
        total = [t + k * x for t, x in zip(total, w)]
    return tuple(total)


def rho(m: WeightMultiset, gauge: Gauge) -> HalfWeight:
    """Half the multiplicity-weighted sum of the positive weights."""
    if not gauge.is_gauge_for(m):
        raise ValueError("Gauge does not select exactly one of each nonzero weight pair")
    return HalfWeight.from_doubled(_weighted_sum(m, gauge))


def lifts_to_spin(m: WeightMultiset, gauge: Optional[Gauge] = None) -> bool:
    """True iff rho lies in the weight lattice, i.e. has denominator 1."""
    return rho(m, gauge or choose_gauge(m)).is_integral()


def multiplicity_blind_lifts(m: WeightMultiset) -> bool:
    """
    The lifting test applied to the weight set, ignoring multiplicities.

    Kept as a negative oracle: it disagrees with lifts_to_spin whenever a
    weight with odd contribution appears with even multiplicity.
    """
    total = [0] * m.datum.rank
    for w in choose_gauge(m).sorted_weights():
        total = [t + x for t, x in zip(total, w)]
    return all(x % 2 == 0 for x in total)


def _parity_vector(m: WeightMultiset, gauge: Gauge) -> IntVector:
    # Only weights with odd multiplicity contribute mod 2.
    parity = [0] * m.datum.rank
    counts = m.as_dict()
    for w in gauge.sorted_weights():
        if counts[w] % 2:
            parity = [p ^ (x & 1) for p, x in zip(parity, w)]
    return tuple(parity)


def character_fundamental_group(m: WeightMultiset) -> FinAbPresentation:
    """
    The group the spin character lives on.

    The character pairs the weight lattice with its dual; its domain modulo
    the partner vectors is X*(T)/<roots> for cocharacter weights and
    X_*(T)/<coroots> for character weights.
    """
    partners = m.partners()
    return quotient(m.datum.rank, IntMatrix.from_columns(partners, m.datum.rank))


def spin_character(m: WeightMultiset, gauge: Optional[Gauge] = None) -> SpinCharacterReport:
    """e_m(lambda) = (-1)^<lambda, 2 rho>, with its descent to pi_1."""
    character = TorsionCharacter(_parity_vector(m, gauge or choose_gauge(m)))
    descends = all(character.evaluate(p) == 1 for p in m.partners())
    pi1 = character_fundamental_group(m)
    values: Tuple[int, ...] = ()
    if descends:
        generators = []
        for k in range(pi1.rank):
            unit = [0] * pi1.rank
            unit[k] = 1
            generators.append(pi1.lift(unit))
        values = tuple(character.evaluate(g) for g in generators)
    return SpinCharacterReport(character, descends, pi1, values)


def involution(m: WeightMultiset, gauge: Optional[Gauge] = None) -> InvolutionReport:
    """
    The canonical involution z_m as the class of sum m(w) w mod 2.

    Central iff every partner pairs evenly with the sum; Galois-fixed iff every
    generator fixes the class.
    """
    total = _weighted_sum(m, gauge or choose_gauge(m))
    klass = TorsionCharacter.from_vector(total)
    central = all(dot(p, total) % 2 == 0 for p in m.partners())
    galois_fixed = all(
        TorsionCharacter.from_vector(g @ total) == klass for g in m.galois_matrices()
    )
    return InvolutionReport(klass, central, galois_fixed)


@dataclass(frozen=True)
class GaugeFlipReport:
    trials: int
    invariant: bool
    failures: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"trials": self.trials, "invariant": self.invariant, "failures": list(self.failures)}


def gauge_flip_test(m: WeightMultiset, trials: int, seed: int = 0) -> GaugeFlipReport:
    """Recompute every verdict under random gauges and compare with the lexicographic one."""
    rng = random.Random(seed)
    base = choose_gauge(m)
    expected_lifts = lifts_to_spin(m, base)
    expected_character = spin_character(m, base).character
    expected_involution = involution(m, base).involution
    expected_doubled = rho(m, base).doubled
    failures: List[str] = []
    for trial in range(trials):
        gauge = random_gauge(m, rng)
        if lifts_to_spin(m, gauge) != expected_lifts:
            failures.append(f"trial {trial}: lifting verdict changed")
        if spin_character(m, gauge).character != expected_character:
            failures.append(f"trial {trial}: spin character changed")
        if involution(m, gauge).involution != expected_involution:
            failures.append(f"trial {trial}: involution changed")
        difference = [a - b for a, b in zip(rho(m, gauge).doubled, expected_doubled)]
        if any(x % 2 for x in difference):
            failures.append(f"trial {trial}: 2 rho changed by an odd vector")
    if failures:
        logging.info(f"Gauge flip test found {len(failures)} discrepancies")
    return GaugeFlipReport(trials, not failures, tuple(failures))


def spin_report(m: WeightMultiset) -> Dict[str, object]:
    """The combined report emitted by the spin command."""
    gauge = choose_gauge(m)
    half = rho(m, gauge)
    character = spin_character(m, gauge)
    z = involution(m, gauge)
    return {
        "lattice": m.lattice,
        "rho": half.to_json(),
        "lifts": half.is_integral(),
        "spin_character": list(character.character.vector_mod2),
        "descends": character.descends,
        "pi1": list(character.pi1.invariant_factors),
        "character_values": list(character.values),
        "involution": list(z.involution.vector_mod2),
        "central": z.central,
        "galois_fixed": z.galois_fixed,
    }
