"""
The acceptance suite behind ``spinlift selftest``.

Each section records named checks. A check that raises a SpinliftError is a
failure of that check; SizeBoundExceeded aborts the suite so that a bound
that is too small surfaces as a configuration error.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from spinlift.clifford import (
    REPRESENTATION_NAMES,
    decomposition_independent,
    direct_sum,
    pin_extension,
    representation,
    rotation_rep,
    rotation_weights,
    sw2,
    whitney_check,
)
from spinlift.clifford.catalog import ROTATION_ORDERS
from spinlift.cohomology import (
    SMALL_GROUPS,
    Cocycle2,
    GModule,
    are_equivalent,
    classes_equal,
    cocycle_from_extension,
    extension_from_cocycle,
    h2,
    h2_order_by_enumeration,
    identify_group,
    small_group,
)
from spinlift.cohomology.instances import run_crossed_hom_trials, run_key_lemma_trials
from spinlift.cohomology.lemmas import random_section
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import SizeBoundExceeded, SpinliftError
from spinlift.lattice import IntMatrix
from spinlift.rootdata import (
    CATALOG_NAMES,
    CHARACTER,
    COCHARACTER,
    adjoint_weights,
    catalog,
    double,
    fundamental_group,
    positive_coroot_sum,
    random_multiset,
    split_catalog,
    tautological_weights,
    validate,
)
from spinlift.spin import (
    TorsionCharacter,
    gauge_flip_test,
    involution,
    lifts_to_spin,
    multiplicity_blind_lifts,
    spin_character,
)

PI1_TABLE = {
    "SL2": [], "SL3": [], "SL4": [],
    "PGL2": [2], "PGL3": [3], "PGL4": [4],
    "GL1": [0], "Sp4": [], "SO5": [2],
}
H2_TABLE = {"C2": 2, "C2xC2": 8, "C3": 1}
ROUND_TRIP_MODULI = ((2,), (3,), (4,), (2, 2))
ROUND_TRIP_CLASSES = 16
WHITNEY_GROUPS = ("C2", "C4", "C2xC2", "S3", "D8")
WHITNEY_MAX_DIM = 6


@dataclass
class Section:
    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)

    def check(self, label: str, condition: bool, detail: str = "") -> None:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(f"{label}: {detail}" if detail else label)

    def guarded(self, label: str, fn: Callable[[], bool], detail: str = "") -> None:
        try:
            self.check(label, fn(), detail)
        except SizeBoundExceeded:
            raise
        except SpinliftError as e:
            self.check(label, False, f"{type(e).__name__}: {e}")

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "failed": self.failed,
                "failures": list(self.failures)}


def snf_oracle(rank: int, columns) -> List[int]:
    """Invariant factors of Z^rank / <columns> from sympy's Smith normal form."""
    if not columns:
        return [0] * rank
    m = Matrix([list(c) for c in columns]).T
    diagonal = smith_normal_form(m, domain=ZZ)
    entries = [abs(int(diagonal[i, i])) for i in range(min(diagonal.shape))]
    entries += [0] * (rank - len(entries))
    torsion = sorted(d for d in entries if d > 1)
    return torsion + [0] * entries.count(0)


def check_fundamental_groups(section: Section) -> None:
    for name in CATALOG_NAMES:
        report = validate(catalog(name))
        section.check(f"catalog entry {name} is valid", report.valid, "; ".join(report.failures))
    for name, expected in PI1_TABLE.items():
        d = catalog(name)
        pi1 = fundamental_group(d)
        found = list(pi1.invariant_factors)
        section.check(f"pi1({name})", found == expected, f"got {found}, expected {expected}")
        oracle = snf_oracle(d.rank, d.coroots)
        section.check(f"pi1({name}) against the SNF oracle", oracle == expected,
                      f"oracle gives {oracle}")


def _random_multisets(rng: random.Random, count: int):
    data = [catalog(name) for name in CATALOG_NAMES if catalog(name).rank]
    result = []
    for _ in range(count):
        d = rng.choice(data)
        result.append(random_multiset(d, rng, rng.choice((COCHARACTER, CHARACTER))))
    return result


def check_spin_lifting(section: Section, rng: random.Random) -> None:
    for n in range(1, 5):
        m = tautological_weights(catalog(f"SO{2 * n + 1}"))
        section.check(f"tautological SO{2 * n + 1} does not lift", not lifts_to_spin(m))
    for k, m in enumerate(_random_multisets(rng, 200)):
        section.check(f"random multiset {k} is valid", m.validate().valid, m.describe())
        section.check(f"double of random multiset {k} lifts", lifts_to_spin(double(m)), m.describe())
        section.check(
            f"criteria agree on random multiset {k}",
            lifts_to_spin(m) == spin_character(m).character.is_trivial(),
            m.describe(),
        )


def check_canonical_involution(section: Section) -> None:
    for d in split_catalog():
        expected = TorsionCharacter.from_vector(positive_coroot_sum(d))
        found = involution(adjoint_weights(d)).involution
        section.check(f"adjoint involution of {d.name}", found == expected,
                      f"got {list(found.vector_mod2)}, expected {list(expected.vector_mod2)}")
    section.check("SL2 adjoint involution is nontrivial",
                  not involution(adjoint_weights(catalog("SL2"))).involution.is_trivial())
    section.check("PGL2 adjoint involution is trivial",
                  involution(adjoint_weights(catalog("PGL2"))).involution.is_trivial())


def check_gauge_independence(section: Section, rng: random.Random) -> None:
    for k, m in enumerate(_random_multisets(rng, 50)):
        report = gauge_flip_test(m, 100, rng.randrange(1 << 30))
        section.check(f"gauge flips on multiset {k}", report.invariant, "; ".join(report.failures))


def check_cohomology(section: Section, bounds: Bounds, rng: Optional[random.Random] = None) -> None:
    rng = rng or random.Random(0)
    for name, expected in H2_TABLE.items():
        module = GModule.trivial(small_group(name), [2])
        order = h2(module, bounds).order()
        section.check(f"|H2({name}, Z/2)|", order == expected, f"got {order}, expected {expected}")
        brute = h2_order_by_enumeration(module)
        section.check(f"|H2({name}, Z/2)| by enumeration", brute == expected, f"got {brute}")
    raised = 0
    for name in SMALL_GROUPS:
        group = small_group(name)
        for moduli in ROUND_TRIP_MODULI:
            module = GModule.trivial(group, list(moduli))
            sized = round_trip_bounds(bounds, module)
            if sized != bounds:
                raised += 1
            coefficients = " x ".join(f"Z/{d}" for d in moduli)
            check_round_trips(section, f"{name} with A = {coefficients}", module, sized, rng)
    if raised:
        logging.info(f"Round trips raised the H2 size bound for {raised} modules")
    for n in (3, 4):
        inversion = IntMatrix.from_rows([[-1]])
        module = GModule.from_coordinates(small_group("C2"), [n], [IntMatrix.identity(1), inversion],
                                          bounds)
        check_round_trips(section, f"C2 acting on Z/{n} by inversion", module, bounds, rng)


def round_trip_bounds(bounds: Bounds, module: GModule) -> Bounds:
    """``bounds`` with room for H2 of ``module`` and for its extensions."""
    size = module.group.order * module.rank
    extension = module.group.order * (module.order() or 0)
    return replace(bounds, h2_size=max(bounds.h2_size, size),
                   extension_order=max(bounds.extension_order, extension))


def check_round_trips(section: Section, label: str, module: GModule, bounds: Bounds,
                       rng: random.Random) -> None:
    classes = _sample_classes(module, bounds)
    section.guarded(f"cocycle -> extension -> cocycle for {label}",
                    lambda: all(_cocycle_round_trip(z, bounds, rng) for z in classes))
    section.guarded(f"extension -> cocycle -> extension for {label}",
                    lambda: all(_extension_round_trip(z, bounds, rng) for z in classes))


def _sample_classes(module: GModule, bounds: Bounds) -> List[Cocycle2]:
    """Representatives of up to ROUND_TRIP_CLASSES classes of H2(G, A)."""
    result = h2(module, bounds)
    classes = []
    for coordinates in itertools.islice(result.presentation.elements(), ROUND_TRIP_CLASSES):
        z = Cocycle2.zero(module)
        for c, representative in zip(coordinates, result.representatives):
            for _ in range(c):
                z = z + representative
        classes.append(z)
    return classes


def _cocycle_round_trip(z: Cocycle2, bounds: Bounds, rng: random.Random) -> bool:
    ext = extension_from_cocycle(z, bounds)
    return classes_equal(cocycle_from_extension(ext, random_section(ext, rng)), z).equal


def _extension_round_trip(z: Cocycle2, bounds: Bounds, rng: random.Random) -> bool:
    ext = extension_from_cocycle(z, bounds)
    back = cocycle_from_extension(ext, random_section(ext, rng))
    return are_equivalent(ext, extension_from_cocycle(back, bounds))


def check_key_lemma(section: Section, seed: int, max_order: int, bounds: Bounds) -> None:
    if max_order < 2:
        raise SizeBoundExceeded("|G x| W| of the smallest instance", 2, max_order)
    summary = run_key_lemma_trials(seed, 50, max_order, bounds)
    section.check("key lemma on 50 random instances", summary.ok, "; ".join(summary.failures))
    crossed = run_crossed_hom_trials(seed, 20, max_order, bounds)
    section.check("crossed homomorphism lemma on 20 random instances", crossed.ok,
                  "; ".join(crossed.failures))


def _reps_by_group(bounds: Bounds) -> Dict[str, list]:
    grouped: Dict[str, list] = {}
    for name in REPRESENTATION_NAMES:
        group_name = name.split(":")[0]
        if group_name in WHITNEY_GROUPS:
            grouped.setdefault(group_name, []).append(representation(name, bounds))
    return grouped


def check_stiefel_whitney(section: Section, rng: random.Random, bounds: Bounds) -> None:
    section.check("sw2 of the sign representation of C2 is trivial",
                  not sw2(representation("C2:sign", bounds)).nontrivial)
    rotation = representation("C4:rotation", bounds)
    section.check("sw2 of the C4 rotation is nontrivial", sw2(rotation).nontrivial)
    section.check("pin extension of the C4 rotation is C8",
                  identify_group(pin_extension(rotation, bounds).total) == "C8")
    diagonal = representation("C2xC2:diagonal", bounds)
    section.check("sw2 of the diagonal C2xC2 in SO3 is nontrivial", sw2(diagonal).nontrivial)
    section.check("pin extension of the diagonal C2xC2 is Q8",
                  identify_group(pin_extension(diagonal, bounds).total) == "Q8")
    for n in ROTATION_ORDERS:
        for m in range(n):
            rep = rotation_rep(n, m, bounds)
            section.check(f"sw2 of {rep.name} matches the weight criterion",
                          sw2(rep).nontrivial == (not lifts_to_spin(rotation_weights(m))))

    grouped = _reps_by_group(bounds)
    names = sorted(grouped)
    pairs = 0
    while pairs < 25:
        reps = grouped[rng.choice(names)]
        first, second = rng.choice(reps), rng.choice(reps)
        if first.dim + second.dim > WHITNEY_MAX_DIM:
            continue
        pairs += 1
        label = f"{first.name} + {second.name}"
        section.guarded(f"Whitney formula for {label}",
                        lambda: whitney_check(first, second, rng, bounds).holds)
        section.guarded(f"decomposition independence for {label}",
                        lambda: decomposition_independent(direct_sum(first, second, bounds), rng))


def check_multiplicity_weighting(section: Section) -> None:
    m = tautological_weights(catalog("SO3"))
    doubled = double(m)
    section.check("SO3 tautological and its double share the weight set",
                  m.weight_set == doubled.weight_set)
    section.check("SO3 tautological does not lift", not lifts_to_spin(m))
    section.check("its double lifts", lifts_to_spin(doubled))
    blind = (multiplicity_blind_lifts(m), multiplicity_blind_lifts(doubled))
    section.check("the multiplicity-blind test cannot separate them", blind[0] == blind[1])
    section.check("the multiplicity-blind test is wrong on one of them",
                  blind != (lifts_to_spin(m), lifts_to_spin(doubled)))


def run_selftest(seed: int = 0, bounds: Bounds = DEFAULT_BOUNDS, max_order: int = 32) -> Dict[str, Any]:
    """
    Run every section and collect the results.

    Raises:
        SizeBoundExceeded: if a configured bound is too small for the suite
    """
    rng = random.Random(seed)
    sections: List[Section] = []

    def run(name: str, fn: Callable[[Section], None]) -> None:
        section = Section(name)
        logging.info(f"Selftest section: {name}")
        fn(section)
        sections.append(section)

    run("fundamental groups", check_fundamental_groups)
    run("spin lifting", lambda s: check_spin_lifting(s, rng))
    run("canonical involution", check_canonical_involution)
    run("gauge independence", lambda s: check_gauge_independence(s, rng))
    run("cohomology", lambda s: check_cohomology(s, bounds, rng))
    run("key lemma", lambda s: check_key_lemma(s, seed, max_order, bounds))
    run("stiefel-whitney", lambda s: check_stiefel_whitney(s, rng, bounds))
    run("multiplicity weighting", check_multiplicity_weighting)

    passed = sum(s.passed for s in sections)
    failed = sum(s.failed for s in sections)
    logging.info(f"Selftest: {passed} checks passed, {failed} failed")
    return {
        "passed": passed,
        "failed": failed,
        "sections": [s.to_json() for s in sections],
    }
