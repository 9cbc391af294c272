"""
Seeded random instances for the key lemma and crossed-homomorphism checks.

Instances are built from central extensions 1 -> C2 -> E -> E/<z> -> 1 of
small catalog groups and a cyclic W acting on E. Either W acts by inner
automorphisms and E' = E x H for a small cyclic H, or W acts by any
automorphism fixing z and E' = E x| W. Those instances are also rebuilt with
E' pushed out along Z/2 -> Z/4 or replaced by G' x C2 (alpha = 0). A last family
takes A = Z/4 with G acting by inversion and A' = A/2A.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

from spinlift.cohomology.extensions import GroupExtension, pushout_extension
from spinlift.cohomology.groups import (
    FiniteGroup,
    Hom,
    automorphisms,
    compose,
    cyclic,
    cyclic_action,
    direct_product,
    identity_hom,
    inner_automorphism,
    quotient_group,
    semidirect,
    small_group,
)
from spinlift.cohomology.lemmas import (
    KeyLemmaInstance,
    crossed_hom_coboundary,
    crossed_homs_cyclic,
    key_lemma_check,
)
from spinlift.cohomology.modules import GModule, ModuleMap
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import SpinliftError
from spinlift.lattice import IntMatrix

CENTRAL_EXTENSION_GROUPS = ("C4", "Q8", "D8", "C8", "C2xC4", "C2xC2")
INSTANCE_FAMILIES = ("identity", "pushout", "zero", "inversion")


def central_involutions(group: FiniteGroup) -> List[int]:
    return [z for z in group.center() if group.element_order(z) == 2]


def central_extension(total: FiniteGroup, z: int, bounds: Bounds = DEFAULT_BOUNDS) -> GroupExtension:
    """E as an extension of E/<z> by <z> = Z/2."""
    quotient, projection = quotient_group(total, {total.identity, z})
    return GroupExtension.build(total, quotient, [2], [z], projection, bounds)


def induced_action(ext: GroupExtension, automorphism: Sequence[int]) -> Hom:
    """The automorphism of G induced by one of E preserving the kernel."""
    section = ext.section()
    return tuple(ext.project[automorphism[section[g]]] for g in ext.quotient.elements())


def _automorphism_power(automorphism: Hom, k: int, group: FiniteGroup) -> Hom:
    result = identity_hom(group)
    for _ in range(k):
        result = compose(automorphism, result)
    return result


def build_key_lemma_instance(ext: GroupExtension, k: int, automorphism: Sequence[int],
                             ext_prime: GroupExtension, epsilon: Sequence[int], twist: int,
                             label: str = "") -> KeyLemmaInstance:
    """
    The instance with W = C_k acting on E through ``automorphism``.

    gamma is read off from epsilon, f sends the generator of W to ``twist``
    and alpha is the identity on coordinates (A' may be a quotient of A).
    """
    acting = cyclic(k)
    action_total = cyclic_action(ext.total, acting, automorphism)
    action_quotient = tuple(induced_action(ext, a) for a in action_total)
    section = ext.section()
    gamma = tuple(ext_prime.project[epsilon[section[g]]] for g in ext.quotient.elements())
    group_prime = ext_prime.quotient
    f = tuple(group_prime.power(twist, j) for j in acting.elements())
    alpha = ModuleMap(ext.module, ext_prime.module, IntMatrix.identity(ext.module.rank))
    return KeyLemmaInstance(ext, ext_prime, acting, action_total, action_quotient, alpha,
                            tuple(epsilon), gamma, f, label)


def inner_instance(ext: GroupExtension, k: int, conjugator: int, factor: int, h: int,
                   bounds: Bounds = DEFAULT_BOUNDS) -> Optional[KeyLemmaInstance]:
    """
    W = C_k acting on E by conjugation with ``conjugator``, E' = E x C_factor.

    f sends the generator to the image of (conjugator, h); None when that
    element does not have order dividing k in G'.
    """
    total = ext.total
    z = ext.inject[(1,)]
    total_prime = direct_product(total, cyclic(factor))
    epsilon = tuple(e * factor for e in total.elements())
    ext_prime = central_extension(total_prime, epsilon[z], bounds)
    x = ext_prime.project[conjugator * factor + h]
    if ext_prime.quotient.power(x, k) != ext_prime.quotient.identity:
        return None
    automorphism = inner_automorphism(total, conjugator)
    label = (f"{total.name} by C{k} acting through {total.label(conjugator)}, "
             f"E' = {total.name}xC{factor}")
    return build_key_lemma_instance(ext, k, automorphism, ext_prime, epsilon, x, label)


def semidirect_instance(ext: GroupExtension, k: int, automorphism: Sequence[int],
                        bounds: Bounds = DEFAULT_BOUNDS) -> KeyLemmaInstance:
    """W = C_k acting on E by ``automorphism`` and E' = E x| W, with f the inclusion of W."""
    total = ext.total
    z = ext.inject[(1,)]
    acting = cyclic(k)
    product = semidirect(total, acting, cyclic_action(total, acting, automorphism),
                         replace(bounds, group_order=bounds.extension_order))
    ext_prime = central_extension(product.group, product.include[z], bounds)
    twist = ext_prime.project[product.section[1 % k]]
    label = f"{total.name} by C{k} acting by an automorphism, E' = E x| W"
    return build_key_lemma_instance(ext, k, automorphism, ext_prime, product.include, twist, label)


def pushout_instance(instance: KeyLemmaInstance,
                     bounds: Bounds = DEFAULT_BOUNDS) -> KeyLemmaInstance:
    """
    The same instance with E' replaced by its pushout along Z/2 -> Z/4, 1 -> 2.

    alpha becomes multiplication by 2 and epsilon is followed by E' -> alpha'_* E'.
    """
    ext_prime = instance.ext_prime
    target = GModule.trivial(ext_prime.quotient, [4])
    doubling = ModuleMap(ext_prime.module, target, IntMatrix.from_rows([[2]]))
    pushed, morphism = pushout_extension(ext_prime, doubling, bounds)
    alpha = ModuleMap(instance.ext.module, pushed.module, IntMatrix.from_rows([[2]]))
    return replace(instance, ext_prime=pushed, epsilon=compose(morphism, instance.epsilon),
                   alpha=alpha, label=f"{instance.describe()}, pushed out along Z/2 -> Z/4")


def zero_alpha_instance(instance: KeyLemmaInstance) -> KeyLemmaInstance:
    """
    The same instance with E' = G' x C2 split over G' and epsilon = gamma o p.

    epsilon kills A, so alpha is zero.
    """
    group_prime = instance.ext_prime.quotient
    total = direct_product(group_prime, cyclic(2))
    project = tuple(x // 2 for x in total.elements())
    kernel = group_prime.identity * 2 + 1
    ext_prime = GroupExtension.build(total, group_prime, [2], [kernel], project)
    ext = instance.ext
    epsilon = tuple(instance.gamma[ext.project[e]] * 2 for e in ext.total.elements())
    alpha = ModuleMap.zero(ext.module, ext_prime.module)
    return replace(instance, ext_prime=ext_prime, epsilon=epsilon, alpha=alpha,
                   label=f"{instance.describe()}, with A killed in E' = G' x C2")


def inversion_kernels(group: FiniteGroup) -> List[int]:
    """Elements a of order 4 generating a normal subgroup on which G acts by inversion."""
    center = set(group.center())
    found = []
    for a in group.elements():
        if group.element_order(a) != 4 or a in center:
            continue
        kernel = group.subgroup_generated([a])
        if all(group.conjugate(g, a) in kernel for g in group.elements()):
            found.append(a)
    return found


def inversion_extension(total: FiniteGroup, a: int,
                        bounds: Bounds = DEFAULT_BOUNDS) -> GroupExtension:
    """E as an extension of E/<a> by <a> = Z/4, acted on by inversion."""
    quotient, projection = quotient_group(total, total.subgroup_generated([a]))
    return GroupExtension.build(total, quotient, [4], [a], projection, bounds)


def coinvariant_instance(ext: GroupExtension, k: int, conjugator: int,
                         bounds: Bounds = DEFAULT_BOUNDS) -> Optional[KeyLemmaInstance]:
    """
    A = Z/4 acted on by inversion, A' = A/2A and E' = E/2A.

    W = C_k acts on E by conjugation with ``conjugator`` and f sends the
    generator to its image in G'. None when that conjugation does not have
    order dividing k.
    """
    total = ext.total
    automorphism = inner_automorphism(total, conjugator)
    if _automorphism_power(automorphism, k, total) != identity_hom(total):
        return None
    a = ext.inject[(1,)]
    total_prime, epsilon = quotient_group(total, {total.identity, total.mul(a, a)})
    ext_prime = central_extension(total_prime, epsilon[a], bounds)
    x = ext_prime.project[epsilon[conjugator]]
    if ext_prime.quotient.power(x, k) != ext_prime.quotient.identity:
        return None
    label = (f"{total.name or 'E'} over Z/4 by inversion, C{k} acting through "
             f"{total.label(conjugator)}, A' = Z/2")
    return build_key_lemma_instance(ext, k, automorphism, ext_prime, epsilon, x, label)


def inversion_kernel_groups() -> List[FiniteGroup]:
    """D8, Q8 and C4 x| C4 with the generator acting by inversion."""
    c4 = cyclic(4)
    inversion = tuple((-x) % 4 for x in c4.elements())
    product = semidirect(c4, c4, cyclic_action(c4, c4, inversion)).group
    return [small_group("D8"), small_group("Q8"), replace(product, name="C4:C4")]


def _random_central_instance(rng: random.Random, max_order: int,
                             bounds: Bounds) -> Optional[KeyLemmaInstance]:
    name = rng.choice(CENTRAL_EXTENSION_GROUPS)
    total = small_group(name)
    z = rng.choice(central_involutions(total))
    ext = central_extension(total, z, bounds)
    ks = [k for k in (1, 2, 3) if ext.quotient.order * k <= max_order]
    if not ks:
        return None
    k = rng.choice(ks)
    if rng.random() < 0.5:
        factor = rng.choice((1, 2, 3))
        return inner_instance(ext, k, rng.choice(total.elements()), factor,
                              rng.randrange(factor), bounds)
    candidates = [a for a in automorphisms(total)
                  if a[z] == z and _automorphism_power(a, k, total) == identity_hom(total)]
    return semidirect_instance(ext, k, rng.choice(candidates), bounds)


def _random_inversion_instance(rng: random.Random, max_order: int,
                               bounds: Bounds) -> Optional[KeyLemmaInstance]:
    total = rng.choice(inversion_kernel_groups())
    ext = inversion_extension(total, rng.choice(inversion_kernels(total)), bounds)
    ks = [k for k in (1, 2, 3) if ext.quotient.order * k <= max_order]
    if not ks:
        return None
    return coinvariant_instance(ext, rng.choice(ks), rng.choice(total.elements()), bounds)


def random_key_lemma_instance(rng: random.Random, max_order: int = 32,
                              bounds: Bounds = DEFAULT_BOUNDS) -> KeyLemmaInstance:
    """
    An instance with |G x| W| <= max_order from one of INSTANCE_FAMILIES.

    "identity" keeps alpha = 1 on a central Z/2, "pushout" and "zero" rebuild
    E' of such an instance, and "inversion" draws A = Z/4 with G acting by
    inversion.
    """
    if max_order < 2:
        raise ValueError("Instances need max_order >= 2")
    while True:
        family = rng.choice(INSTANCE_FAMILIES)
        if family == "inversion":
            instance = _random_inversion_instance(rng, max_order, bounds)
        else:
            instance = _random_central_instance(rng, max_order, bounds)
        if instance is None:
            continue
        if family == "pushout":
            return pushout_instance(instance, bounds)
        if family == "zero":
            return zero_alpha_instance(instance)
        return instance


@dataclass
class TrialSummary:
    """Counts of passed and failed randomized checks with failure descriptions."""

    seed: int
    trials: int
    passed: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)
    instances: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "failures": list(self.failures),
        }


def run_key_lemma_trials(seed: int, trials: int, max_order: int = 32,
                         bounds: Bounds = DEFAULT_BOUNDS) -> TrialSummary:
    """key_lemma_check on ``trials`` random instances, with random sections."""
    rng = random.Random(seed)
    summary = TrialSummary(seed, trials)
    for trial in range(trials):
        instance = random_key_lemma_instance(rng, max_order, bounds)
        summary.instances.append(instance.describe())
        try:
            report = key_lemma_check(instance, rng, bounds)
        except SpinliftError as e:
            summary.failed += 1
            summary.failures.append(f"trial {trial} ({instance.describe()}): {e}")
            continue
        if report.passed:
            summary.passed += 1
        else:
            summary.failed += 1
            summary.failures.append(f"trial {trial} ({instance.describe()}): {report.checks}")
    logging.info(f"Key lemma trials with seed {seed}: {summary.passed} passed, {summary.failed} failed")
    return summary


def inversion_instance() -> Tuple[GroupExtension, FiniteGroup, Hom]:
    """Z/8 over C4 = Z/8 / <4>, with C2 acting by inversion."""
    total = cyclic(8)
    ext = central_extension(total, 4)
    inversion = tuple((-e) % 8 for e in total.elements())
    return ext, cyclic(2), inversion


def run_crossed_hom_trials(seed: int, trials: int, max_order: int = 32,
                           bounds: Bounds = DEFAULT_BOUNDS) -> TrialSummary:
    """crossed_hom_coboundary for random crossed homomorphisms of random instances."""
    rng = random.Random(seed)
    summary = TrialSummary(seed, trials)
    for trial in range(trials):
        instance = random_key_lemma_instance(rng, max_order, bounds)
        phis = crossed_homs_cyclic(instance.ext.quotient, instance.acting, instance.action_quotient)
        phi = rng.choice(phis)
        label = f"{instance.describe()}, phi = {list(phi)}"
        summary.instances.append(label)
        try:
            report = crossed_hom_coboundary(instance.ext, instance.acting, instance.action_total,
                                            instance.action_quotient, phi, rng, bounds)
        except SpinliftError as e:
            summary.failed += 1
            summary.failures.append(f"trial {trial} ({label}): {e}")
            continue
        if report.equal:
            summary.passed += 1
        else:
            summary.failed += 1
            summary.failures.append(f"trial {trial} ({label}): classes differ")
    logging.info(f"Crossed homomorphism trials with seed {seed}: "
                 f"{summary.passed} passed, {summary.failed} failed")
    return summary
