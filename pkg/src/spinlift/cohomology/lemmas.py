"""
Morphisms of extensions, the semidirect-product pullback identity and the
coboundary of a crossed homomorphism, each checked on finite models.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from spinlift.cohomology.cocycles import (
    ClassComparison,
    Cocycle2,
    classes_equal,
    pullback,
    pushout,
)
from spinlift.cohomology.extensions import (
    GroupExtension,
    check_section,
    cocycle_from_extension,
)
from spinlift.cohomology.groups import (
    FiniteGroup,
    Hom,
    SemidirectProduct,
    check_action,
    compose,
    is_homomorphism,
    semidirect,
)
from spinlift.cohomology.modules import ModuleMap, pullback_module
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import (
    InvalidAction,
    NotAHomomorphism,
    NotCrossedHom,
    NotEquivariant,
    PreconditionFailed,
)
from spinlift.lattice import IntMatrix


def morphism_extends(c: Cocycle2, c_prime: Cocycle2, alpha: ModuleMap,
                     gamma: Sequence[int]) -> ClassComparison:
    """
    Whether (alpha, gamma) extends to a morphism of the extensions of c and c'.

    That happens exactly when alpha_*(c) and gamma^*(c') are cohomologous in
    H^2(G, gamma^* A').

    Raises:
        NotEquivariant: if alpha(g a) != gamma(g) alpha(a) for some g
        NotAHomomorphism: if gamma is not a homomorphism G -> G'
    """
    group = c.group
    target = pullback_module(c_prime.module, group, gamma)
    alpha.check_equivariant(gamma)
    retargeted = ModuleMap(c.module, target, alpha.matrix)
    return classes_equal(pushout(c, retargeted), pullback(c_prime, gamma, group))


@dataclass(frozen=True, eq=False)
class KeyLemmaInstance:
    """
    The data of the semidirect-product pullback identity.

    Attributes:
        ext: 1 -> A -> E -> G -> 1
        ext_prime: 1 -> A' -> E' -> G' -> 1
        acting: The group W
        action_total: W -> Aut(E), one automorphism per element of W
        action_quotient: W -> Aut(G)
        alpha: A -> A'
        epsilon: E -> E' covering alpha and gamma
        gamma: G -> G'
        f: W -> G'
    """

    ext: GroupExtension
    ext_prime: GroupExtension
    acting: FiniteGroup
    action_total: Tuple[Tuple[int, ...], ...]
    action_quotient: Tuple[Tuple[int, ...], ...]
    alpha: ModuleMap
    epsilon: Hom
    gamma: Hom
    f: Hom
    label: str = ""

    def describe(self) -> str:
        return (self.label or
                f"E of order {self.ext.total.order} over G of order {self.ext.quotient.order}, "
                f"W of order {self.acting.order}")


@dataclass
class KeyLemmaReport:
    """
    Outcome of key_lemma_check.

    ``holds`` is the verdict on (gamma f)^* c' = alpha_* c + p^* f^* c';
    ``checks`` records the auxiliary identities verified along the way.
    """

    holds: bool
    witness: Optional[Tuple[Tuple[int, ...], ...]]
    checks: Dict[str, bool] = field(default_factory=dict)
    semidirect_order: int = 0

    @property
    def passed(self) -> bool:
        return self.holds and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "passed": self.passed,
            "checks": dict(self.checks),
            "semidirect_order": self.semidirect_order,
            "witness": None if self.witness is None else [list(x) for x in self.witness],
        }


def _require(condition: bool, name: str, detail: str = "") -> None:
    if not condition:
        raise PreconditionFailed(name, detail)


def _semidirect_products(instance: KeyLemmaInstance, bounds: Bounds
                         ) -> Tuple[SemidirectProduct, SemidirectProduct]:
    ext, w = instance.ext, instance.acting
    try:
        action_total = check_action(ext.total, w, instance.action_total)
        action_quotient = check_action(ext.quotient, w, instance.action_quotient)
    except InvalidAction as e:
        raise PreconditionFailed("W acts by automorphisms", str(e))
    for v in w.elements():
        for e in ext.total.elements():
            _require(ext.project[action_total[v][e]] == action_quotient[v][ext.project[e]],
                     "E -> G is W-equivariant", f"fails for w={v}, e={e}")
    # E x| W is the total group of an extension and falls under the extension bound.
    return (semidirect(ext.quotient, w, action_quotient, bounds),
            semidirect(ext.total, w, action_total,
                       replace(bounds, group_order=bounds.extension_order)))


def semidirect_extension(ext: GroupExtension, gw: SemidirectProduct, ew: SemidirectProduct,
                         bounds: Bounds = DEFAULT_BOUNDS) -> GroupExtension:
    """1 -> A -> E x| W -> G x| W -> 1, with A acted on by conjugation in E x| W."""
    module = ext.module
    basis = [ew.include[ext.inject[module.unit(k)]] for k in range(module.rank)]
    project = tuple(
        gw.element(ext.project[e], v) for e, v in (ew.pair(x) for x in ew.group.elements())
    )
    return GroupExtension.build(ew.group, gw.group, module.invariant_factors, basis, project, bounds)


def semidirect_section(ext: GroupExtension, gw: SemidirectProduct, ew: SemidirectProduct,
                       section: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """(g, w) -> (s(g), w)."""
    section = ext.section() if section is None else check_section(ext, section)
    return tuple(ew.element(section[g], v) for g, v in (gw.pair(x) for x in gw.group.elements()))


def _check_morphism(instance: KeyLemmaInstance) -> None:
    ext, ext_prime = instance.ext, instance.ext_prime
    _require(is_homomorphism(ext.total, ext_prime.total, instance.epsilon),
             "epsilon is a homomorphism")
    _require(is_homomorphism(ext.quotient, ext_prime.quotient, instance.gamma),
             "gamma is a homomorphism")
    _require(is_homomorphism(instance.acting, ext_prime.quotient, instance.f),
             "f is a homomorphism")
    alpha = instance.alpha
    _require(alpha.source.same_structure(ext.module) and
             alpha.target.invariant_factors == ext_prime.module.invariant_factors,
             "alpha maps A to A'")
    for a, e in ext.inject.items():
        _require(instance.epsilon[e] == ext_prime.inject[alpha.apply(a)],
                 "epsilon restricts to alpha", f"fails at a={list(a)}")
    for e in ext.total.elements():
        _require(ext_prime.project[instance.epsilon[e]] == instance.gamma[ext.project[e]],
                 "epsilon covers gamma", f"fails at e={e}")
    module_prime = ext_prime.module
    identity = module_prime.reduce_matrix(IntMatrix.identity(module_prime.rank))
    for g in ext.quotient.elements():
        _require(module_prime.reduce_matrix(module_prime.action[instance.gamma[g]]) == identity,
                 "gamma(G) acts trivially on A'", f"fails at g={g}")
    # Conjugation by a lift of f(w) does not depend on the lift once gamma(G) acts trivially.
    total_prime = ext_prime.total
    lifts = ext_prime.section()
    for v in instance.acting.elements():
        t = lifts[instance.f[v]]
        for e in ext.total.elements():
            _require(instance.epsilon[instance.action_total[v][e]] ==
                     total_prime.conjugate(t, instance.epsilon[e]),
                     "epsilon intertwines the W-action with conjugation by lifts of f",
                     f"fails for w={v}, e={e}")


def key_lemma_check(instance: KeyLemmaInstance, rng: Optional[random.Random] = None,
                    bounds: Bounds = DEFAULT_BOUNDS) -> KeyLemmaReport:
    """
    Verify (gamma f)^*(c') = alpha_*(c) + p^* f^*(c') in H^2(G x| W, A').

    c is the class of E x| W over G x| W and c' the class of E' over G';
    gamma f is (g, w) -> gamma(g) f(w) and p is the projection G x| W -> W.
    With ``rng`` both extensions use random sections instead of the canonical
    ones.

    Raises:
        PreconditionFailed: naming the first violated hypothesis
    """
    ext, ext_prime, w = instance.ext, instance.ext_prime, instance.acting
    gw, ew = _semidirect_products(instance, bounds)
    _check_morphism(instance)
    group_prime = ext_prime.quotient
    gamma_f = tuple(
        group_prime.mul(instance.gamma[g], instance.f[v])
        for g, v in (gw.pair(x) for x in gw.group.elements())
    )
    _require(is_homomorphism(gw.group, group_prime, gamma_f), "gamma f is a homomorphism",
             "gamma(w g) must equal f(w) gamma(g) f(w)^-1")

    top = semidirect_extension(ext, gw, ew, bounds)
    section = random_section(ext, rng) if rng else None
    section_prime = random_section(ext_prime, rng) if rng else None
    c = cocycle_from_extension(top, semidirect_section(ext, gw, ew, section))
    c_prime = cocycle_from_extension(ext_prime, section_prime)

    target = pullback_module(ext_prime.module, gw.group, gamma_f)
    alpha = ModuleMap(top.module, target, instance.alpha.matrix)
    try:
        alpha.check_equivariant()
    except NotEquivariant as e:
        raise PreconditionFailed("alpha is G x| W-equivariant", str(e))

    lhs = pullback(c_prime, gamma_f, gw.group)
    pushed = pushout(c, alpha)
    f_star = pullback(c_prime, instance.f, w)
    inflated = pullback(f_star, gw.project, gw.group).with_module(target)
    rhs = pushed + inflated
    comparison = classes_equal(lhs, rhs)

    checks = {
        "projection_identity": pullback(pullback(f_star, gw.project, gw.group),
                                        gw.section, w).values == f_star.values,
        "restriction_to_w": classes_equal(pullback(lhs, gw.section, w), f_star).equal,
        "restriction_to_g": classes_equal(pullback(lhs, gw.include, ext.quotient),
                                          pullback(pushed, gw.include, ext.quotient)).equal,
    }
    logging.debug(f"Key lemma on {instance.describe()}: holds={comparison.equal} checks={checks}")
    return KeyLemmaReport(comparison.equal, comparison.witness, checks, gw.group.order)


def random_section(ext: GroupExtension, rng: random.Random) -> Tuple[int, ...]:
    fibers = ext.fibers()
    section = [rng.choice(fiber) for fiber in fibers]
    section[ext.quotient.identity] = ext.total.identity
    return tuple(section)


def is_crossed_hom(group: FiniteGroup, acting: FiniteGroup, action: Sequence[Sequence[int]],
                   phi: Sequence[int]) -> bool:
    """phi(w w') == phi(w) * w(phi(w')) for all w, w'."""
    if len(phi) != acting.order:
        return False
    return all(
        phi[acting.mul(v, u)] == group.mul(phi[v], action[v][phi[u]])
        for v in acting.elements() for u in acting.elements()
    )


def crossed_homs_cyclic(group: FiniteGroup, acting: FiniteGroup,
                        action: Sequence[Sequence[int]]) -> List[Hom]:
    """
    Every crossed homomorphism from a cyclic W (generator 1) to G.

    phi is determined by x = phi(1) through phi(k) = x * 1(x) * ... * (k-1)(x);
    it is a crossed homomorphism exactly when that product closes up.
    """
    found = []
    k = acting.order
    for x in group.elements():
        values = [group.identity]
        for j in range(1, k):
            values.append(group.mul(values[-1], action[acting.power(1, j - 1)][x]))
        if is_crossed_hom(group, acting, action, values):
            found.append(tuple(values))
    return found


@dataclass
class CrossedHomReport:
    """The coboundary of phi against (phi, id)^* c, with the cohomology witness."""

    equal: bool
    witness: Optional[Tuple[Tuple[int, ...], ...]]
    coboundary: Cocycle2

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "witness": None if self.witness is None else [list(x) for x in self.witness],
            "coboundary": self.coboundary.to_json(),
        }


def crossed_hom_coboundary(ext: GroupExtension, acting: FiniteGroup,
                           action_total: Sequence[Sequence[int]],
                           action_quotient: Sequence[Sequence[int]], phi: Sequence[int],
                           rng: Optional[random.Random] = None,
                           bounds: Bounds = DEFAULT_BOUNDS) -> CrossedHomReport:
    """
    Compare (w, w') -> phi~(w) w(phi~(w')) phi~(ww')^-1 with (phi, id)^* c.

    phi~ = s o phi for a section s of E -> G (random when ``rng`` is given)
    and c is the class of E x| W over G x| W.

    Raises:
        NotCrossedHom: if phi(ww') != phi(w) w(phi(w'))
        PreconditionFailed: if W does not act compatibly on E and G
    """
    group, total = ext.quotient, ext.total
    phi = tuple(int(x) for x in phi)
    if not is_crossed_hom(group, acting, action_quotient, phi):
        raise NotCrossedHom("phi(w w') must equal phi(w) * w(phi(w'))")
    instance = KeyLemmaInstance(
        ext, ext, acting, tuple(map(tuple, action_total)), tuple(map(tuple, action_quotient)),
        ModuleMap.identity(ext.module), tuple(total.elements()), tuple(group.elements()),
        (group.identity,) * acting.order,
    )
    gw, ew = _semidirect_products(instance, bounds)
    top = semidirect_extension(ext, gw, ew, bounds)
    graph = tuple(gw.element(phi[v], v) for v in acting.elements())
    try:
        pulled = pullback(cocycle_from_extension(top), graph, acting)
    except NotAHomomorphism as e:
        raise NotCrossedHom(str(e))

    section = random_section(ext, rng) if rng else ext.section()
    lifted = compose(section, phi)
    coordinates = ext.coordinates
    values = []
    for v in acting.elements():
        row = []
        for u in acting.elements():
            e = total.mul(lifted[v], instance.action_total[v][lifted[u]])
            e = total.mul(e, total.inv(lifted[acting.mul(v, u)]))
            row.append(coordinates[e])
        values.append(tuple(row))
    delta = Cocycle2(pulled.module, tuple(values))
    comparison = classes_equal(delta, pulled)
    return CrossedHomReport(comparison.equal, comparison.witness, delta)
