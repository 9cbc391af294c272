"""
Unit tests for morphisms of extensions, the semidirect-product pullback
identity and crossed homomorphisms.
"""

import dataclasses
import random

import pytest

from spinlift.cohomology import (
    Cocycle2,
    GModule,
    ModuleMap,
    crossed_hom_coboundary,
    cyclic,
    key_lemma_check,
    morphism_extends,
    quaternion,
)
from spinlift.cohomology.groups import automorphisms, cyclic_action
from spinlift.cohomology.instances import (
    central_extension,
    coinvariant_instance,
    induced_action,
    inner_instance,
    inversion_extension,
    inversion_instance,
    inversion_kernel_groups,
    inversion_kernels,
    pushout_instance,
    random_key_lemma_instance,
    run_crossed_hom_trials,
    run_key_lemma_trials,
    semidirect_instance,
    zero_alpha_instance,
)
from spinlift.cohomology.lemmas import crossed_homs_cyclic, is_crossed_hom
from spinlift.errors import (
    NotAHomomorphism,
    NotCrossedHom,
    NotEquivariant,
    PreconditionFailed,
)
from spinlift.lattice import IntMatrix


@pytest.fixture
def c4_extension():
    """C4 over C2 with kernel <2>."""
    return central_extension(cyclic(4), 2)


@pytest.fixture
def inversion_on_c4(c4_extension):
    """C2 acting on C4 by inversion, with E' = C4 x| C2."""
    inversion = (0, 3, 2, 1)
    return semidirect_instance(c4_extension, 2, inversion)


@pytest.fixture
def inversion_data():
    ext, acting, inversion = inversion_instance()
    action_total = cyclic_action(ext.total, acting, inversion)
    action_quotient = tuple(induced_action(ext, a) for a in action_total)
    return ext, acting, action_total, action_quotient


class TestMorphismExtends:
    """Test cases for extending (alpha, gamma) to a morphism of extensions."""

    def test_identity_extends(self):
        """Test that the identity pair extends between equal classes."""
        module = GModule.trivial(cyclic(2), [2])
        z = Cocycle2.from_table(module, [[(0,), (0,)], [(0,), (1,)]])
        assert morphism_extends(z, z, ModuleMap.identity(module), (0, 1)).equal

    def test_nontrivial_to_split_does_not_extend(self):
        """Test that C4 -> C2xC2 over the identity does not exist."""
        module = GModule.trivial(cyclic(2), [2])
        z = Cocycle2.from_table(module, [[(0,), (0,)], [(0,), (1,)]])
        comparison = morphism_extends(z, Cocycle2.zero(module), ModuleMap.identity(module), (0, 1))
        assert not comparison.equal

    def test_zero_alpha_with_inflation(self):
        """Test that alpha = 0 extends along C4 -> C2 since inflation kills the class."""
        z2 = GModule.trivial(cyclic(2), [2])
        c_prime = Cocycle2.from_table(z2, [[(0,), (0,)], [(0,), (1,)]])
        source = GModule.trivial(cyclic(4), [2])
        c = Cocycle2.zero(source)
        alpha = ModuleMap(source, z2, IntMatrix.zeros(1, 1))
        assert morphism_extends(c, c_prime, alpha, (0, 1, 0, 1)).equal

    def test_gamma_must_be_homomorphism(self):
        """Test that a non-homomorphism gamma is rejected."""
        module = GModule.trivial(cyclic(2), [2])
        z = Cocycle2.zero(module)
        with pytest.raises(NotAHomomorphism):
            morphism_extends(z, z, ModuleMap.identity(module), (1, 0))

    def test_alpha_must_be_equivariant(self):
        """Test that alpha must intertwine the actions through gamma."""
        c2 = cyclic(2)
        inversion = GModule.from_coordinates(
            c2, [4], [IntMatrix.identity(1), IntMatrix.from_rows([[-1]])]
        )
        trivial = GModule.trivial(c2, [4])
        with pytest.raises(NotEquivariant):
            morphism_extends(Cocycle2.zero(inversion), Cocycle2.zero(trivial),
                             ModuleMap(inversion, trivial, IntMatrix.identity(1)), (0, 1))


class TestKeyLemma:
    """Test cases for the semidirect-product pullback identity."""

    def test_semidirect_instance(self, inversion_on_c4):
        """Test the identity for C2 acting on C4 by inversion."""
        report = key_lemma_check(inversion_on_c4)
        assert report.holds
        assert report.passed
        assert report.semidirect_order == 4
        assert all(report.checks.values())

    def test_random_sections(self, inversion_on_c4):
        """Test that random sections give the same verdict."""
        rng = random.Random(2)
        for _ in range(5):
            assert key_lemma_check(inversion_on_c4, rng).passed

    def test_inner_instances(self):
        """Test W acting on Q8 by conjugation."""
        q8 = quaternion()
        z = next(a for a in q8.center() if a != q8.identity)
        ext = central_extension(q8, z)
        checked = 0
        for conjugator in q8.elements():
            instance = inner_instance(ext, 2, conjugator, 2, 1)
            if instance is None:
                continue
            assert key_lemma_check(instance).passed, instance.describe()
            checked += 1
        assert checked > 0

    def test_every_automorphism_of_c8(self):
        """Test every order-dividing-2 automorphism of C8 fixing its involution."""
        c8 = cyclic(8)
        ext = central_extension(c8, 4)
        for automorphism in automorphisms(c8):
            square = tuple(automorphism[automorphism[e]] for e in c8.elements())
            if square != tuple(c8.elements()):
                continue
            assert key_lemma_check(semidirect_instance(ext, 2, automorphism)).passed

    def test_precondition_on_f(self, inversion_on_c4):
        """Test that f must be a homomorphism."""
        broken = dataclasses.replace(inversion_on_c4, f=(1, 1))
        with pytest.raises(PreconditionFailed) as info:
            key_lemma_check(broken)
        assert info.value.condition == "f is a homomorphism"

    def test_precondition_on_epsilon(self, inversion_on_c4):
        """Test that epsilon must restrict to alpha."""
        zero = ModuleMap(inversion_on_c4.alpha.source, inversion_on_c4.alpha.target,
                         IntMatrix.zeros(1, 1))
        broken = dataclasses.replace(inversion_on_c4, alpha=zero)
        with pytest.raises(PreconditionFailed) as info:
            key_lemma_check(broken)
        assert info.value.condition == "epsilon restricts to alpha"

    def test_report_json(self, inversion_on_c4):
        """Test the serialized report."""
        report = key_lemma_check(inversion_on_c4).to_json()
        assert report["holds"] is True
        assert report["passed"] is True
        assert set(report["checks"]) == {"projection_identity", "restriction_to_w",
                                         "restriction_to_g"}

    def test_pushout_instance(self, inversion_on_c4):
        """Test the identity with alpha: Z/2 -> Z/4 multiplying by 2."""
        instance = pushout_instance(inversion_on_c4)
        assert list(instance.ext_prime.module.invariant_factors) == [4]
        assert instance.alpha.apply((1,)) == (2,)
        assert key_lemma_check(instance).passed
        assert key_lemma_check(instance, random.Random(5)).passed

    def test_zero_alpha_instance(self, inversion_on_c4):
        """Test the identity when epsilon kills A."""
        instance = zero_alpha_instance(inversion_on_c4)
        assert instance.alpha.apply((1,)) == (0,)
        assert instance.ext_prime.total.order == 2 * inversion_on_c4.ext_prime.quotient.order
        assert key_lemma_check(instance).passed
        assert key_lemma_check(instance, random.Random(6)).passed

    def test_coinvariant_instances(self):
        """Test A = Z/4 with G acting by inversion, mapped onto A/2A."""
        checked = 0
        for total in inversion_kernel_groups():
            for a in inversion_kernels(total):
                ext = inversion_extension(total, a)
                assert not ext.module.is_trivial_action()
                for conjugator in total.elements():
                    instance = coinvariant_instance(ext, 2, conjugator)
                    if instance is None:
                        continue
                    assert key_lemma_check(instance).passed, instance.describe()
                    checked += 1
        assert checked > 0

    def test_inversion_kernels_of_d8(self):
        """Test that D8 has exactly the two rotations of order 4."""
        d8 = inversion_kernel_groups()[0]
        kernels = inversion_kernels(d8)
        assert len(kernels) == 2
        assert len(d8.subgroup_generated(kernels[:1])) == 4

    def test_random_instances_cover_every_family(self):
        """Test that random draws include pushouts, zero maps and inversion actions."""
        rng = random.Random(11)
        labels = [random_key_lemma_instance(rng, 32).describe() for _ in range(60)]
        assert any("pushed out along Z/2 -> Z/4" in label for label in labels)
        assert any("A killed" in label for label in labels)
        assert any("by inversion" in label for label in labels)
        assert any("pushed out" not in label and "killed" not in label and "inversion" not in label
                   for label in labels)

    def test_random_instances_respect_bound(self):
        """Test that random instances stay within max_order."""
        rng = random.Random(4)
        for _ in range(20):
            instance = random_key_lemma_instance(rng, 8)
            assert instance.ext.quotient.order * instance.acting.order <= 8

    def test_random_instances_need_room(self):
        """Test that max_order below 2 is refused."""
        with pytest.raises(ValueError):
            random_key_lemma_instance(random.Random(0), 1)

    def test_seeded_trials(self):
        """Test the seeded run reported by the keylemma command."""
        summary = run_key_lemma_trials(7, 50, 32)
        assert summary.passed == 50
        assert summary.failed == 0
        assert summary.ok

    def test_trials_are_reproducible(self):
        """Test that the same seed draws the same instances."""
        first = run_key_lemma_trials(3, 10, 16)
        second = run_key_lemma_trials(3, 10, 16)
        assert first.instances == second.instances
        assert first.to_json() == second.to_json()


class TestCrossedHom:
    """Test cases for crossed homomorphisms and their coboundaries."""

    def test_enumeration(self, inversion_data):
        """Test that every enumerated map is a crossed homomorphism."""
        ext, acting, _, action_quotient = inversion_data
        phis = crossed_homs_cyclic(ext.quotient, acting, action_quotient)
        assert phis
        for phi in phis:
            assert is_crossed_hom(ext.quotient, acting, action_quotient, phi)

    def test_coboundary_matches_pullback(self, inversion_data):
        """Test the crossed homomorphism identity for C2 acting on C8 by inversion."""
        ext, acting, action_total, action_quotient = inversion_data
        rng = random.Random(6)
        for phi in crossed_homs_cyclic(ext.quotient, acting, action_quotient):
            report = crossed_hom_coboundary(ext, acting, action_total, action_quotient, phi)
            assert report.equal
            report = crossed_hom_coboundary(ext, acting, action_total, action_quotient, phi, rng)
            assert report.equal
            assert report.coboundary.is_cocycle()

    def test_rejects_non_crossed_hom(self, inversion_data):
        """Test that phi(1) must be the identity."""
        ext, acting, action_total, action_quotient = inversion_data
        with pytest.raises(NotCrossedHom):
            crossed_hom_coboundary(ext, acting, action_total, action_quotient, (1, 0))

    def test_seeded_trials(self):
        """Test the seeded crossed homomorphism run."""
        summary = run_crossed_hom_trials(7, 20, 32)
        assert summary.failed == 0
        assert summary.passed == 20
