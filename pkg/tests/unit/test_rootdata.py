"""
Unit tests for root data, the catalog and weight multisets.
"""

import random

import pytest

from spinlift.config import Bounds
from spinlift.errors import LeviNotGaloisStable, OrderBoundExceeded, UnknownName
from spinlift.lattice import IntMatrix
from spinlift.rootdata import (
    CATALOG_NAMES,
    CHARACTER,
    COCHARACTER,
    RootDatum,
    WeightMultiset,
    adjoint_weights,
    catalog,
    double,
    dualize,
    fundamental_group,
    orthogonal_sum,
    positive_coroot_sum,
    random_multiset,
    relative_adjoint_weights,
    split_catalog,
    tautological_weights,
    validate,
    weyl_group,
)

PI1 = {
    "GL1": (0,),
    "GL3": (0,),
    "SL2": (),
    "SL3": (),
    "PGL2": (2,),
    "PGL3": (3,),
    "PGL4": (4,),
    "Sp4": (),
    "SO2": (0,),
    "SO3": (2,),
    "SO4": (2,),
    "SO5": (2,),
    "SO8": (2,),
    "Spin5": (),
    "Spin7": (),
    "G2": (),
}

WEYL_ORDERS = {"SL2": 2, "SL3": 6, "SL4": 24, "Sp4": 8, "SO5": 8, "G2": 12, "SO8": 192}


@pytest.fixture
def pgl2():
    return catalog("PGL2")


class TestCatalog:
    """Test cases for catalog lookups."""

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_every_entry_validates(self, name):
        """Test that every catalog datum satisfies the axioms."""
        report = validate(catalog(name))
        assert report.valid, report.failures

    @pytest.mark.parametrize("name", ["GL0", "SL1", "Sp3", "Spin2", "E8", "G3", "U4", "pgl2"])
    def test_unknown_names(self, name):
        """Test that unsupported names raise UnknownName."""
        with pytest.raises(UnknownName):
            catalog(name)

    def test_split_catalog_excludes_galois(self):
        """Test that the split catalog drops the quasi-split unitary group."""
        names = {d.name for d in split_catalog()}
        assert "U3" not in names
        assert "SL3" in names

    def test_root_counts(self):
        """Test the number of roots of a few types."""
        assert len(catalog("SL3").roots) == 6
        assert len(catalog("G2").roots) == 12
        assert len(catalog("SO8").roots) == 24
        assert len(catalog("Sp6").roots) == 18


class TestFundamentalGroup:
    """Test cases for pi_1 = cocharacters modulo coroots."""

    @pytest.mark.parametrize("name,expected", sorted(PI1.items()))
    def test_known_values(self, name, expected):
        """Test pi_1 of catalog groups."""
        assert fundamental_group(catalog(name)).invariant_factors == expected

    def test_pgl2_is_order_two(self, pgl2):
        """Test the projective line group has pi_1 of order 2."""
        pi1 = fundamental_group(pgl2)
        assert pi1.order() == 2
        assert pi1.free_rank == 0

    def test_gl_has_free_part(self):
        """Test that GL_n has infinite pi_1."""
        pi1 = fundamental_group(catalog("GL2"))
        assert pi1.free_rank == 1
        assert pi1.order() is None


class TestValidation:
    """Test cases for root datum validation."""

    def test_missing_negative_root(self):
        """Test that a root without its negative is reported."""
        datum = RootDatum.build(1, [(2,)], [(1,)], [0])
        report = validate(datum)
        assert not report.valid
        assert any("negative" in failure for failure in report.failures)

    def test_bad_pairing(self):
        """Test that a root pairing to 1 with its coroot is reported."""
        datum = RootDatum.build(1, [(1,), (-1,)], [(1,), (-1,)], [0])
        report = validate(datum)
        assert not report.valid
        assert any("expected 2" in failure for failure in report.failures)

    def test_length_mismatch_stops_early(self):
        """Test that mismatched root and coroot counts are reported alone."""
        datum = RootDatum.build(1, [(2,), (-2,)], [(1,)], [0])
        report = validate(datum)
        assert report.failures == ("2 roots but 1 coroots",)

    def test_galois_generator_must_preserve_base(self):
        """Test that negation is rejected as a Galois generator."""
        sl3 = catalog("SL3")
        negation = IntMatrix.identity(2).scaled(-1)
        datum = RootDatum.build(sl3.rank, sl3.roots, sl3.coroots, sl3.simple_indices,
                                [negation], name="bad")
        report = validate(datum)
        assert any("base" in failure for failure in report.failures)

    def test_to_json(self):
        """Test the serialized report."""
        assert validate(catalog("SL2")).to_json() == {"valid": True, "failures": []}


class TestDuality:
    """Test cases for dual data and Weyl groups."""

    def test_dual_swaps_forms(self):
        """Test that the dual of SL2 has the fundamental group of PGL2."""
        dual = dualize(catalog("SL2"))
        assert fundamental_group(dual).invariant_factors == (2,)
        assert dual.name == "SL2^"

    def test_double_dual(self):
        """Test that dualizing twice is the identity."""
        for name in ("G2", "Sp4", "U3"):
            d = catalog(name)
            assert dualize(dualize(d)) == d
            assert dualize(dualize(d)).name == name

    @pytest.mark.parametrize("name,order", sorted(WEYL_ORDERS.items()))
    def test_weyl_orders(self, name, order):
        """Test Weyl group orders."""
        assert len(weyl_group(catalog(name))) == order

    def test_weyl_bound(self):
        """Test that enumeration stops at the configured bound."""
        with pytest.raises(OrderBoundExceeded):
            weyl_group(catalog("SL3"), Bounds(weyl_order=5))

    def test_positive_coroot_sum(self, pgl2):
        """Test the sum of positive coroots."""
        assert positive_coroot_sum(catalog("SL2")) == (1,)
        assert positive_coroot_sum(pgl2) == (2,)


class TestWeightMultiset:
    """Test cases for weight multisets and their presets."""

    def test_entries_are_merged_and_sorted(self, pgl2):
        """Test that repeated weights merge their multiplicities."""
        m = WeightMultiset.from_pairs(pgl2, [((1,), 1), ((-1,), 1), ((1,), 2)])
        assert m.entries == (((-1,), 1), ((1,), 3))
        assert m.dimension == 4

    def test_nonpositive_multiplicity_rejected(self, pgl2):
        """Test that zero multiplicities are rejected at construction."""
        with pytest.raises(ValueError):
            WeightMultiset(pgl2, (((1,), 0),))

    def test_wrong_length_rejected(self, pgl2):
        """Test that weights of the wrong rank are rejected."""
        with pytest.raises(ValueError):
            WeightMultiset.from_pairs(pgl2, [((1, 0), 1)])

    def test_negation_stability(self, pgl2):
        """Test that an unbalanced multiset fails validation."""
        m = WeightMultiset.from_pairs(pgl2, [((1,), 2), ((-1,), 1)])
        report = m.validate()
        assert not report.valid

    def test_tautological(self):
        """Test the standard representation of SO5."""
        m = tautological_weights(catalog("SO5"))
        assert m.lattice == CHARACTER
        assert m.dimension == 5
        assert m.zero_multiplicity == 1
        assert m.validate(weyl=True).valid

    def test_tautological_needs_orthogonal_group(self):
        """Test that only SO catalog data have a tautological representation."""
        with pytest.raises(UnknownName):
            tautological_weights(catalog("SL3"))

    def test_adjoint(self):
        """Test the adjoint weights of SL3."""
        m = adjoint_weights(catalog("SL3"))
        assert m.lattice == COCHARACTER
        assert m.dimension == 8
        assert m.zero_multiplicity == 2
        assert m.validate(weyl=True).valid

    def test_relative_adjoint_split(self):
        """Test that the zero multiplicity grows with the Levi for a split group."""
        d = catalog("SL3")
        assert relative_adjoint_weights(d, []).zero_multiplicity == 0
        assert relative_adjoint_weights(d, [0, 1]).zero_multiplicity == 2

    def test_relative_adjoint_unitary(self):
        """Test the quasi-split unitary group with the Galois-stable Levi subsets."""
        u3 = catalog("U3")
        assert relative_adjoint_weights(u3, []).zero_multiplicity == 2
        assert relative_adjoint_weights(u3, [0, 1]).zero_multiplicity == 3

    def test_levi_must_be_galois_stable(self):
        """Test that a Levi subset moved by Galois is rejected."""
        with pytest.raises(LeviNotGaloisStable):
            relative_adjoint_weights(catalog("U3"), [0])

    def test_orthogonal_sum_and_double(self, pgl2):
        """Test that sums add multiplicities."""
        m = WeightMultiset.from_pairs(pgl2, [((1,), 1), ((-1,), 1)])
        assert orthogonal_sum(m, m) == double(m)
        assert (m + m).multiplicity((1,)) == 2

    def test_sum_of_different_lattices_rejected(self, pgl2):
        """Test that character and cocharacter multisets do not add."""
        a = WeightMultiset.from_pairs(pgl2, [((1,), 1), ((-1,), 1)], CHARACTER)
        b = WeightMultiset.from_pairs(pgl2, [((1,), 1), ((-1,), 1)], COCHARACTER)
        with pytest.raises(ValueError):
            orthogonal_sum(a, b)

    def test_random_multisets_are_stable(self):
        """Test that random multisets pass negation and Galois validation."""
        rng = random.Random(3)
        for name in ("SL3", "Sp4", "U3", "GL2"):
            d = catalog(name)
            for lattice in (CHARACTER, COCHARACTER):
                for _ in range(10):
                    m = random_multiset(d, rng, lattice)
                    assert m.validate().valid, m.describe()
