"""
Unit tests for the JSON document readers.
"""
import json
import tempfile
from fractions import Fraction
from pathlib import Path

import pytest

from spinlift.cohomology import identify_group
from spinlift.config import Bounds
from spinlift.errors import (
    NotACocycle,
    NotOrthogonal,
    ParseError,
    SchemaError,
    SizeBoundExceeded,
    UnknownName,
)
from spinlift.rootdata import CHARACTER, COCHARACTER, fundamental_group
from spinlift.storage import schema

EXAMPLES = Path(__file__).resolve().parents[2] / "docs" / "examples"


@pytest.fixture
def document_file():
    """Write a document to a temporary file and return its path."""
    paths = []

    def write(document):
        with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
            json.dump(document, f)
        paths.append(Path(f.name))
        return paths[-1]

    yield write

    for path in paths:
        if path.exists():
            path.unlink()


class TestDatumSchema:
    """Test cases for root datum documents."""

    def test_catalog_forms(self):
        """Test the bare and object catalog references."""
        assert schema.datum_from_json("PGL2").name == "PGL2"
        assert schema.datum_from_json({"catalog": "Sp4"}).name == "Sp4"

    def test_explicit_datum(self):
        """Test the explicit SL3 example."""
        datum = schema.load(EXAMPLES / "a2_datum.json", schema.datum_from_json)
        assert datum.rank == 2
        assert fundamental_group(datum).invariant_factors == ()

    def test_round_trip_through_json(self):
        """Test that a serialized catalog datum reads back equal."""
        datum = schema.datum_from_json("G2")
        again = schema.datum_from_json(schema.datum_to_json(datum))
        assert again == datum

    def test_missing_field(self):
        """Test that a missing field names its location."""
        with pytest.raises(SchemaError) as info:
            schema.datum_from_json({"rank": 1, "roots": [[2], [-2]]})
        assert info.value.location == "datum"
        assert "coroots" in info.value.detail

    def test_wrong_length(self):
        """Test that root vectors must have length rank."""
        with pytest.raises(SchemaError) as info:
            schema.datum_from_json({"rank": 1, "roots": [[2, 0]], "coroots": [[1]],
                                    "simple_indices": [0]})
        assert info.value.location == "datum.roots[0]"

    def test_simple_index_out_of_range(self):
        """Test that simple indices must name roots."""
        with pytest.raises(SchemaError) as info:
            schema.datum_from_json({"rank": 1, "roots": [[2], [-2]], "coroots": [[1], [-1]],
                                    "simple_indices": [2]})
        assert info.value.location == "datum.simple_indices[0]"

    def test_booleans_are_not_integers(self):
        """Test that true is not accepted as a rank."""
        with pytest.raises(SchemaError):
            schema.datum_from_json({"rank": True, "roots": [], "coroots": [], "simple_indices": []})

    def test_unknown_catalog_name(self):
        """Test that an unknown catalog name is not a schema error."""
        with pytest.raises(UnknownName):
            schema.datum_from_json("E8")


class TestWeightSchema:
    """Test cases for weight multiset documents."""

    def test_explicit_weights(self):
        """Test the tautological PGL2 example."""
        m = schema.load(EXAMPLES / "pgl2_taut.json", schema.weights_from_json)
        assert m.lattice == CHARACTER
        assert m.dimension == 3

    def test_default_lattice(self):
        """Test that the cocharacter lattice is the default."""
        m = schema.weights_from_json({"datum": "SL2", "weights": [{"weight": [1], "multiplicity": 2},
                                                                  {"weight": [-1], "multiplicity": 2}]})
        assert m.lattice == COCHARACTER

    @pytest.mark.parametrize("name,dimension", [
        ("sl2_adjoint.json", 3),
        ("u3_relative_adjoint.json", 8),
    ])
    def test_presets(self, name, dimension):
        """Test the preset examples."""
        m = schema.load(EXAMPLES / name, schema.weights_from_json)
        assert m.dimension == dimension

    def test_unknown_preset(self):
        """Test that unknown presets are reported at the preset field."""
        with pytest.raises(SchemaError) as info:
            schema.weights_from_json({"datum": "SL2", "preset": "coadjoint"})
        assert info.value.location == "$.preset"

    def test_unknown_lattice(self):
        """Test that the lattice name is checked."""
        with pytest.raises(SchemaError) as info:
            schema.weights_from_json({"datum": "SL2", "lattice": "root", "weights": []})
        assert info.value.location == "$.lattice"

    def test_levi_must_be_simple(self):
        """Test that Levi indices outside the simple system are reported."""
        with pytest.raises(SchemaError) as info:
            schema.weights_from_json({"datum": "SL3", "preset": "relative_adjoint", "levi": [0, 5]})
        assert info.value.location == "$.levi[1]"

    def test_nonpositive_multiplicity(self):
        """Test that multiplicities must be positive."""
        with pytest.raises(SchemaError) as info:
            schema.weights_from_json({"datum": "SL2", "weights": [{"weight": [1], "multiplicity": 0}]})
        assert info.value.location == "$.weights[0].multiplicity"

    def test_round_trip_through_json(self):
        """Test that serialized weights read back equal."""
        m = schema.load(EXAMPLES / "pgl2_taut.json", schema.weights_from_json)
        assert schema.weights_from_json(schema.weights_to_json(m)) == m


class TestGroupAndModuleSchema:
    """Test cases for groups, modules and cocycles."""

    def test_group_forms(self):
        """Test catalog, permutation and table groups."""
        assert schema.group_from_json("Q8").order == 8
        assert identify_group(schema.group_from_json({"permutations": [[1, 2, 0], [1, 0, 2]]})) == "S3"
        table = schema.group_from_json({"table": [[0, 1], [1, 0]]})
        assert identify_group(table) == "C2"

    def test_table_entries_in_range(self):
        """Test that table entries must be elements."""
        with pytest.raises(SchemaError) as info:
            schema.group_from_json({"table": [[0, 2], [1, 0]]})
        assert info.value.location == "group.table[0][1]"

    def test_group_bound(self):
        """Test that the group order is bounded."""
        with pytest.raises(SizeBoundExceeded):
            schema.group_from_json("C8", bounds=Bounds(group_order=4))

    def test_trivial_module(self):
        """Test the C2xC2 example without an action."""
        module = schema.load(EXAMPLES / "c2xc2_z2.json", schema.module_from_json)
        assert module.is_trivial_action()
        assert module.order() == 2

    def test_twisted_module(self):
        """Test the inversion example."""
        module = schema.load(EXAMPLES / "c2_z4_inversion.json", schema.module_from_json)
        assert module.act(1, (1,)) == (3,)

    def test_action_count(self):
        """Test that one matrix per group element is required."""
        with pytest.raises(SchemaError) as info:
            schema.module_from_json({"group": "C2", "moduli": [4], "action": [[[1]]]})
        assert info.value.location == "module.action"

    def test_moduli_at_least_two(self):
        """Test that Z/1 and Z/0 factors are rejected."""
        with pytest.raises(SchemaError):
            schema.module_from_json({"group": "C2", "moduli": [0]})

    def test_cocycle(self):
        """Test the nonsplit example over C2."""
        z = schema.load(EXAMPLES / "c2_nonsplit.json", schema.cocycle_from_json)
        assert z.values[1][1] == (1,)

    def test_cocycle_identity_checked(self):
        """Test that a non-normalized table is rejected by the domain."""
        with pytest.raises(NotACocycle):
            schema.cocycle_from_json({"module": {"group": "C2", "moduli": [2]},
                                      "values": [[1, 0], [0, 0]]})

    def test_cocycle_shape(self):
        """Test that the value table must be |G| x |G|."""
        with pytest.raises(SchemaError) as info:
            schema.cocycle_from_json({"module": {"group": "C2", "moduli": [2]}, "values": [[0, 0]]})
        assert info.value.location == "$.values"


class TestRepresentationSchema:
    """Test cases for orthogonal representation documents."""

    def test_catalog_and_rotation(self):
        """Test catalog names and rotation shorthands."""
        assert schema.load(EXAMPLES / "c4_rotation.json", schema.rep_from_json).dim == 2
        rep = schema.rep_from_json({"rotation": {"order": 6, "power": 2}})
        assert rep.name == "C6:rotation^2"

    def test_generated_group(self):
        """Test the matrix group example."""
        rep = schema.load(EXAMPLES / "c2xc2_diagonal.json", schema.rep_from_json)
        assert identify_group(rep.group) == "C2xC2"

    def test_images_of_generators(self):
        """Test the hexagonal example with a Gram matrix."""
        rep = schema.load(EXAMPLES / "c6_hexagonal.json", schema.rep_from_json)
        assert rep.group.order == 6
        assert rep.space.frame_squares == (Fraction(2), Fraction(3, 2))

    def test_rational_entries(self):
        """Test num/den entries in matrices."""
        half = {"num": 1, "den": 2}
        rep = schema.rep_from_json({"gram": [[half]], "group": "C2", "images": [[[1]], [[-1]]]})
        assert rep.space.frame_squares == (Fraction(1, 2),)

    def test_zero_denominator(self):
        """Test that zero denominators are rejected."""
        with pytest.raises(SchemaError) as info:
            schema.rep_from_json({"generators": [[[{"num": 1, "den": 0}]]]})
        assert info.value.location == "$.generators[0][0][0].den"

    def test_non_orthogonal(self):
        """Test that orthogonality is checked by the domain."""
        with pytest.raises(NotOrthogonal):
            schema.rep_from_json({"group": "C2", "images": [[[1, 0], [0, 1]], [[1, 1], [0, 1]]]})

    def test_sum(self):
        """Test direct sums."""
        rep = schema.rep_from_json({"sum": ["C2:sign", "C2:swap"]})
        assert rep.dim == 3

    def test_empty_sum(self):
        """Test that a sum needs a summand."""
        with pytest.raises(SchemaError):
            schema.rep_from_json({"sum": []})

    def test_whitney_pair(self):
        """Test the pair loader on the Whitney example."""
        first, second = schema.load_pair(EXAMPLES / "whitney_c2.json", "whitney", schema.rep_from_json)
        assert first.group == second.group


class TestLoad:
    """Test cases for loading documents from files."""

    def test_schema_error_carries_path(self, document_file):
        """Test that errors from a file name the file."""
        path = document_file({"datum": "SL2", "preset": 3})
        with pytest.raises(SchemaError) as info:
            schema.load(path, schema.weights_from_json)
        assert info.value.path == str(path)
        assert str(info.value).startswith(str(path))

    def test_parse_error(self, document_file):
        """Test that invalid JSON is a parse error."""
        path = document_file({})
        path.write_text("{")
        with pytest.raises(ParseError):
            schema.load(path, schema.weights_from_json)

    def test_pair_needs_key(self, document_file):
        """Test that the pair loader requires its key."""
        path = document_file({"sum": []})
        with pytest.raises(SchemaError) as info:
            schema.load_pair(path, "whitney", schema.rep_from_json)
        assert info.value.location == "$"
