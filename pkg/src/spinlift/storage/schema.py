"""
JSON documents <-> domain objects.

Every ``*_from_json`` function takes the parsed document and the JSON path
of that document (used in error messages such as ``weights[2].multiplicity``)
and raises SchemaError on malformed input. Domain validation (root datum
axioms, orthogonality, cocycle identity, ...) is left to the domain
constructors.
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import sympy

from spinlift.clifford import OrthRep, QuadSpace, direct_sum, representation, rotation_rep
from spinlift.clifford.quadratic import matrix_fractions
from spinlift.cohomology import Cocycle2, FiniteGroup, GModule, from_permutations, small_group
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import SchemaError
from spinlift.lattice import IntMatrix
from spinlift.rootdata import (
    CHARACTER,
    COCHARACTER,
    RootDatum,
    WeightMultiset,
    adjoint_weights,
    catalog,
    relative_adjoint_weights,
    tautological_weights,
)
from spinlift.storage.json import load_document

LATTICE_NAMES = (COCHARACTER, CHARACTER)
WEIGHT_PRESETS = ("adjoint", "relative_adjoint", "tautological")


def _object(doc: Any, where: str) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise SchemaError(where, f"expected an object, got {type(doc).__name__}")
    return doc


def _list(doc: Any, where: str) -> List[Any]:
    if not isinstance(doc, list):
        raise SchemaError(where, f"expected an array, got {type(doc).__name__}")
    return doc


def _field(obj: Dict[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise SchemaError(where, f"missing required field '{key}'")
    return obj[key]


def _int(doc: Any, where: str, minimum: Optional[int] = None) -> int:
    # bool is an int subclass but never a valid integer here
    if isinstance(doc, bool) or not isinstance(doc, int):
        raise SchemaError(where, f"expected an integer, got {doc!r}")
    if minimum is not None and doc < minimum:
        raise SchemaError(where, f"must be at least {minimum}, got {doc}")
    return doc


def _str(doc: Any, where: str) -> str:
    if not isinstance(doc, str):
        raise SchemaError(where, f"expected a string, got {doc!r}")
    return doc


def int_vector_from_json(doc: Any, where: str, length: Optional[int] = None) -> List[int]:
    values = [_int(x, f"{where}[{i}]") for i, x in enumerate(_list(doc, where))]
    if length is not None and len(values) != length:
        raise SchemaError(where, f"expected {length} entries, got {len(values)}")
    return values


def int_matrix_from_json(doc: Any, where: str, size: Optional[int] = None) -> IntMatrix:
    rows = [int_vector_from_json(r, f"{where}[{i}]", size) for i, r in enumerate(_list(doc, where))]
    if size is not None and len(rows) != size:
        raise SchemaError(where, f"expected {size} rows, got {len(rows)}")
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise SchemaError(where, "rows have different lengths")
    return IntMatrix.from_rows(rows, len(rows[0]) if rows else size)


def rational_from_json(doc: Any, where: str) -> Fraction:
    """An integer or ``{"num": n, "den": d}`` with d != 0."""
    if isinstance(doc, dict):
        num = _int(_field(doc, "num", where), f"{where}.num")
        den = _int(_field(doc, "den", where), f"{where}.den")
        if den == 0:
            raise SchemaError(f"{where}.den", "denominator must be nonzero")
        return Fraction(num, den)
    return Fraction(_int(doc, where))


def rational_to_json(value: Fraction) -> Union[int, Dict[str, int]]:
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return {"num": value.numerator, "den": value.denominator}


def rational_matrix_from_json(doc: Any, where: str) -> List[List[Fraction]]:
    rows = [
        [rational_from_json(x, f"{where}[{i}][{j}]") for j, x in enumerate(_list(row, f"{where}[{i}]"))]
        for i, row in enumerate(_list(doc, where))
    ]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise SchemaError(where, "expected a non-empty square matrix")
    return rows


def rational_matrix_to_json(matrix: sympy.MatrixBase) -> List[List[Any]]:
    return [[rational_to_json(x) for x in row] for row in matrix_fractions(matrix)]


# Root data and weights

def datum_from_json(doc: Any, where: str = "datum") -> RootDatum:
    """
    A catalog name (``"PGL2"`` or ``{"catalog": "PGL2"}``) or an explicit
    datum with rank, roots, coroots, simple_indices and optional galois.
    """
    if isinstance(doc, str):
        return catalog(doc)
    obj = _object(doc, where)
    if "catalog" in obj:
        return catalog(_str(obj["catalog"], f"{where}.catalog"))
    rank = _int(_field(obj, "rank", where), f"{where}.rank", minimum=0)
    roots = [int_vector_from_json(r, f"{where}.roots[{i}]", rank)
             for i, r in enumerate(_list(_field(obj, "roots", where), f"{where}.roots"))]
    coroots = [int_vector_from_json(c, f"{where}.coroots[{i}]", rank)
               for i, c in enumerate(_list(_field(obj, "coroots", where), f"{where}.coroots"))]
    simple = int_vector_from_json(_field(obj, "simple_indices", where), f"{where}.simple_indices")
    for i, index in enumerate(simple):
        if not 0 <= index < len(roots):
            raise SchemaError(f"{where}.simple_indices[{i}]", f"no root with index {index}")
    galois = [int_matrix_from_json(g, f"{where}.galois[{i}]", rank)
              for i, g in enumerate(_list(obj.get("galois", []), f"{where}.galois"))]
    name = _str(obj.get("name", ""), f"{where}.name")
    return RootDatum.build(rank, roots, coroots, simple, galois, name)


def datum_to_json(d: RootDatum) -> Dict[str, Any]:
    return {
        "name": d.name,
        "rank": d.rank,
        "roots": [list(r) for r in d.roots],
        "coroots": [list(c) for c in d.coroots],
        "simple_indices": list(d.simple_indices),
        "galois": [g.to_rows() for g in d.galois_gens],
    }


def weights_from_json(doc: Any, where: str = "$") -> WeightMultiset:
    """
    ``{"datum": ..., "lattice": "cocharacter", "weights": [{"weight": [...], "multiplicity": n}]}``
    or ``{"datum": ..., "preset": "adjoint" | "relative_adjoint" | "tautological"}``.
    """
    obj = _object(doc, where)
    datum = datum_from_json(_field(obj, "datum", where), f"{where}.datum")
    if "preset" in obj:
        preset = _str(obj["preset"], f"{where}.preset")
        if preset == "adjoint":
            return adjoint_weights(datum)
        if preset == "tautological":
            return tautological_weights(datum)
        if preset == "relative_adjoint":
            levi = int_vector_from_json(obj.get("levi", []), f"{where}.levi")
            for i, index in enumerate(levi):
                if index not in datum.simple_indices:
                    raise SchemaError(f"{where}.levi[{i}]", f"{index} is not a simple root index")
            return relative_adjoint_weights(datum, levi)
        raise SchemaError(f"{where}.preset", f"expected one of {', '.join(WEIGHT_PRESETS)}")
    lattice = _str(obj.get("lattice", COCHARACTER), f"{where}.lattice")
    if lattice not in LATTICE_NAMES:
        raise SchemaError(f"{where}.lattice", f"expected one of {', '.join(LATTICE_NAMES)}")
    pairs = []
    for i, entry in enumerate(_list(_field(obj, "weights", where), f"{where}.weights")):
        at = f"{where}.weights[{i}]"
        entry = _object(entry, at)
        weight = int_vector_from_json(_field(entry, "weight", at), f"{at}.weight", datum.rank)
        multiplicity = _int(_field(entry, "multiplicity", at), f"{at}.multiplicity", minimum=1)
        pairs.append((weight, multiplicity))
    return WeightMultiset.from_pairs(datum, pairs, lattice)


def weights_to_json(m: WeightMultiset) -> Dict[str, Any]:
    return {
        "datum": datum_to_json(m.datum),
        "lattice": m.lattice,
        "weights": [{"weight": list(w), "multiplicity": k} for w, k in m.entries],
    }


# Groups, modules and cocycles

def group_from_json(doc: Any, where: str = "group", bounds: Bounds = DEFAULT_BOUNDS) -> FiniteGroup:
    """
    A catalog name (``"Q8"``, ``"C2xC4"``), ``{"catalog": name}``,
    ``{"permutations": [[...], ...]}`` or ``{"table": [[...], ...], "identity": 0}``.
    """
    if isinstance(doc, str):
        group = small_group(doc)
    else:
        obj = _object(doc, where)
        name = _str(obj.get("name", ""), f"{where}.name")
        if "catalog" in obj:
            group = small_group(_str(obj["catalog"], f"{where}.catalog"))
        elif "permutations" in obj:
            gens = _list(obj["permutations"], f"{where}.permutations")
            perms = [int_vector_from_json(p, f"{where}.permutations[{i}]") for i, p in enumerate(gens)]
            group = from_permutations(perms, name, bounds)
        elif "table" in obj:
            rows = _list(obj["table"], f"{where}.table")
            table = [int_vector_from_json(r, f"{where}.table[{i}]", len(rows)) for i, r in enumerate(rows)]
            for i, row in enumerate(table):
                for j, x in enumerate(row):
                    if not 0 <= x < len(rows):
                        raise SchemaError(f"{where}.table[{i}][{j}]", f"element {x} out of range")
            identity = _int(obj.get("identity", 0), f"{where}.identity", minimum=0)
            labels = obj.get("labels")
            if labels is not None:
                labels = [_str(x, f"{where}.labels[{i}]") for i, x in enumerate(_list(labels, f"{where}.labels"))]
            group = FiniteGroup.from_table(table, identity, labels, name, bounds)
        else:
            raise SchemaError(where, "expected one of 'catalog', 'permutations' or 'table'")
    bounds.check("group order", group.order, bounds.group_order)
    return group


def group_to_json(group: FiniteGroup) -> Dict[str, Any]:
    return {
        "name": group.name,
        "identity": group.identity,
        "table": [list(row) for row in group.table],
    }


def _element(doc: Any, group: FiniteGroup, where: str) -> int:
    index = _int(doc, where, minimum=0)
    if index >= group.order:
        raise SchemaError(where, f"group has no element {index}")
    return index


def module_from_json(doc: Any, where: str = "module", bounds: Bounds = DEFAULT_BOUNDS) -> GModule:
    """
    ``{"group": ..., "moduli": [d1, ...], "action": [matrix per element]}``.

    Without ``action`` the module is trivial. Matrices act on coordinate
    columns of prod Z/d_k.
    """
    obj = _object(doc, where)
    group = group_from_json(_field(obj, "group", where), f"{where}.group", bounds)
    moduli = int_vector_from_json(_field(obj, "moduli", where), f"{where}.moduli")
    for i, d in enumerate(moduli):
        if d < 2:
            raise SchemaError(f"{where}.moduli[{i}]", f"moduli must be at least 2, got {d}")
    if "action" not in obj:
        module = GModule.trivial(group, moduli)
        module.check(bounds)
        return module
    matrices = _list(obj["action"], f"{where}.action")
    if len(matrices) != group.order:
        raise SchemaError(f"{where}.action", f"expected {group.order} matrices, got {len(matrices)}")
    action = [int_matrix_from_json(m, f"{where}.action[{i}]", len(moduli)) for i, m in enumerate(matrices)]
    return GModule.from_coordinates(group, moduli, action, bounds)


def module_to_json(module: GModule) -> Dict[str, Any]:
    return {
        "group": group_to_json(module.group),
        "moduli": list(module.invariant_factors),
        "action": [m.to_rows() for m in module.action],
    }


def _module_value(doc: Any, rank: int, where: str) -> List[int]:
    if rank == 1 and not isinstance(doc, list):
        return [_int(doc, where)]
    return int_vector_from_json(doc, where, rank)


def cocycle_from_json(doc: Any, where: str = "$", bounds: Bounds = DEFAULT_BOUNDS) -> Cocycle2:
    """
    ``{"module": ..., "values": table}`` where ``values[g][h]`` is z(g, h).

    Values are coordinate lists, or plain integers when A is cyclic.
    """
    obj = _object(doc, where)
    module = module_from_json(_field(obj, "module", where), f"{where}.module", bounds)
    n = module.group.order
    rows = _list(_field(obj, "values", where), f"{where}.values")
    if len(rows) != n:
        raise SchemaError(f"{where}.values", f"expected {n} rows, got {len(rows)}")
    table = []
    for g, row in enumerate(rows):
        row = _list(row, f"{where}.values[{g}]")
        if len(row) != n:
            raise SchemaError(f"{where}.values[{g}]", f"expected {n} entries, got {len(row)}")
        table.append([_module_value(x, module.rank, f"{where}.values[{g}][{h}]") for h, x in enumerate(row)])
    return Cocycle2.from_table(module, table)


def cocycle_to_json(z: Cocycle2) -> Dict[str, Any]:
    return {"module": module_to_json(z.module), "values": z.to_json()}


# Orthogonal representations

def rep_from_json(doc: Any, where: str = "$", bounds: Bounds = DEFAULT_BOUNDS) -> OrthRep:
    """
    One of:

    - ``"C4:rotation"`` or ``{"catalog": "C4:rotation"}``
    - ``{"rotation": {"order": n, "power": m}}`` for C_n -> SO(2), n in 2, 4, 6
    - ``{"sum": [rep, rep, ...]}``, the orthogonal direct sum
    - ``{"gram": G, "group": ..., "generators": [g, ...], "images": [M, ...]}``
    - ``{"gram": G, "group": ..., "images": [M per element]}``
    - ``{"gram": G, "generators": [M, ...]}``, the matrix group the matrices generate

    ``gram`` defaults to the identity form.
    """
    if isinstance(doc, str):
        return representation(doc, bounds)
    obj = _object(doc, where)
    if "catalog" in obj:
        return representation(_str(obj["catalog"], f"{where}.catalog"), bounds)
    if "rotation" in obj:
        spec = _object(obj["rotation"], f"{where}.rotation")
        order = _int(_field(spec, "order", f"{where}.rotation"), f"{where}.rotation.order", minimum=1)
        power = _int(spec.get("power", 1), f"{where}.rotation.power")
        return rotation_rep(order, power, bounds)
    if "sum" in obj:
        parts = _list(obj["sum"], f"{where}.sum")
        if not parts:
            raise SchemaError(f"{where}.sum", "expected at least one summand")
        result = rep_from_json(parts[0], f"{where}.sum[0]", bounds)
        for i, part in enumerate(parts[1:], start=1):
            result = direct_sum(result, rep_from_json(part, f"{where}.sum[{i}]", bounds), bounds)
        return result

    name = _str(obj.get("name", ""), f"{where}.name")
    images_doc = obj.get("images")
    generators_doc = obj.get("generators")
    if "group" not in obj:
        if generators_doc is None:
            raise SchemaError(where, "expected 'catalog', 'rotation', 'sum', 'group' or 'generators'")
        matrices = [rational_matrix_from_json(m, f"{where}.generators[{i}]")
                    for i, m in enumerate(_list(generators_doc, f"{where}.generators"))]
        if not matrices:
            raise SchemaError(f"{where}.generators", "expected at least one matrix")
        space = _space(obj, where, len(matrices[0]), bounds)
        return OrthRep.from_generators(matrices, space, name, name, bounds)

    group = group_from_json(obj["group"], f"{where}.group", bounds)
    images = [rational_matrix_from_json(m, f"{where}.images[{i}]")
              for i, m in enumerate(_list(_field(obj, "images", where), f"{where}.images"))]
    if not images:
        raise SchemaError(f"{where}.images", "expected at least one matrix")
    space = _space(obj, where, len(images[0]), bounds)
    if generators_doc is not None:
        generators = [_element(g, group, f"{where}.generators[{i}]")
                      for i, g in enumerate(_list(generators_doc, f"{where}.generators"))]
        if len(generators) != len(images):
            raise SchemaError(f"{where}.images", f"expected {len(generators)} matrices, got {len(images)}")
        return OrthRep.from_generator_images(group, generators, images, space, name)
    if len(images) != group.order:
        raise SchemaError(f"{where}.images", f"expected {group.order} matrices, got {len(images)}")
    return OrthRep.from_images(group, images, space, name)


def _space(obj: Dict[str, Any], where: str, dim: int, bounds: Bounds) -> QuadSpace:
    if "gram" not in obj:
        return QuadSpace.standard(dim, bounds)
    gram = rational_matrix_from_json(obj["gram"], f"{where}.gram")
    if len(gram) != dim:
        raise SchemaError(f"{where}.gram", f"expected a {dim} x {dim} matrix")
    return QuadSpace.from_gram(gram, bounds)


def rep_to_json(rep: OrthRep) -> Dict[str, Any]:
    return {
        "name": rep.name,
        "group": group_to_json(rep.group),
        "gram": rational_matrix_to_json(rep.space.gram),
        "images": [rational_matrix_to_json(m) for m in rep.images],
    }


def load(path: Union[str, Path], reader, **kwargs) -> Any:
    """
    Load a document from ``path`` and convert it with ``reader``.

    Raises:
        ParseError: if the file is not valid JSON
        SchemaError: if the document does not match, with ``path`` filled in
    """
    document = load_document(path)
    try:
        return reader(document, **kwargs)
    except SchemaError as e:
        raise SchemaError(e.location, e.detail, str(path)) from e


def load_pair(path: Union[str, Path], key: str, reader: Any, **kwargs) -> Sequence[Any]:
    """Documents with ``{key: [doc, doc]}``, e.g. two representations for the Whitney sum."""
    document = load_document(path)
    try:
        obj = _object(document, "$")
        items = _list(_field(obj, key, "$"), f"$.{key}")
        return [reader(item, f"$.{key}[{i}]", **kwargs) for i, item in enumerate(items)]
    except SchemaError as e:
        raise SchemaError(e.location, e.detail, str(path)) from e
