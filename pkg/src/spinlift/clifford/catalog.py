"""
Catalog of small rational orthogonal representations, direct sums and the
rotation representations of cyclic groups.
"""

from typing import Callable, Dict, List, Sequence, Tuple

import sympy

from spinlift.clifford.pin import OrthRep
from spinlift.clifford.quadratic import QuadSpace
from spinlift.cohomology.groups import cyclic
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import UnknownName
from spinlift.rootdata import CHARACTER, WeightMultiset, catalog as root_catalog

HEXAGONAL_GRAM = [[2, -1], [-1, 2]]
ROTATION_ORDERS = (2, 4, 6)


def _rotation_generator(n: int) -> Tuple[List[List[int]], List[List[int]]]:
    """Gram matrix and a rotation of order n, for n in 2, 4, 6."""
    if n == 2:
        return [[1, 0], [0, 1]], [[-1, 0], [0, -1]]
    if n == 4:
        return [[1, 0], [0, 1]], [[0, -1], [1, 0]]
    if n == 6:
        return HEXAGONAL_GRAM, [[1, -1], [1, 0]]
    raise UnknownName(f"No rational rotation of order {n}; use one of {ROTATION_ORDERS}")


def rotation_rep(n: int, m: int = 1, bounds: Bounds = DEFAULT_BOUNDS) -> OrthRep:
    """C_n -> SO(2), generator -> R^m with R a rotation of order n."""
    gram, generator = _rotation_generator(n)
    space = QuadSpace.from_gram(gram, bounds)
    image = sympy.Matrix(generator) ** (m % n)
    return OrthRep.from_generator_images(cyclic(n), [1], [image.tolist()], space,
                                         f"C{n}:rotation^{m % n}")


def rotation_weights(m: int) -> WeightMultiset:
    """Weights {m, -m} of R(theta) -> R(m theta) on the torus of SO2."""
    datum = root_catalog("SO2")
    return WeightMultiset.from_pairs(datum, [((m,), 1), ((-m,), 1)], CHARACTER)


def _permutation_matrix(perm: Sequence[int]) -> List[List[int]]:
    n = len(perm)
    return [[int(perm[j] == i) for j in range(n)] for i in range(n)]


def _cyclic_rep(n: int, dim: int, image, name: str, bounds: Bounds) -> OrthRep:
    return OrthRep.from_generator_images(cyclic(n), [1], [image], QuadSpace.standard(dim, bounds), name)


def _faithful(generators, gram, name: str, group_name: str, bounds: Bounds) -> OrthRep:
    return OrthRep.from_generators(generators, QuadSpace.from_gram(gram, bounds), name,
                                   group_name, bounds)


_CATALOG: Dict[str, Callable[[Bounds], OrthRep]] = {
    "C2:trivial": lambda b: _cyclic_rep(2, 1, [[1]], "C2:trivial", b),
    "C2:sign": lambda b: _cyclic_rep(2, 1, [[-1]], "C2:sign", b),
    "C2:minus_identity": lambda b: _cyclic_rep(2, 2, [[-1, 0], [0, -1]], "C2:minus_identity", b),
    "C2:swap": lambda b: _cyclic_rep(2, 2, [[0, 1], [1, 0]], "C2:swap", b),
    "C4:rotation": lambda b: rotation_rep(4, 1, b),
    "C4:sign": lambda b: _cyclic_rep(4, 1, [[-1]], "C4:sign", b),
    "C4:regular": lambda b: _cyclic_rep(4, 4, _permutation_matrix([1, 2, 3, 0]), "C4:regular", b),
    "C6:rotation": lambda b: rotation_rep(6, 1, b),
    "C2xC2:diagonal": lambda b: _faithful(
        [[[1, 0, 0], [0, -1, 0], [0, 0, -1]], [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]],
        sympy.eye(3).tolist(), "C2xC2:diagonal", "C2xC2", b),
    "S3:permutation": lambda b: _faithful(
        [_permutation_matrix([1, 0, 2]), _permutation_matrix([0, 2, 1])],
        sympy.eye(3).tolist(), "S3:permutation", "S3", b),
    "S3:standard": lambda b: _faithful(
        [[[-1, 1], [0, 1]], [[1, 0], [1, -1]]], HEXAGONAL_GRAM, "S3:standard", "S3", b),
    "D8:square": lambda b: _faithful(
        [[[0, -1], [1, 0]], [[1, 0], [0, -1]]], sympy.eye(2).tolist(), "D8:square", "D8", b),
    "D8:permutation": lambda b: _faithful(
        [_permutation_matrix([1, 2, 3, 0]), _permutation_matrix([3, 2, 1, 0])],
        sympy.eye(4).tolist(), "D8:permutation", "D8", b),
}

REPRESENTATION_NAMES = tuple(_CATALOG)


def representation(name: str, bounds: Bounds = DEFAULT_BOUNDS) -> OrthRep:
    """
    Look up a catalog representation such as ``C4:rotation`` or ``S3:standard``.

    Raises:
        UnknownName: if the name is not in the catalog
    """
    try:
        build = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"Unknown representation {name!r}; known: {', '.join(REPRESENTATION_NAMES)}")
    return build(bounds)
