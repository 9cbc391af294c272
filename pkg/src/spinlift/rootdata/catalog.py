"""
Catalog of root data for the classical groups, G2 and a quasi-split unitary model.

Classical groups use their standard Z^n models. Simply connected and adjoint
forms are built from Cartan matrices A_ij = <alpha_i^vee, alpha_j>.
"""

import re
from collections import deque
from typing import Dict, List, Sequence, Tuple

from spinlift.errors import UnknownName
from spinlift.lattice import IntMatrix, IntVector, as_vector, dot
from spinlift.rootdata.datum import RootDatum

Pair = Tuple[IntVector, IntVector]


def cartan_matrix(series: str, rank: int) -> List[List[int]]:
    """Cartan matrix of a Dynkin diagram; the last node is the special one."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    chain = rank - 1 if series in ("A", "B", "C") else rank - 2
    if series == "G":
        if rank != 2:
            raise ValueError("G2 has rank 2")
        return [[2, -3], [-1, 2]]
    for i in range(chain):
        a[i][i + 1] = a[i + 1][i] = -1
    if series == "B" and rank >= 2:
        a[rank - 1][rank - 2] = -2
    elif series == "C" and rank >= 2:
        a[rank - 2][rank - 1] = -2
    elif series == "D" and rank >= 3:
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    elif series not in ("A", "B", "C", "D"):
        raise ValueError(f"Unsupported Dynkin series {series!r}")
    return a


def generate_roots(rank: int, simple_roots: Sequence[Sequence[int]],
                   simple_coroots: Sequence[Sequence[int]]) -> Tuple[List[Pair], List[int]]:
    """
    Close the simple (root, coroot) pairs under simple reflections.

    Returns:
        (pairs, simple_indices) with positive roots first, ordered by height
        and then by simple coordinates, followed by their negatives in the same
        order.
    """
    simple = [(as_vector(r), as_vector(c)) for r, c in zip(simple_roots, simple_coroots)]
    n = len(simple)
    unit = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    found: Dict[Pair, IntVector] = {}
    queue = deque()
    for k, pair in enumerate(simple):
        found[pair] = unit[k]
        queue.append(pair)
    while queue:
        root, coroot = queue.popleft()
        coords = found[(root, coroot)]
        for k, (alpha, alpha_check) in enumerate(simple):
            step = dot(alpha_check, root)
            image = tuple(x - step * a for x, a in zip(root, alpha))
            coimage = tuple(y - dot(coroot, alpha) * c for y, c in zip(coroot, alpha_check))
            if (image, coimage) in found:
                continue
            found[(image, coimage)] = tuple(c - step * int(i == k) for i, c in enumerate(coords))
            queue.append((image, coimage))

    positive = [pair for pair, coords in found.items() if all(c >= 0 for c in coords)]
    positive.sort(key=lambda pair: (sum(found[pair]), tuple(-c for c in found[pair])))
    negative = [(tuple(-x for x in r), tuple(-y for y in c)) for r, c in positive]
    return positive + negative, list(range(n))


def from_simple_data(rank: int, simple_roots: Sequence[Sequence[int]],
                     simple_coroots: Sequence[Sequence[int]], name: str,
                     galois_gens: Sequence[IntMatrix] = ()) -> RootDatum:
    pairs, simple_indices = generate_roots(rank, simple_roots, simple_coroots)
    return RootDatum.build(
        rank=rank,
        roots=[r for r, _ in pairs],
        coroots=[c for _, c in pairs],
        simple_indices=simple_indices,
        galois_gens=galois_gens,
        name=name,
    )


def from_cartan(series: str, rank: int, form: str, name: str) -> RootDatum:
    """
    Simply connected ("sc") or adjoint ("ad") datum of a Cartan type.

    In the simply connected form X_* has the simple coroots as basis; in the
    adjoint form X* has the simple roots as basis.
    """
    a = cartan_matrix(series, rank)
    unit = [[int(i == j) for i in range(rank)] for j in range(rank)]
    if form == "sc":
        roots = [[a[i][j] for i in range(rank)] for j in range(rank)]
        coroots = unit
    elif form == "ad":
        roots = unit
        coroots = [list(a[j]) for j in range(rank)]
    else:
        raise ValueError(f"Unknown form {form!r}")
    return from_simple_data(rank, roots, coroots, name)


def _e(n: int, *terms: Tuple[int, int]) -> IntVector:
    v = [0] * n
    for index, coefficient in terms:
        v[index] += coefficient
    return tuple(v)


def general_linear(n: int) -> RootDatum:
    roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    return from_simple_data(n, roots, roots, f"GL{n}")


def odd_orthogonal(n: int) -> RootDatum:
    """SO(2n+1): roots +-e_i +- e_j, +-e_i; coroots +-e_i +- e_j, +-2e_i."""
    roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    coroots = roots[:-1] + [_e(n, (n - 1, 2))]
    return from_simple_data(n, roots, coroots, f"SO{2 * n + 1}")


def even_orthogonal(n: int) -> RootDatum:
    """SO(2n): roots and coroots +-e_i +- e_j."""
    if n == 1:
        return RootDatum.build(1, [], [], [], name="SO2")
    roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    roots.append(_e(n, (n - 2, 1), (n - 1, 1)))
    return from_simple_data(n, roots, roots, f"SO{2 * n}")


def symplectic(n: int) -> RootDatum:
    """Sp(2n): roots +-e_i +- e_j, +-2e_i; coroots +-e_i +- e_j, +-e_i."""
    roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    coroots = roots[:-1] + [_e(n, (n - 1, 1))]
    return from_simple_data(n, roots, coroots, f"Sp{2 * n}")


def unitary3() -> RootDatum:
    """Quasi-split U(3): the GL3 datum with Galois acting by e_i -> -e_{4-i}."""
    flip = IntMatrix.from_rows([[0, 0, -1], [0, -1, 0], [-1, 0, 0]])
    roots = [_e(3, (0, 1), (1, -1)), _e(3, (1, 1), (2, -1))]
    return from_simple_data(3, roots, roots, "U3", galois_gens=[flip])


def special_linear(n: int) -> RootDatum:
    return from_cartan("A", n - 1, "sc", f"SL{n}")


def projective_linear(n: int) -> RootDatum:
    return from_cartan("A", n - 1, "ad", f"PGL{n}")


def spin(m: int) -> RootDatum:
    if m == 3:
        return from_cartan("A", 1, "sc", "Spin3")
    if m == 4:
        return from_simple_data(2, [(2, 0), (0, 2)], [(1, 0), (0, 1)], "Spin4")
    if m % 2:
        return from_cartan("B", (m - 1) // 2, "sc", f"Spin{m}")
    return from_cartan("D", m // 2, "sc", f"Spin{m}")


_PATTERN = re.compile(r"^(GL|SL|PGL|Sp|SO|Spin|G|U)(\d+)$")

CATALOG_NAMES = (
    "GL1", "GL2", "GL3", "SL2", "SL3", "SL4", "PGL2", "PGL3", "PGL4", "Sp4", "Sp6",
    "SO2", "SO3", "SO4", "SO5", "SO6", "SO7", "SO8", "SO9", "Spin5", "Spin7", "G2", "U3",
)


def catalog(name: str) -> RootDatum:
    """
    Look up a root datum by name.

    Accepted names: GL<n>, SL<n>, PGL<n> (n >= 2 for SL/PGL), Sp<2n>, SO<m>
    (m >= 2), Spin<m> (m >= 3), G2 and U3.

    Raises:
        UnknownName: if the name is not recognized
    """
    match = _PATTERN.match(name.strip())
    if not match:
        raise UnknownName(f"Unknown root datum {name!r}")
    family, size = match.group(1), int(match.group(2))
    if family == "GL" and size >= 1:
        return general_linear(size)
    if family == "SL" and size >= 2:
        return special_linear(size)
    if family == "PGL" and size >= 2:
        return projective_linear(size)
    if family == "Sp" and size >= 2 and size % 2 == 0:
        return symplectic(size // 2)
    if family == "SO" and size >= 2:
        return odd_orthogonal(size // 2) if size % 2 else even_orthogonal(size // 2)
    if family == "Spin" and size >= 3:
        return spin(size)
    if family == "G" and size == 2:
        return from_cartan("G", 2, "sc", "G2")
    if family == "U" and size == 3:
        return unitary3()
    raise UnknownName(f"Unknown root datum {name!r}")


def split_catalog() -> List[RootDatum]:
    """Every catalog entry without Galois action."""
    return [d for d in (catalog(n) for n in CATALOG_NAMES) if not d.galois_gens]
