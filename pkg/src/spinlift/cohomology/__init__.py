"""
Finite groups, their modules and second cohomology, extensions and the
pullback identities checked on finite models.
"""

from spinlift.cohomology.cocycles import (
    ClassComparison,
    Cocycle2,
    H2Result,
    classes_equal,
    coboundary,
    cup1,
    h2,
    h2_order_by_enumeration,
    is_coboundary,
    pullback,
    pushout,
)
from spinlift.cohomology.extensions import (
    GroupExtension,
    are_equivalent,
    canonical_section,
    cocycle_from_extension,
    extension_from_cocycle,
    find_equivalence,
    find_splitting,
    pullback_extension,
    pushout_extension,
)
from spinlift.cohomology.groups import (
    SMALL_GROUPS,
    FiniteGroup,
    SemidirectProduct,
    alternating,
    are_isomorphic,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    find_isomorphism,
    from_permutations,
    identify_group,
    quaternion,
    quotient_group,
    semidirect,
    small_group,
    symmetric,
)
from spinlift.cohomology.lemmas import (
    KeyLemmaInstance,
    KeyLemmaReport,
    crossed_hom_coboundary,
    key_lemma_check,
    morphism_extends,
)
from spinlift.cohomology.modules import GModule, ModuleMap, pullback_module

__all__ = [
    "ClassComparison",
    "Cocycle2",
    "H2Result",
    "classes_equal",
    "coboundary",
    "cup1",
    "h2",
    "h2_order_by_enumeration",
    "is_coboundary",
    "pullback",
    "pushout",
    "GroupExtension",
    "are_equivalent",
    "canonical_section",
    "cocycle_from_extension",
    "extension_from_cocycle",
    "find_equivalence",
    "find_splitting",
    "pullback_extension",
    "pushout_extension",
    "SMALL_GROUPS",
    "FiniteGroup",
    "SemidirectProduct",
    "alternating",
    "are_isomorphic",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "find_isomorphism",
    "from_permutations",
    "identify_group",
    "quaternion",
    "quotient_group",
    "semidirect",
    "small_group",
    "symmetric",
    "KeyLemmaInstance",
    "KeyLemmaReport",
    "crossed_hom_coboundary",
    "key_lemma_check",
    "morphism_extends",
    "GModule",
    "ModuleMap",
    "pullback_module",
]
