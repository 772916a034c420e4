"""The ten nerve constructions of a bicategory and their comparison maps."""

from .geometric import (
    GeometricNerve,
    edge_string_relabel,
    geometric_nerve,
    nerve_coskeletal_check,
    validate_geometric_simplex,
)
from .categorical import (
    CategoricalNerve,
    categorical_nerve,
    compose_with_homomorphism,
    icon_key,
    icons_between,
    validate_icon_components,
)
from .pseudo import PseudoSimplicialNerve, pseudo_simplicial_nerve
from .segal import normalization, segal_embedding_projection
from .retraction import retraction_homotopies
from .duskin import DuskinInvariants, duskin_invariants, validate_bigroupoid

__all__ = [
    "GeometricNerve",
    "edge_string_relabel",
    "geometric_nerve",
    "nerve_coskeletal_check",
    "validate_geometric_simplex",
    "CategoricalNerve",
    "categorical_nerve",
    "compose_with_homomorphism",
    "icon_key",
    "icons_between",
    "validate_icon_components",
    "PseudoSimplicialNerve",
    "pseudo_simplicial_nerve",
    "normalization",
    "segal_embedding_projection",
    "retraction_homotopies",
    "DuskinInvariants",
    "duskin_invariants",
    "validate_bigroupoid",
]
