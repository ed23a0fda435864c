from src.reps.intertwiner import hom_module, intertwining_coset, module_isomorphism, unit_group
from src.reps.modules import ClassRegistry, decompose, irreducible_equivalent, irreducible_submodules
from src.reps.representation import Representation, conjugation_rep
from src.reps.transport import TransportInstance, transport_elementary, transport_general

__all__ = [
    "hom_module",
    "intertwining_coset",
    "module_isomorphism",
    "unit_group",
    "ClassRegistry",
    "decompose",
    "irreducible_equivalent",
    "irreducible_submodules",
    "Representation",
    "conjugation_rep",
    "TransportInstance",
    "transport_elementary",
    "transport_general",
]
