from src.perm.chain import PermGroup
from src.perm.coset import Coset, point_transporter, union_of_cosets
from src.perm.hom import TrackedHom, kernel_and_preimages

__all__ = ["PermGroup", "Coset", "point_transporter", "union_of_cosets", "TrackedHom", "kernel_and_preimages"]
