from src.abelian.basis import AbelianBasis, HomocyclicDecomposition, abelian_basis
from src.abelian.linalg import howell_form, howell_solve
from src.abelian.matrices import HomMatrix, automorphism_generators, endo_to_matrix

__all__ = [
    "AbelianBasis",
    "HomocyclicDecomposition",
    "abelian_basis",
    "howell_form",
    "howell_solve",
    "HomMatrix",
    "automorphism_generators",
    "endo_to_matrix",
]
