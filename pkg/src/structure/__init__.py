from src.structure.autgroup import AutResult, aut_agroup, lift_aut
from src.structure.bruteforce import aut_bruteforce, oracle_iso
from src.structure.complements import CharComplement, characteristic_complement, hall_subgroup, schur_zassenhaus

__all__ = [
    "AutResult",
    "aut_agroup",
    "lift_aut",
    "aut_bruteforce",
    "oracle_iso",
    "CharComplement",
    "characteristic_complement",
    "hall_subgroup",
    "schur_zassenhaus",
]
