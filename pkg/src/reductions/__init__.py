from src.reductions.factors import direct_factorization, factor_groups, normal_subgroups
from src.reductions.problems import (
    BidwellMatrix,
    count_homs_to_abelian,
    default_agen,
    grp_acount,
    grp_acount_from_icount,
    grp_apart,
    grp_icount,
    grp_imap,
    grp_iso,
    invariance_check,
    iso_coset,
)

__all__ = [
    "direct_factorization",
    "factor_groups",
    "normal_subgroups",
    "BidwellMatrix",
    "count_homs_to_abelian",
    "default_agen",
    "grp_acount",
    "grp_acount_from_icount",
    "grp_apart",
    "grp_icount",
    "grp_imap",
    "grp_iso",
    "invariance_check",
    "iso_coset",
]
