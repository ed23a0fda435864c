import numpy as np
import pytest

from src.errors import PreconditionError, ResourceExhausted
from src.groups.products import direct_product
from src.harness.corpus import C7_C3
from src.harness.dsl import build_group, cyclic_group
from src.reductions.factors import direct_factorization, factor_groups, normal_subgroups
from src.reductions.problems import (
    BidwellMatrix,
    aut_product_order,
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
from src.structure.bruteforce import aut_bruteforce

SMALL_NON_ISOMORPHIC = [
    ("cyclic(21)", C7_C3),
    ("cyclic(6)", "sym(3)"),
    ("alt(4)", "semidirect(cyclic(3), cyclic(4), pow(-1))"),
    ("semidirect(cyclic(9), cyclic(2), pow(-1))", "direct(cyclic(3), sym(3))"),
    ("semidirect(cyclic(5), cyclic(4), pow(2))", "semidirect(cyclic(5), cyclic(4), pow(-1))"),
]


@pytest.mark.parametrize("expr, orders", [("sym(3)", [1, 3, 6]), ("alt(4)", [1, 4, 12]), ("cyclic(6)", [1, 2, 3, 6]), ("sym(4)", [1, 4, 12, 24])])
def test_normal_subgroups(expr, orders):
    assert [N.order for N in normal_subgroups(build_group(expr))] == orders


def test_direct_factorization(sym3_alt4):
    assert sorted(F.order for F in direct_factorization(cyclic_group(6))) == [2, 3]
    assert sorted(F.order for F in direct_factorization(sym3_alt4)) == [6, 12]
    assert [F.order for F in direct_factorization(build_group("alt(5)"))] == [60]
    assert direct_factorization(cyclic_group(1)) == []
    factors = factor_groups(sym3_alt4)
    assert sorted(F.order for F in factors) == [6, 12]
    assert all(not F.is_abelian for F in factors)


def test_direct_factorization_cap(alt4):
    with pytest.raises(ResourceExhausted):
        direct_factorization(alt4, max_order=10)


@pytest.mark.parametrize("A, B, count", [("cyclic(4)", "cyclic(2)", 2), ("sym(3)", "cyclic(6)", 2), ("alt(4)", "cyclic(2)", 1), ("abelian(2,4)", "abelian(2,2)", 16)])
def test_count_homs_to_abelian(A, B, count):
    assert count_homs_to_abelian(build_group(A), build_group(B)) == count


def test_count_homs_needs_abelian_target(sym3):
    with pytest.raises(PreconditionError):
        count_homs_to_abelian(cyclic_group(2), sym3)


def test_bidwell_matrices(sym3):
    identity = np.arange(6)
    trivial = np.zeros(6, dtype=int)
    assert BidwellMatrix(sym3, sym3, identity, trivial, trivial, identity).is_automorphism()
    swap = BidwellMatrix(sym3, sym3, trivial, identity, identity, trivial)
    assert swap.is_automorphism()
    assert swap.as_permutation()[1 * 6 + 2] == 2 * 6 + 1
    assert not BidwellMatrix(sym3, sym3, identity, identity, trivial, identity).is_automorphism()


def test_aut_product_order(sym3, alt4):
    product, _, _ = direct_product(sym3, alt4)
    assert aut_product_order(sym3, alt4) == default_agen(product).order() == 144
    assert aut_product_order(sym3, sym3, isomorphic=True) == 72


D10 = "semidirect(cyclic(5), cyclic(2), pow(-1))"
D14 = "semidirect(cyclic(7), cyclic(2), pow(-1))"
F20 = "semidirect(cyclic(5), cyclic(4), pow(2))"
DIC3 = "semidirect(cyclic(3), cyclic(4), pow(-1))"

# Pairs without a common direct factor, then centreless indecomposable squares.
PRODUCT_PAIRS = [
    ("sym(3)", "alt(4)"),
    ("sym(3)", "cyclic(5)"),
    ("cyclic(2)", "cyclic(4)"),
    ("sym(3)", "cyclic(2)"),
    ("alt(4)", "cyclic(2)"),
    ("alt(4)", "cyclic(3)"),
    ("sym(3)", D10),
    (C7_C3, "cyclic(2)"),
    (C7_C3, "sym(3)"),
    ("alt(4)", D10),
    (F20, "cyclic(3)"),
    (D14, "cyclic(3)"),
    ("cyclic(4)", "sym(3)"),
    ("abelian(2,4)", "cyclic(3)"),
    (DIC3, "cyclic(5)"),
    (DIC3, "cyclic(2)"),
    (D10, "cyclic(3)"),
    ("sym(3)", "sym(3)"),
    ("alt(4)", "alt(4)"),
    (D10, D10),
    pytest.param(D14, D14, marks=pytest.mark.slow),
    pytest.param(F20, F20, marks=pytest.mark.slow),
]


@pytest.mark.parametrize("first, second", PRODUCT_PAIRS)
def test_aut_product_order_matches_backtracking(first, second):
    G = build_group(first)
    H = build_group(second)
    product, _, _ = direct_product(G, H)
    assert product.order <= 400
    assert aut_product_order(G, H, isomorphic=first == second) == aut_bruteforce(product).order()



def test_invariance_check(sym3, alt4):
    assert invariance_check(sym3, alt4)
    assert not invariance_check(sym3, sym3)


def test_counts(sym3):
    assert grp_acount(build_group("direct(sym(3), sym(3))")) == 72
    assert grp_icount(sym3, build_group("relabel(sym(3), 4)")) == 6
    assert grp_icount(sym3, cyclic_group(6)) == 0
    assert grp_acount(build_group("sym(4)")) == 24


@pytest.mark.parametrize("expr, count", [("sym(3)", 6), ("alt(4)", 24), ("abelian(2,4)", 8)])
def test_icount_and_acount_reduce_to_each_other(expr, count):
    G = build_group(expr)
    copy = build_group(f"relabel({expr}, 3)")
    assert grp_acount_from_icount(G) == count
    assert grp_acount_from_icount(G, icount=lambda A, B: grp_icount(A, B, acount=grp_acount)) == count
    assert grp_icount(G, copy, acount=grp_acount_from_icount) == count
    assert grp_icount(G, copy, acount=lambda A: grp_acount(A, aut_bruteforce)) == count
    assert grp_icount(G, cyclic_group(G.order + 1), acount=grp_acount_from_icount) == 0



def test_automorphism_orbits(sym3):
    assert sorted(len(orbit) for orbit in grp_apart(sym3)) == [1, 2, 3]


@pytest.mark.parametrize("method", ["acount", "apart"])
@pytest.mark.parametrize("expr", ["sym(3)", C7_C3, "direct(sym(3), alt(4))", "abelian(2,2,3)"])
def test_isomorphic_relabelings(expr, method):
    assert grp_iso(build_group(expr), build_group(f"relabel({expr}, 7)"), method=method)


@pytest.mark.parametrize("method", ["acount", "apart"])
@pytest.mark.parametrize("first, second", SMALL_NON_ISOMORPHIC)
def test_non_isomorphic_pairs(first, second, method):
    assert not grp_iso(build_group(first), build_group(second), method=method)


def test_unknown_method(sym3):
    with pytest.raises(PreconditionError):
        grp_iso(sym3, sym3, method="guess")


@pytest.mark.parametrize("expr", ["sym(3)", "abelian(2,4)", "direct(sym(3), alt(4))", "direct(cyclic(3), sym(3))"])
def test_isomorphism_maps(expr):
    G = build_group(expr)
    H = build_group(f"relabel({expr}, 2)")
    hom = grp_imap(G, H)
    assert hom is not None and hom.is_bijective()


def test_no_isomorphism_map(c7c3):
    assert grp_imap(cyclic_group(21), c7c3) is None
    assert grp_imap(cyclic_group(4), build_group("abelian(2,2)")) is None
    assert iso_coset(cyclic_group(6), build_group("sym(3)")) is None


def test_isomorphism_coset(alt4):
    copy = build_group("relabel(alt(4), 9)")
    aut, hom = iso_coset(alt4, copy)
    assert aut.order() == 24
    assert hom.is_bijective()
    for phi in aut.generators:
        assert np.unique(hom.images[np.asarray(phi)]).size == 12
