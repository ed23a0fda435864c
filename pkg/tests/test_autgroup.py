import numpy as np
import pytest

from src.abelian.basis import abelian_basis
from src.abelian.matrices import automorphism_permutations
from src.errors import PreconditionError, ResourceExhausted
from src.harness.corpus import C7_C3, V4_C3
from src.harness.dsl import build_group, cyclic_group
from src.perm.chain import PermGroup
from src.structure.autgroup import aut_agroup, lift_aut
from src.structure.bruteforce import aut_bruteforce, oracle_iso, partial_map
from src.structure.complements import characteristic_complement


@pytest.mark.parametrize(
    "expr, order",
    [
        ("cyclic(1)", 1),
        ("cyclic(5)", 4),
        ("cyclic(6)", 2),
        ("sym(3)", 6),
        ("alt(4)", 24),
        (C7_C3, 42),
        (V4_C3, 24),
        ("direct(sym(3), alt(4))", 144),
        ("abelian(2,4)", 8),
    ],
)
def test_aut_orders(expr, order):
    result = aut_agroup(build_group(expr))
    assert result.order() == order
    assert result.exact
    assert all(result.group.is_automorphism_perm(phi) for phi in result.aut.generators)


def test_methods_and_levels(alt4):
    assert aut_agroup(cyclic_group(1)).method == "trivial"
    assert aut_agroup(cyclic_group(6)).method == "abelian-base"
    result = aut_agroup(alt4)
    assert result.method == "recursive"
    assert result.levels == ["recursive", "abelian-base"]


def test_perfect_base_uses_backtracking():
    result = aut_agroup(build_group("alt(5)"))
    assert result.method == "brute-force-base"
    assert result.order() == 120


@pytest.mark.parametrize("expr", ["sym(3)", "alt(4)", C7_C3, "direct(cyclic(3), sym(3))", "direct(cyclic(2), alt(4))"])
def test_matches_backtracking(expr):
    G = build_group(expr)
    assert aut_agroup(G).aut == aut_bruteforce(G)


def test_rejects_non_agroups():
    with pytest.raises(PreconditionError):
        aut_agroup(build_group("sym(4)"))


def test_lift_from_complement(alt4):
    cc = characteristic_complement(alt4)
    H_local, _ = cc.H.as_group()
    autH = PermGroup(H_local.order, automorphism_permutations(abelian_basis(H_local)))
    lifted = lift_aut(alt4, cc, autH)
    assert lifted.aut.order() == 24
    assert lifted.exact
    assert all(len(nu) == 4 and len(eta) == 3 for nu, eta in lifted.pairs)


def test_lift_checks_degree(alt4):
    cc = characteristic_complement(alt4)
    with pytest.raises(PreconditionError):
        lift_aut(alt4, cc, PermGroup(5))


@pytest.mark.slow
def test_radical_times_perfect_group():
    assert aut_agroup(build_group("direct(cyclic(3), alt(5))")).order() == 240


def test_partial_map():
    C6 = cyclic_group(6)
    assert partial_map(C6, C6, [1], [5]).tolist() == [0, 5, 4, 3, 2, 1]
    assert partial_map(C6, C6, [1], [2]) is None
    assert partial_map(C6, C6, [2], [4]).tolist() == [0, -1, 4, -1, 2, -1]


def test_oracle_iso(alt4, v4c3):
    hom = oracle_iso(v4c3, alt4)
    assert hom is not None and hom.is_bijective()
    assert oracle_iso(cyclic_group(4), build_group("abelian(2,2)")) is None
    assert oracle_iso(cyclic_group(4), cyclic_group(5)) is None
    assert oracle_iso(build_group("cyclic(21)"), build_group(C7_C3)) is None


def test_backtracking_budget(alt4):
    with pytest.raises(ResourceExhausted):
        aut_bruteforce(alt4, budget=1)
    with pytest.raises(ResourceExhausted):
        oracle_iso(alt4, build_group("relabel(alt(4), 3)"), budget=1)


def test_relabelled_groups_are_found(sym3_alt4):
    copy = build_group("relabel(direct(sym(3), alt(4)), 11)")
    hom = oracle_iso(sym3_alt4, copy)
    assert hom is not None
    assert np.unique(hom.images).size == 72
