import numpy as np
import pytest

from src.errors import PreconditionError
from src.groups.subgroups import closure, is_complement, is_normal, sylow_subgroup
from src.harness.corpus import C7_C3, V4_C3
from src.harness.dsl import build_group, cyclic_group
from src.structure.bruteforce import aut_bruteforce
from src.structure.complements import (
    characteristic_complement,
    complement_abelian_radical,
    hall_subgroup,
    schur_zassenhaus,
    sylow_system,
)


def test_schur_zassenhaus_on_semidirect_products(c7c3, alt4):
    A = sylow_subgroup(c7c3, 7)
    H = schur_zassenhaus(c7c3, A)
    assert H.order == 3 and is_complement(A, H)
    V = sylow_subgroup(alt4, 2)
    H = schur_zassenhaus(alt4, V)
    assert H.order == 3 and is_complement(V, H)


def test_schur_zassenhaus_trivial_subgroup(sym3):
    assert schur_zassenhaus(sym3, sym3.trivial).order == 6


def test_schur_zassenhaus_preconditions(sym3):
    C4 = cyclic_group(4)
    with pytest.raises(PreconditionError):
        schur_zassenhaus(C4, closure(C4, [2]))
    with pytest.raises(PreconditionError):
        schur_zassenhaus(sym3, sylow_subgroup(sym3, 2))


@pytest.mark.parametrize(
    "expr, primes, order",
    [("cyclic(6)", [3], 3), ("alt(4)", [3], 3), ("alt(4)", [2], 4), ("direct(sym(3), alt(4))", [2], 8), ("direct(sym(3), alt(4))", [3], 9)],
)
def test_hall_subgroup_orders(expr, primes, order):
    G = build_group(expr)
    assert hall_subgroup(G, G.whole, primes).order == order


def test_hall_subgroup_needs_solvable():
    A5 = build_group("alt(5)")
    with pytest.raises(PreconditionError):
        hall_subgroup(A5, A5.whole, [2])


def test_complement_of_abelian_radical():
    G = build_group("direct(cyclic(2), alt(5))")
    cc = complement_abelian_radical(G)
    assert cc.A.order == 2 and cc.H.order == 60
    assert cc.p == 2


def test_complement_of_abelian_radical_preconditions(alt4):
    with pytest.raises(PreconditionError):
        complement_abelian_radical(alt4)
    with pytest.raises(PreconditionError):
        complement_abelian_radical(build_group("alt(5)"))


def test_sylow_system_permutes(sym3_alt4):
    system = sylow_system(sym3_alt4, sym3_alt4.whole)
    assert sorted(P.order for P in system) == [8, 9]
    P, Q = system
    assert closure(sym3_alt4, list(P.elements) + list(Q.elements)).order == P.order * Q.order


def test_characteristic_complement_of_alt4(alt4):
    cc = characteristic_complement(alt4)
    assert cc.A.order == 4 and cc.H.order == 3
    assert cc.p == 2
    for phi in aut_bruteforce(alt4).generators:
        assert set(phi[cc.A.elements].tolist()) == set(cc.A.elements.tolist())


def test_characteristic_complement_of_cyclic_group():
    cc = characteristic_complement(cyclic_group(6))
    assert (cc.A.order, cc.H.order, cc.p) == (2, 3, 2)


@pytest.mark.parametrize("expr", [C7_C3, V4_C3, "direct(sym(3), alt(4))", "direct(cyclic(3), sym(3))"])
def test_characteristic_complement_axioms(expr):
    G = build_group(expr)
    cc = characteristic_complement(G)
    assert cc.A.is_abelian and not cc.A.is_trivial
    assert is_normal(G, cc.A)
    assert is_complement(cc.A, cc.H)
    assert set(G.element_orders[cc.A.elements].tolist()) <= {cc.p**i for i in range(8)}
    autG = aut_bruteforce(G)
    rng = np.random.default_rng(G.order)
    A = set(cc.A.elements.tolist())
    for _ in range(50):
        phi = np.asarray(autG.random_element(rng))
        assert set(phi[cc.A.elements].tolist()) == A


def test_characteristic_complement_needs_radical():
    with pytest.raises(PreconditionError):
        characteristic_complement(build_group("alt(5)"))
