import numpy as np
import pytest

from src.errors import NotAHomomorphismError, NotInImageError, PreconditionError
from src.perm.chain import PermGroup
from src.perm.coset import Coset, point_transporter, union_of_cosets
from src.perm.hom import TrackedHom, automorphism_permgroup, inner_automorphisms, regular_permgroup
from src.perm.perms import as_perm, compose, cycles, format_cycles, from_cycles, identity_perm, inverse


def sym(n):
    return PermGroup(n, [from_cycles([(0, 1)], n), from_cycles([tuple(range(n))], n)])


def test_compose_is_left_to_right():
    p = from_cycles([(0, 1)], 3)
    q = from_cycles([(1, 2)], 3)
    # 0 -> 1 under p, then 1 -> 2 under q
    assert compose(p, q)[0] == 2
    assert format_cycles(compose(p, q)) == "(0 2 1)"
    assert cycles(identity_perm(4)) == []
    assert np.array_equal(compose(p, inverse(p)), identity_perm(3))


def test_as_perm_rejects_non_permutations():
    with pytest.raises(PreconditionError):
        as_perm([0, 0, 1])


@pytest.mark.parametrize("n, order", [(3, 6), (4, 24), (5, 120)])
def test_symmetric_group_orders(n, order):
    assert sym(n).order() == order


def test_trivial_group():
    P = PermGroup(4)
    assert P.order() == 1
    assert identity_perm(4) in P
    assert P.orbits() == [[0], [1], [2], [3]]


def test_orbits():
    P = PermGroup(5, [from_cycles([(0, 1, 2)], 5)])
    assert P.orbit(0) == [0, 1, 2]
    assert P.orbits() == [[0, 1, 2], [3], [4]]


def test_membership_and_stabilizers():
    S4 = sym(4)
    A4 = PermGroup(4, [from_cycles([(0, 1, 2)], 4), from_cycles([(1, 2, 3)], 4)])
    assert A4.order() == 12
    assert A4.is_subgroup_of(S4)
    assert from_cycles([(0, 1)], 4) not in A4
    assert from_cycles([(0, 1), (2, 3)], 4) in A4
    assert S4.pointwise_stabilizer([0]).order() == 6
    assert S4.pointwise_stabilizer([0, 1]).order() == 2


def test_elements_random_and_reduction():
    S4 = sym(4)
    seen = {tuple(g.tolist()) for g in S4.elements()}
    assert len(seen) == 24
    rng = np.random.default_rng(0)
    assert all(S4.random_element(rng) in S4 for _ in range(20))
    padded = PermGroup(4, list(S4.generators) + [from_cycles([(0, 1, 2)], 4), from_cycles([(2, 3)], 4)])
    reduced = padded.reduce_generators()
    assert reduced == S4
    assert len(reduced.generators) <= len(padded.generators)


def test_point_transporter():
    S3 = sym(3)
    found = point_transporter(S3, 0, 1)
    assert found.size() == 2
    assert all(g[0] == 1 for g in found.elements())
    same = point_transporter(S3, 2, 2)
    assert same.size() == 2
    assert np.array_equal(same.representative, identity_perm(3))
    double_swap = PermGroup(4, [from_cycles([(0, 1), (2, 3)], 4)])
    assert point_transporter(double_swap, 0, 2).is_empty


def test_coset_operations():
    S4 = sym(4)
    found = point_transporter(S4, 0, 2)
    assert found.size() == 6
    g = next(found.elements())
    assert g in found
    shifted = found.right_multiply(from_cycles([(2, 3)], 4))
    assert all(h[0] == 3 for h in shifted.elements())
    assert Coset.empty(4).size() == 0
    assert not Coset.empty(4)


def test_union_of_cosets():
    S3 = sym(3)
    found = point_transporter(S3, 0, 1)
    assert union_of_cosets([found], 3) == found
    assert union_of_cosets([found, found], 3) == found
    assert union_of_cosets([Coset.empty(3)], 3).is_empty
    to_1 = point_transporter(S3, 0, 1)
    to_2 = point_transporter(S3, 0, 2)
    # 0 -> 0, 0 -> 1 and 0 -> 2 together cover Sym(3)
    merged = union_of_cosets([point_transporter(S3, 0, 0), to_1, to_2], 3)
    assert merged.size() == 6


def test_tracked_hom_identity():
    S4 = sym(4)
    f = TrackedHom(S4, list(S4.generators), 4)
    assert f.kernel.order() == 1
    g = from_cycles([(0, 2, 3)], 4)
    assert np.array_equal(f(g), g)
    assert np.array_equal(f.preimage(g), g)


def test_tracked_hom_sign():
    S4 = sym(4)
    swap = from_cycles([(0, 1)], 2)
    f = TrackedHom(S4, [swap, swap], 2)
    assert f.image_group.order() == 2
    assert f.kernel.order() == 12
    assert np.array_equal(f(from_cycles([(0, 1, 2)], 4)), identity_perm(2))
    assert f(f.preimage(swap))[0] == 1


def test_tracked_hom_trivial_image():
    S4 = sym(4)
    f = TrackedHom(S4, [identity_perm(3), identity_perm(3)], 3)
    assert f.kernel.order() == 24
    with pytest.raises(NotInImageError):
        f.preimage(from_cycles([(0, 1)], 3))


def test_tracked_hom_rejects_non_homomorphism():
    S3 = sym(3)
    f = TrackedHom(S3, [identity_perm(3), from_cycles([(0, 1)], 3)], 3)
    with pytest.raises(NotAHomomorphismError):
        f.kernel.order()


def test_regular_and_automorphism_groups(alt4):
    assert regular_permgroup(alt4).order() == 12
    inner = automorphism_permgroup(alt4, inner_automorphisms(alt4))
    assert inner.order() == 12
    with pytest.raises(NotAHomomorphismError):
        automorphism_permgroup(alt4, [np.roll(np.arange(12), 1)])
