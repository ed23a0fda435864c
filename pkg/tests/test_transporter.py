import numpy as np
import pytest

from src.config import override_settings
from src.errors import PreconditionError, ResourceExhausted
from src.perm.chain import PermGroup
from src.perm.coset import Coset
from src.perm.perms import from_cycles, identity_perm
from src.perm.transporter import GroupString, maps_to, stabilizes, string_isomorphisms, subset_transporter

ROTATION = from_cycles([(0, 1, 2, 3)], 4)


def sym(n):
    return PermGroup(n, [from_cycles([(0, 1)], n), from_cycles([tuple(range(n))], n)])


def brute_subset(P, A, B):
    return [g for g in P.elements() if set(int(g[a]) for a in A) == set(B)]


def test_subset_transporter_single_point():
    found = subset_transporter(sym(3), [0], [1])
    assert found.size() == 2


def test_subset_transporter_empty_sets_give_everything():
    S3 = sym(3)
    found = subset_transporter(S3, [], [])
    assert found.size() == 6
    assert np.array_equal(found.representative, identity_perm(3))


def test_subset_transporter_no_solution():
    assert subset_transporter(PermGroup(4, [ROTATION]), [0, 2], [0, 1]).is_empty
    assert subset_transporter(sym(4), [0], [1, 2]).is_empty


@pytest.mark.parametrize("A, B", [([0, 1], [2, 3]), ([0, 1, 2], [1, 3, 4]), ([4], [0]), ([0, 3], [3, 0])])
def test_subset_transporter_matches_enumeration(A, B):
    S5 = sym(5)
    found = subset_transporter(S5, A, B)
    expected = brute_subset(S5, A, B)
    assert found.size() == len(expected)
    assert all(g in found for g in expected)


def test_subset_transporter_inside_coset():
    S4 = sym(4)
    start = Coset(4, S4.pointwise_stabilizer([0]), from_cycles([(0, 1)], 4))
    found = subset_transporter(start, [2, 3], [2, 3])
    assert all(g[0] == 1 and set(g[[2, 3]].tolist()) == {2, 3} for g in found.elements())
    assert found.size() == 2


def test_subset_transporter_cap():
    with pytest.raises(ResourceExhausted):
        subset_transporter(sym(5), [0, 1, 2], [0, 1, 2], cap=2)
    override_settings(subset_cap=1)
    with pytest.raises(ResourceExhausted):
        subset_transporter(sym(5), [0, 1], [0, 1])


def test_string_isomorphism_rotation():
    P = PermGroup(4, [ROTATION])
    f1 = GroupString([1, 2, 2, 2], 2)
    f2 = GroupString([2, 1, 2, 2], 2)
    found = string_isomorphisms(P, f1, f2)
    assert found.size() == 1
    assert ROTATION in found
    assert maps_to(ROTATION, f1, f2)


def test_string_isomorphism_constant_strings():
    P = PermGroup(4, [ROTATION])
    f = GroupString([1, 1, 1, 1], 1)
    assert string_isomorphisms(P, f, f).size() == 4
    assert stabilizes(ROTATION, f)


def test_string_isomorphism_none():
    P = PermGroup(4, [ROTATION])
    found = string_isomorphisms(P, GroupString([1, 1, 2, 2], 2), GroupString([1, 2, 1, 2], 2))
    assert found.is_empty


def test_string_isomorphisms_are_exact_in_sym4():
    S4 = sym(4)
    f1 = GroupString([1, 2, 3, 3], 3)
    f2 = GroupString([3, 3, 2, 1], 3)
    found = string_isomorphisms(S4, f1, f2)
    expected = [g for g in S4.elements() if maps_to(g, f1, f2)]
    assert found.size() == len(expected) == 2


def test_strings_must_share_alphabet():
    with pytest.raises(PreconditionError):
        string_isomorphisms(sym(3), GroupString([1, 2, 2], 2), GroupString([1, 2, 3], 3))
    with pytest.raises(PreconditionError):
        GroupString([0, 1], 2)
