import numpy as np
import pytest

from src.abelian.basis import AbelianBasis
from src.abelian.matrices import HomMatrix
from src.config import override_settings
from src.harness.dsl import cyclic_group
from src.reps.intertwiner import (
    CentralizerRing,
    GroupRing,
    hom_module,
    intertwining_coset,
    module_isomorphism,
    unit_density_consistent,
    unit_group,
)
from src.reps.representation import Representation

TRANSVECTION = [[1, 1], [0, 1]]


def on_c2(orders, array):
    return Representation.from_arrays(cyclic_group(2), orders, [np.array(array)])


def brute_intertwiners(alpha, beta):
    d = alpha.decomposition
    found = []
    for entries in np.ndindex(*(d.p,) * (d.rank * d.rank)):
        M = HomMatrix(d, np.array(entries).reshape(d.rank, d.rank))
        if M.is_automorphism() and alpha.act_by_autA(M) == beta:
            found.append(M)
    return found


def test_hom_module_of_trivial_actions_is_everything():
    trivial = Representation.trivial(cyclic_group(3), AbelianBasis.standard([2, 4]).homocyclic())
    assert hom_module(trivial, trivial).size() == 2 * 2 * 2 * 4


def test_hom_module_diagonal_and_antidiagonal():
    alpha = on_c2([3, 3], np.diag([1, 2]))
    beta = on_c2([3, 3], np.diag([2, 1]))
    diagonal = hom_module(alpha, alpha)
    assert diagonal.size() == 9
    assert all(M.array[0, 1] == 0 and M.array[1, 0] == 0 for M in diagonal.elements())
    antidiagonal = hom_module(alpha, beta)
    assert antidiagonal.size() == 9
    assert HomMatrix(alpha.decomposition, [[0, 1], [1, 0]]) in antidiagonal
    assert HomMatrix.identity(alpha.decomposition) not in antidiagonal


def test_hom_module_elements_intertwine():
    alpha = on_c2([3, 9], np.diag([2, 8]))
    for M in hom_module(alpha, alpha).elements():
        assert alpha.image(1) @ M == M @ alpha.image(1)


def test_module_isomorphism_non_coprime():
    alpha = on_c2([2, 2], TRANSVECTION)
    beta = on_c2([2, 2], [[1, 0], [1, 1]])
    psi = module_isomorphism(alpha, beta)
    assert psi is not None
    assert alpha.act_by_autA(psi) == beta
    assert module_isomorphism(alpha, alpha) == HomMatrix.identity(alpha.decomposition)


def test_module_isomorphism_absent():
    alpha = on_c2([3, 3], np.diag([1, 2]))
    beta = on_c2([3, 3], np.eye(2, dtype=int))
    assert module_isomorphism(alpha, beta) is None
    assert intertwining_coset(alpha, beta).is_empty


def test_intertwining_coset_sizes():
    alpha = on_c2([3, 3], np.diag([1, 2]))
    beta = on_c2([3, 3], np.diag([2, 1]))
    assert intertwining_coset(alpha, alpha).size() == 4
    swapped = intertwining_coset(alpha, beta)
    assert swapped.size() == 4
    assert HomMatrix(alpha.decomposition, [[0, 1], [1, 0]]).to_permutation() in swapped


@pytest.mark.parametrize(
    "alpha, beta",
    [
        (on_c2([3, 3], np.diag([1, 2])), on_c2([3, 3], np.diag([2, 1]))),
        (on_c2([2, 2], TRANSVECTION), on_c2([2, 2], [[1, 0], [1, 1]])),
        (on_c2([2, 2, 2], np.eye(3, dtype=int)), on_c2([2, 2, 2], np.eye(3, dtype=int))),
    ],
)
def test_intertwining_coset_matches_enumeration(alpha, beta):
    coset = intertwining_coset(alpha, beta)
    expected = brute_intertwiners(alpha, beta)
    assert coset.size() == len(expected)
    assert all(M.to_permutation() in coset for M in expected)


def test_trivial_action_coset_is_all_automorphisms():
    alpha = Representation.trivial(cyclic_group(3), AbelianBasis.standard([2, 4]).homocyclic())
    assert intertwining_coset(alpha, alpha).size() == 8


def test_unit_groups():
    scalars = Representation.trivial(cyclic_group(3), AbelianBasis.standard([4]).homocyclic())
    assert unit_group(scalars).order() == 2
    matrices = Representation.trivial(cyclic_group(3), AbelianBasis.standard([2, 2]).homocyclic())
    assert unit_group(matrices).order() == 6
    transvection = on_c2([2, 2], TRANSVECTION)
    ring = CentralizerRing(transvection)
    assert ring.order() == 4
    units = unit_group(ring)
    assert units.exact
    assert units.order() == 2
    assert HomMatrix(transvection.decomposition, TRANSVECTION) in ring


def test_sampled_unit_group_is_flagged():
    override_settings(ring_exhaustive_cap=1)
    alpha = on_c2([3, 3], np.diag([1, 2]))
    units = unit_group(alpha, seed=4)
    assert not units.exact
    assert units.order() == 4
    assert units.samples >= units.units_sampled > 0
    assert unit_density_consistent(units.order(), CentralizerRing(alpha).order(), units.units_sampled, units.samples)


def test_unit_density_check():
    assert unit_density_consistent(4, 9, 440, 1000)
    assert not unit_density_consistent(2, 9, 440, 1000)
    assert not unit_density_consistent(4, 9, 0, 0)



def test_seeded_results_repeat():
    override_settings(ring_exhaustive_cap=1)
    alpha = on_c2([3, 3], np.diag([1, 2]))
    beta = on_c2([3, 3], np.diag([2, 1]))
    assert module_isomorphism(alpha, beta, seed=9) == module_isomorphism(alpha, beta, seed=9)


def test_group_ring_acts_multiplicatively():
    alpha = on_c2([3, 9], np.diag([2, 8]))
    R = GroupRing(alpha.H, 9)
    rng = np.random.default_rng(2)
    assert R.act(alpha, R.one()) == HomMatrix.identity(alpha.decomposition)
    assert R.act(alpha, R.element(1)) == alpha.image(1)
    for _ in range(10):
        x, y = R.random(rng), R.random(rng)
        assert R.act(alpha, R.mul(x, y)) == R.act(alpha, x) @ R.act(alpha, y)
    assert R.size_log2 == pytest.approx(2 * np.log2(9))


def test_hom_module_elements_are_ring_maps():
    H = cyclic_group(3)
    alpha = Representation.from_arrays(H, [2, 2], [np.array([[0, 1], [1, 1]])])
    beta = alpha.act_by_autA(HomMatrix(alpha.decomposition, TRANSVECTION))
    R = GroupRing(H, 2)
    rng = np.random.default_rng(8)
    homs = hom_module(alpha, beta)
    for _ in range(10):
        r = R.random(rng)
        M = homs.random(rng)
        assert R.act(alpha, r) @ M == M @ R.act(beta, r)
