"""End(A) of an abelian p-group as block matrices over its homocyclic decomposition.

A matrix M acts on coordinate row vectors, x -> xM, column c reduced mod the order of the c-th
cyclic generator. Block (i, j) encodes Hom(A_i, A_j): its entries are multiples of e_j / gcd(e_i, e_j).
"""

from __future__ import annotations

from math import gcd
from typing import Optional, Sequence

import numpy as np
from sympy import primitive_root

from src.abelian.basis import AbelianBasis, HomocyclicDecomposition
from src.abelian.linalg import inverse_mod_p, is_invertible_mod_p
from src.errors import InternalConsistencyError, NotAHomomorphismError, PreconditionError
from src.groups.cayley import GroupHom


class HomMatrix:
    def __init__(self, decomposition: HomocyclicDecomposition, array: np.ndarray, check: bool = True):
        self.decomposition = decomposition
        moduli = decomposition.moduli
        a = np.asarray(array, dtype=np.int64).reshape(decomposition.rank, decomposition.rank) % moduli
        if check and ((a * moduli[:, None]) % moduli[None, :]).any():
            raise NotAHomomorphismError("Matrix entries violate the exponent divisibility of Hom(A_i, A_j)")
        a.setflags(write=False)
        self.array = a

    @classmethod
    def identity(cls, decomposition: HomocyclicDecomposition) -> "HomMatrix":
        return cls(decomposition, np.eye(decomposition.rank, dtype=np.int64), check=False)

    @classmethod
    def zero(cls, decomposition: HomocyclicDecomposition) -> "HomMatrix":
        return cls(decomposition, np.zeros((decomposition.rank, decomposition.rank), dtype=np.int64), check=False)

    def __repr__(self) -> str:
        return f"HomMatrix({self.array.tolist()})"

    def _wrap(self, array: np.ndarray) -> "HomMatrix":
        return HomMatrix(self.decomposition, array, check=False)

    def __matmul__(self, other: "HomMatrix") -> "HomMatrix":
        """self, then other."""
        return self._wrap(self.array @ other.array)

    def __add__(self, other: "HomMatrix") -> "HomMatrix":
        return self._wrap(self.array + other.array)

    def __sub__(self, other: "HomMatrix") -> "HomMatrix":
        return self._wrap(self.array - other.array)

    def __neg__(self) -> "HomMatrix":
        return self._wrap(-self.array)

    def __rmul__(self, scalar: int) -> "HomMatrix":
        return self._wrap(int(scalar) * self.array)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomMatrix):
            return NotImplemented
        return self.decomposition == other.decomposition and np.array_equal(self.array, other.array)

    def __hash__(self) -> int:
        return hash(self.array.tobytes())

    def is_zero(self) -> bool:
        return not self.array.any()

    def act(self, coords: np.ndarray) -> np.ndarray:
        return (np.asarray(coords, dtype=np.int64) @ self.array) % self.decomposition.moduli

    def block(self, i: int, j: int) -> np.ndarray:
        d = self.decomposition
        return self.array[d.block(i), d.block(j)]

    def lambda_map(self) -> tuple[np.ndarray, ...]:
        """Diagonal blocks mod p, as endomorphisms of A_i / pA_i."""
        p = self.decomposition.p
        return tuple(self.block(i, i) % p for i in range(len(self.decomposition.components)))

    def is_automorphism(self) -> bool:
        p = self.decomposition.p
        return all(is_invertible_mod_p(b, p) for b in self.lambda_map())

    def inverse(self) -> "HomMatrix":
        if not self.is_automorphism():
            raise PreconditionError("Matrix is not invertible: a diagonal block is singular mod p")
        d = self.decomposition
        start = np.zeros((d.rank, d.rank), dtype=np.int64)
        for i, block in enumerate(self.lambda_map()):
            start[d.block(i), d.block(i)] = inverse_mod_p(block, d.p)
        approx = self._wrap(start)
        one = HomMatrix.identity(d)
        # 1 - M X0 lies in the radical, hence is nilpotent
        radical = one - self @ approx
        series = one
        power = radical
        for _ in range(4 * (d.rank + 1) * (d.k + 1)):
            if power.is_zero():
                break
            series = series + power
            power = power @ radical
        else:
            raise InternalConsistencyError("Radical element failed to be nilpotent")
        result = approx @ series
        if self @ result != one:
            raise InternalConsistencyError("Matrix inverse check failed")
        return result

    def to_permutation(self) -> np.ndarray:
        """The induced map on element indices of the basis' group."""
        basis = self.decomposition.basis
        images = self.act(basis.coordinate_matrix)
        return np.asarray(basis.element(images), dtype=np.intp)

    def to_hom(self) -> GroupHom:
        basis = self.decomposition.basis
        if basis.group is None:
            raise PreconditionError("A virtual basis has no group to map")
        return GroupHom(basis.group, basis.group, self.to_permutation(), validate=False)


def endo_to_matrix(psi: GroupHom | np.ndarray, decomposition: HomocyclicDecomposition, validate: bool = True) -> HomMatrix:
    """Rows are the coordinates of the images of the cyclic generators."""
    basis = decomposition.basis
    images = psi.images if isinstance(psi, GroupHom) else np.asarray(psi, dtype=np.intp)
    if validate and basis.group is not None:
        GroupHom(basis.group, basis.group, images, validate=True)
    rows = basis.coordinate_matrix[images[list(basis.generators)]] if basis.group is not None else basis.coords_of_key[images[basis.radix]]
    matrix = HomMatrix(decomposition, rows)
    if validate and not np.array_equal(matrix.to_permutation(), images):
        raise NotAHomomorphismError("Map is not determined by the generator images")
    return matrix


def matrix_to_endo(M: HomMatrix) -> GroupHom:
    return M.to_hom()


def unit_generators(e: int, p: int) -> list[int]:
    """Generators of (Z/e)^x for a prime power e = p^k."""
    if e == 2:
        return []
    if p == 2:
        return [e - 1] if e == 4 else [e - 1, 5]
    return [int(primitive_root(e))]


def automorphism_generators(decomposition: HomocyclicDecomposition) -> list[HomMatrix]:
    """Generators of Aut(A): per block transvections and unit diagonals, per block pair the minimal off-diagonal maps."""
    d = decomposition
    t = d.rank
    gens: list[HomMatrix] = []

    def elementary(r: int, s: int, value: int) -> HomMatrix:
        a = np.eye(t, dtype=np.int64)
        a[r, s] = value
        return HomMatrix(d, a)

    for e, m, positions in d.components:
        first = positions[0]
        for u in unit_generators(e, d.p):
            gens.append(elementary(first, first, u))
        for r in positions:
            for s in positions:
                if r != s:
                    gens.append(elementary(r, s, 1))
    for i, (ei, _, rows) in enumerate(d.components):
        for j, (ej, _, cols) in enumerate(d.components):
            if i == j:
                continue
            c = ej // gcd(ei, ej)
            for r in rows:
                for s in cols:
                    gens.append(elementary(r, s, c))
    return gens


def endomorphism_basis(decomposition: HomocyclicDecomposition) -> list[tuple[HomMatrix, int]]:
    """Additive generators E_rs of End(A), each scaled minimally, with their additive orders."""
    d = decomposition
    moduli = d.moduli
    result = []
    for r in range(d.rank):
        for s in range(d.rank):
            g = gcd(int(moduli[r]), int(moduli[s]))
            a = np.zeros((d.rank, d.rank), dtype=np.int64)
            a[r, s] = int(moduli[s]) // g
            result.append((HomMatrix(d, a), g))
    return result


def automorphism_count(decomposition: HomocyclicDecomposition) -> int:
    """|Aut(A)| from |End(A)| and the orders of the GL_m(F_p) images."""
    d = decomposition
    p = d.p
    end_size = 1
    for _, order in endomorphism_basis(d):
        end_size *= order
    ratio_num, ratio_den = 1, 1
    for _, m, _ in d.components:
        # |GL_m(F_p)| / p^(m^2)
        for i in range(m):
            ratio_num *= p**m - p**i
        ratio_den *= p ** (m * m)
    return end_size * ratio_num // ratio_den


def automorphism_permutations(basis: AbelianBasis) -> list[np.ndarray]:
    """Generators of Aut(G) for an abelian group G as permutations of its elements, prime by prime."""
    if basis.group is None:
        raise PreconditionError("A virtual basis has no group to act on")
    perms: list[np.ndarray] = []
    for p in sorted(set(basis.primes)):
        positions = [i for i, q in enumerate(basis.primes) if q == p]
        sub = AbelianBasis.standard([basis.orders[i] for i in positions])
        d = sub.homocyclic()
        for M in automorphism_generators(d):
            full = np.eye(basis.rank, dtype=np.int64)
            full[np.ix_(positions, positions)] = M.array
            images = (basis.coordinate_matrix @ full) % basis.moduli
            perms.append(np.asarray(basis.element(images), dtype=np.intp))
    return perms


def random_matrix(decomposition: HomocyclicDecomposition, rng: np.random.Generator, automorphism: Optional[bool] = None) -> HomMatrix:
    """A uniform random element of End(A), or of Aut(A) when automorphism is True."""
    while True:
        total = HomMatrix.zero(decomposition)
        for E, order in endomorphism_basis(decomposition):
            total = total + int(rng.integers(order)) * E
        if not automorphism or total.is_automorphism():
            return total


def hom_matrix_from_blocks(decomposition: HomocyclicDecomposition, blocks: Sequence[np.ndarray]) -> HomMatrix:
    """Block-diagonal matrix with the given diagonal blocks lifted verbatim."""
    d = decomposition
    a = np.zeros((d.rank, d.rank), dtype=np.int64)
    for i, block in enumerate(blocks):
        a[d.block(i), d.block(i)] = np.asarray(block, dtype=np.int64)
    return HomMatrix(d, a)

