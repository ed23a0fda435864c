"""Module homomorphisms between representations, module isomorphisms and the unit group of the centralizer ring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

import numpy as np
from loguru import logger

from src.abelian.basis import HomocyclicDecomposition
from src.abelian.linalg import HowellForm, howell_form, howell_solve
from src.abelian.matrices import HomMatrix, automorphism_generators
from src.config import Settings, get_settings
from src.errors import InternalConsistencyError, PreconditionError, ResourceExhausted
from src.groups.cayley import CayleyGroup
from src.perm.chain import PermGroup
from src.perm.coset import Coset
from src.reps.representation import Representation


class GroupRing:
    """(Z/e)[H]: coefficient vectors indexed by the elements of H."""

    def __init__(self, H: CayleyGroup, modulus: int):
        self.H = H
        self.modulus = int(modulus)

    @property
    def size_log2(self) -> float:
        return self.H.order * math.log2(self.modulus)

    def one(self) -> np.ndarray:
        r = np.zeros(self.H.order, dtype=np.int64)
        r[0] = 1
        return r

    def element(self, h: int) -> np.ndarray:
        r = np.zeros(self.H.order, dtype=np.int64)
        r[h] = 1
        return r

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        product = np.zeros(self.H.order, dtype=np.int64)
        for g in np.flatnonzero(x):
            np.add.at(product, self.H.table[g], x[g] * y)
        return product % self.modulus

    def random(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.modulus, size=self.H.order)

    def act(self, alpha: Representation, r: np.ndarray) -> HomMatrix:
        """The endomorphism of A by which r acts: sum of r_h * alpha(h)."""
        total = HomMatrix.zero(alpha.decomposition)
        for h in np.flatnonzero(r % self.modulus):
            total = total + int(r[h]) * alpha.image(int(h))
        return total


class HomModule:
    """Hom_H(alpha, beta) = {psi in End(A) : alpha(h) psi = psi beta(h) for all h}.

    Elements are stored embedded in (Z/p^K)^(t*t), entry (r, c) scaled by p^K / e_c, where the
    Howell form gives every element exactly once.
    """

    def __init__(self, decomposition: HomocyclicDecomposition, form: HowellForm):
        self.decomposition = decomposition
        self.form = form
        d = decomposition
        self._scale = np.tile((d.p ** d.k) // d.moduli, d.rank) if d.rank else np.zeros(0, dtype=np.int64)

    def size(self) -> int:
        return self.form.span_size()

    def log2_size(self) -> float:
        return sum(math.log2(order) for order in self.form.row_orders())

    def to_matrix(self, w: np.ndarray) -> HomMatrix:
        t = self.decomposition.rank
        return HomMatrix(self.decomposition, (np.asarray(w, dtype=np.int64) // self._scale).reshape(t, t), check=False)

    def from_matrix(self, M: HomMatrix) -> np.ndarray:
        return M.array.reshape(-1) * self._scale % self.form.modulus

    def __contains__(self, M: HomMatrix) -> bool:
        return self.form.contains(self.from_matrix(M))

    def elements(self) -> Iterator[HomMatrix]:
        for w in self.form.combinations():
            yield self.to_matrix(w)

    def random(self, rng: np.random.Generator) -> HomMatrix:
        return self.to_matrix(self.form.random_element(rng))

    def generators(self) -> list[tuple[HomMatrix, int]]:
        """Additive generators with their exact additive orders."""
        return [(self.to_matrix(row), order) for row, order in zip(self.form.rows, self.form.row_orders())]


def hom_module(alpha: Representation, beta: Representation) -> HomModule:
    if alpha.decomposition != beta.decomposition or not alpha.H.same_table(beta.H):
        raise PreconditionError("alpha and beta must be representations of one group on one module")
    d = alpha.decomposition
    t = d.rank
    p, K = d.p, d.k
    if t == 0:
        return HomModule(d, HowellForm(p=p, k=K, ncols=0))
    q = p**K
    moduli = d.moduli
    gcds = np.gcd(moduli[:, None], moduli[None, :])
    # psi_rc = step[r, c] * v_rc with v_rc free
    step = moduli[None, :] // gcds
    scale = q // moduli

    blocks = []
    for Ma, Mb in zip(alpha.generator_images, beta.generator_images):
        a, b = Ma.array, Mb.array
        coefficients = np.zeros((t * t, t * t), dtype=np.int64)
        for r in range(t):
            for c in range(t):
                equation = r * t + c
                for j in range(t):
                    # alpha(h)_rj psi_jc - psi_rj beta(h)_jc, mod e_c
                    coefficients[j * t + c, equation] += a[r, j] * step[j, c]
                    coefficients[r * t + j, equation] -= step[r, j] * b[j, c]
                coefficients[:, equation] *= scale[c]
        blocks.append(coefficients % q)
    system = np.hstack(blocks) if blocks else np.zeros((t * t, 0), dtype=np.int64)
    if system.shape[1]:
        _, kernel = howell_solve(system, np.zeros(system.shape[1], dtype=np.int64), p, K)
        solutions = kernel.rows
    else:
        solutions = [np.eye(t * t, dtype=np.int64)[i] for i in range(t * t)]
    embedded = [(np.asarray(v).reshape(t, t) * step % moduli[None, :]).reshape(-1) * np.tile(scale, t) % q for v in solutions]
    module = HomModule(d, howell_form(embedded, p, K, ncols=t * t))
    logger.debug(f"Hom module over {d.basis.orders}: order {module.size()}")
    return module


def _is_identity_pair(alpha: Representation, beta: Representation) -> bool:
    return all(a == b for a, b in zip(alpha.generator_images, beta.generator_images))


def module_isomorphism(alpha: Representation, beta: Representation, seed: Optional[int] = None, settings: Optional[Settings] = None) -> Optional[HomMatrix]:
    """Some psi in Aut(A) with alpha^psi = beta, or None when there is none."""
    settings = settings or get_settings()
    if _is_identity_pair(alpha, beta):
        return HomMatrix.identity(alpha.decomposition)
    homs = hom_module(alpha, beta)
    size = homs.size()
    if size <= settings.ring_exhaustive_cap:
        return next((M for M in homs.elements() if M.is_automorphism()), None)

    rng = np.random.default_rng(settings.seed if seed is None else seed)
    trials = 64 * (1 + math.ceil(homs.log2_size()))
    for _ in range(trials):
        M = homs.random(rng)
        if M.is_automorphism():
            return M
    if size > settings.ring_hard_cap:
        raise ResourceExhausted(f"No module isomorphism in {trials} samples; Hom has {size} elements, above the cap")
    logger.warning(f"Random search failed; scanning all {size} module homomorphisms")
    return next((M for M in homs.elements() if M.is_automorphism()), None)


@dataclass
class UnitGroup:
    """Generators of the units of End_H(alpha), acting on the elements of A."""

    decomposition: HomocyclicDecomposition
    generators: list[HomMatrix]
    exact: bool
    samples: int = 0
    units_sampled: int = 0

    @cached_property
    def permgroup(self) -> PermGroup:
        return PermGroup(self.decomposition.basis.size, [M.to_permutation() for M in self.generators])

    def order(self) -> int:
        return self.permgroup.order()


class CentralizerRing:
    """K = End_H(alpha), the endomorphisms of A commuting with every alpha(h)."""

    def __init__(self, alpha: Representation):
        self.alpha = alpha

    @cached_property
    def module(self) -> HomModule:
        return hom_module(self.alpha, self.alpha)

    def order(self) -> int:
        return self.module.size()

    def __contains__(self, M: HomMatrix) -> bool:
        return M in self.module


DENSITY_RETRIES = 4


def unit_density_consistent(generated: int, size: int, units: int, samples: int) -> bool:
    """True when |generated| / |K| is within sampling error of the observed unit proportion."""
    if samples == 0:
        return False
    observed = units / samples
    expected = generated / size
    tolerance = 4 * math.sqrt(max(observed * (1 - observed), 1 / samples) / samples)
    return abs(observed - expected) <= tolerance


def unit_group(K: CentralizerRing | Representation, seed: Optional[int] = None, settings: Optional[Settings] = None) -> UnitGroup:
    settings = settings or get_settings()
    ring = K if isinstance(K, CentralizerRing) else CentralizerRing(K)
    d = ring.alpha.decomposition
    if ring.alpha.is_trivial:
        return UnitGroup(d, automorphism_generators(d), exact=True)

    degree = d.basis.size
    generated = PermGroup(degree)
    gens: list[HomMatrix] = []
    size = ring.order()
    if size <= settings.ring_exhaustive_cap:
        units = [M for M in ring.module.elements() if M.is_automorphism()]
        for M in units:
            if generated.order() == len(units):
                break
            perm = M.to_permutation()
            if not generated.contains(perm):
                gens.append(M)
                generated = generated.closure([perm])
        logger.debug(f"Unit group of a ring of order {size}: {len(units)} units, {len(gens)} generators")
        return UnitGroup(d, gens, exact=True)

    rng = np.random.default_rng(settings.seed if seed is None else seed)
    patience = 32 * max(1, math.ceil(ring.module.log2_size()))
    samples = units_seen = 0
    for _ in range(DENSITY_RETRIES + 1):
        stable = 0
        while stable < patience:
            M = ring.module.random(rng)
            samples += 1
            if not M.is_automorphism():
                continue
            units_seen += 1
            perm = M.to_permutation()
            if generated.contains(perm):
                stable += 1
                continue
            gens.append(M)
            generated = generated.closure([perm])
            stable = 0
        if unit_density_consistent(generated.order(), size, units_seen, samples):
            break
        logger.debug(f"Sampled unit density {units_seen}/{samples} exceeds {generated.order()}/{size}; sampling on")
    else:
        raise InternalConsistencyError(
            f"Generated {generated.order()} of {size} ring elements but sampled unit density is {units_seen}/{samples}"
        )
    logger.warning(f"Unit group of a ring of order {size} generated by random sampling; generation is unverified")
    return UnitGroup(d, gens, exact=False, samples=samples, units_sampled=units_seen)



def intertwining_coset(alpha: Representation, beta: Representation, seed: Optional[int] = None, settings: Optional[Settings] = None) -> Coset:
    """{psi in Aut(A) : alpha^psi = beta} as permutations of the elements of A."""
    d = alpha.decomposition
    degree = d.basis.size
    mu = module_isomorphism(alpha, beta, seed=seed, settings=settings)
    if mu is None:
        return Coset.empty(degree)
    units = unit_group(CentralizerRing(alpha), seed=seed, settings=settings)
    return Coset(degree, units.permgroup, mu.to_permutation())

