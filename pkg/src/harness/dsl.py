"""Construction language for corpus groups.

    cyclic(n)  elab(p, k)  abelian(n1, n2, ...)  sym(n)  alt(n)
    direct(e1, e2)  semidirect(eA, eH, pow(k) | mats(M1, M2, ...))
    table(path)  relabel(e, seed)

Matrices are written [[a, b], [c, d]] and act on row vectors of coordinates over the cyclic
basis of the normal factor, one matrix per generator of the acting group.
"""

from __future__ import annotations

import re
from itertools import permutations
from pathlib import Path
from typing import Optional, Union

import numpy as np
from loguru import logger

from src.abelian.basis import abelian_basis
from src.errors import ParseError
from src.groups.cayley import CayleyGroup
from src.groups.io import read_group
from src.groups.numbers import require_prime
from src.groups.products import direct_product, semidirect_product

MAX_SYMMETRIC_DEGREE = 6
TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def cyclic_group(n: int) -> CayleyGroup:
    if n < 1:
        raise ParseError(f"cyclic(n) needs n >= 1, got {n}")
    arange = np.arange(n)
    return CayleyGroup((arange[:, None] + arange[None, :]) % n, name=f"C{n}", generators=[1] if n > 1 else [])


def abelian_group(orders: list[int]) -> CayleyGroup:
    if not orders:
        return cyclic_group(1)
    G = cyclic_group(orders[0])
    for n in orders[1:]:
        G, _, _ = direct_product(G, cyclic_group(n))
    G.name = "x".join(f"C{n}" for n in orders)
    return G


def _permutation_table(perms: np.ndarray) -> np.ndarray:
    """Table of a list of lexicographically sorted permutations closed under composition (p then q)."""
    n = perms.shape[1]
    radix = n ** np.arange(n - 1, -1, -1)
    codes = perms @ radix
    size = perms.shape[0]
    # products[i, j, x] = perms[j][perms[i][x]]
    products = perms[np.arange(size)[None, :, None], perms[:, None, :]]
    return np.searchsorted(codes, products @ radix)


def _symmetric_perms(n: int) -> np.ndarray:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise ParseError(f"sym/alt support degrees 1..{MAX_SYMMETRIC_DEGREE}, got {n}")
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


def symmetric_group(n: int) -> CayleyGroup:
    return CayleyGroup(_permutation_table(_symmetric_perms(n)), name=f"Sym({n})")


def alternating_group(n: int) -> CayleyGroup:
    perms = _symmetric_perms(n)
    inversions = (perms[:, :, None] > perms[:, None, :]) & np.triu(np.ones((n, n), dtype=bool), k=1)
    even = perms[inversions.sum(axis=(1, 2)) % 2 == 0]
    return CayleyGroup(_permutation_table(even), name=f"Alt({n})")


def matrix_action(A: CayleyGroup, matrix: np.ndarray) -> np.ndarray:
    """The permutation x -> x M of A in cyclic-basis coordinates."""
    basis = abelian_basis(A)
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.shape != (basis.rank, basis.rank):
        raise ParseError(f"Action matrix must be {basis.rank}x{basis.rank}, got {matrix.shape}")
    return np.asarray(basis.element(basis.coordinate_matrix @ matrix), dtype=np.intp)


def relabel_group(G: CayleyGroup, seed: int) -> CayleyGroup:
    """A seeded random renaming of the non-identity elements."""
    rng = np.random.default_rng(seed)
    sigma = np.concatenate([[0], 1 + rng.permutation(G.order - 1)]).astype(np.intp)
    return G.relabel(sigma, name=f"relabel({G.name}, {seed})")


class _Parser:
    def __init__(self, text: str, base_dir: Path):
        self.text = text
        self.pos = 0
        self.base_dir = base_dir

    def _peek(self) -> tuple[str, str]:
        match = TOKEN.match(self.text, self.pos)
        if match is None:
            return "end", ""
        number, name, symbol = match.groups()
        if number is not None:
            return "int", number
        if name is not None:
            return "name", name
        if symbol is not None:
            return "symbol", symbol
        return "end", ""

    def _next(self) -> tuple[str, str]:
        kind, value = self._peek()
        if kind != "end":
            self.pos = TOKEN.match(self.text, self.pos).end()
        return kind, value

    def _expect(self, symbol: str) -> None:
        kind, value = self._next()
        if (kind, value) != ("symbol", symbol):
            raise ParseError(f"Expected {symbol!r} at offset {self.pos}, got {value or 'end of input'!r}")

    def _int(self) -> int:
        kind, value = self._next()
        if kind != "int":
            raise ParseError(f"Expected an integer at offset {self.pos}, got {value or 'end of input'!r}")
        return int(value)

    def _ints(self) -> list[int]:
        values = [self._int()]
        while self._peek() == ("symbol", ","):
            self._next()
            values.append(self._int())
        return values

    def _matrix(self) -> np.ndarray:
        self._expect("[")
        rows = []
        while True:
            self._expect("[")
            rows.append(self._ints())
            self._expect("]")
            if self._peek() != ("symbol", ","):
                break
            self._next()
        self._expect("]")
        if len({len(row) for row in rows}) != 1:
            raise ParseError("Matrix rows have different lengths")
        return np.array(rows, dtype=np.int64)

    def _path(self) -> str:
        end = self.text.find(")", self.pos)
        if end < 0:
            raise ParseError("Unterminated table(...) path")
        path = self.text[self.pos:end].strip()
        self.pos = end
        if not path:
            raise ParseError("table(...) needs a file path")
        return path

    def _action(self, A: CayleyGroup, H: CayleyGroup) -> dict[int, np.ndarray]:
        kind, name = self._next()
        if kind != "name" or name not in ("pow", "mats"):
            raise ParseError(f"Expected pow(k) or mats(...) as the action, got {name!r}")
        self._expect("(")
        if name == "pow":
            k = self._int()
            self._expect(")")
            return {s: A.power_map(k) for s in H.generators}
        matrices = [self._matrix()]
        while self._peek() == ("symbol", ","):
            self._next()
            matrices.append(self._matrix())
        self._expect(")")
        if len(matrices) != len(H.generators):
            raise ParseError(f"mats(...) needs one matrix per generator of the acting group ({len(H.generators)})")
        return {s: matrix_action(A, M) for s, M in zip(H.generators, matrices)}

    def expression(self) -> CayleyGroup:
        kind, name = self._next()
        if kind != "name":
            raise ParseError(f"Expected a constructor name at offset {self.pos}, got {name or 'end of input'!r}")
        self._expect("(")
        if name == "cyclic":
            group = cyclic_group(self._int())
        elif name == "elab":
            p = self._int()
            self._expect(",")
            k = self._int()
            group = abelian_group([require_prime(p)] * k)
            group.name = f"elab({p},{k})"
        elif name == "abelian":
            group = abelian_group(self._ints())
        elif name == "sym":
            group = symmetric_group(self._int())
        elif name == "alt":
            group = alternating_group(self._int())
        elif name == "direct":
            first = self.expression()
            self._expect(",")
            second = self.expression()
            group, _, _ = direct_product(first, second, name=f"({first.name} x {second.name})")
        elif name == "semidirect":
            A = self.expression()
            self._expect(",")
            H = self.expression()
            self._expect(",")
            group, _, _ = semidirect_product(A, H, self._action(A, H), name=f"({A.name} : {H.name})")
        elif name == "table":
            path = Path(self._path())
            group = read_group(path if path.is_absolute() else self.base_dir / path)
        elif name == "relabel":
            inner = self.expression()
            self._expect(",")
            group = relabel_group(inner, self._int())
        else:
            raise ParseError(f"Unknown constructor {name!r}")
        self._expect(")")
        return group

    def parse(self) -> CayleyGroup:
        group = self.expression()
        kind, value = self._peek()
        if kind != "end":
            raise ParseError(f"Trailing input at offset {self.pos}: {value!r}")
        return group


def build_group(expr: str, base_dir: Optional[Union[str, Path]] = None) -> CayleyGroup:
    """Evaluate a construction expression to a validated CayleyGroup."""
    group = _Parser(expr, Path(base_dir) if base_dir is not None else Path.cwd()).parse()
    group = CayleyGroup(group.table, name=expr.strip(), generators=group.generators)
    logger.debug(f"Built {expr!r}: order {group.order}")
    return group
