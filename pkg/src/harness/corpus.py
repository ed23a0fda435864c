"""Built-in corpus of A-groups and the default acceptance manifest."""

from __future__ import annotations

from itertools import combinations
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.errors import PreconditionError
from src.groups.cayley import CayleyGroup
from src.groups.subgroups import is_agroup
from src.harness.dsl import build_group

C7_C3 = "semidirect(cyclic(7), cyclic(3), pow(2))"
V4_C3 = "semidirect(elab(2,2), cyclic(3), mats([[0,1],[1,1]]))"


class CorpusSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    expr: str
    seed: int = 0

    def build(self) -> CayleyGroup:
        """The group, or a seeded relabeling of it when seed is nonzero."""
        return build_group(f"relabel({self.expr}, {self.seed})" if self.seed else self.expr)


class CorpusEntry(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    spec: CorpusSpec
    group: CayleyGroup
    is_agroup: bool


DEFAULT_CORPUS: tuple[CorpusSpec, ...] = (
    CorpusSpec(name="C5", expr="cyclic(5)"),
    CorpusSpec(name="C6", expr="cyclic(6)"),
    CorpusSpec(name="C12", expr="cyclic(12)"),
    CorpusSpec(name="C21", expr="cyclic(21)"),
    CorpusSpec(name="Z2xZ4", expr="abelian(2,4)"),
    CorpusSpec(name="Z3xZ9", expr="abelian(3,9)"),
    CorpusSpec(name="E8", expr="elab(2,3)"),
    CorpusSpec(name="Z2xZ2xZ3", expr="abelian(2,2,3)"),
    CorpusSpec(name="Sym3", expr="sym(3)"),
    CorpusSpec(name="D10", expr="semidirect(cyclic(5), cyclic(2), pow(-1))"),
    CorpusSpec(name="Alt4", expr="alt(4)"),
    CorpusSpec(name="V4:C3", expr=V4_C3),
    CorpusSpec(name="C3:C4", expr="semidirect(cyclic(3), cyclic(4), pow(-1))"),
    CorpusSpec(name="D14", expr="semidirect(cyclic(7), cyclic(2), pow(-1))"),
    CorpusSpec(name="D18", expr="semidirect(cyclic(9), cyclic(2), pow(-1))"),
    CorpusSpec(name="E9:C2", expr="semidirect(elab(3,2), cyclic(2), pow(-1))"),
    CorpusSpec(name="F20", expr="semidirect(cyclic(5), cyclic(4), pow(2))"),
    CorpusSpec(name="C7:C3", expr=C7_C3),
    CorpusSpec(name="C3:C8", expr="semidirect(cyclic(3), cyclic(8), pow(-1))"),
    CorpusSpec(name="Sym3xC5", expr="direct(sym(3), cyclic(5))"),
    CorpusSpec(name="Sym3xSym3", expr="direct(sym(3), sym(3))"),
    CorpusSpec(name="V4:C9", expr="semidirect(elab(2,2), cyclic(9), mats([[0,1],[1,1]]))"),
    CorpusSpec(name="Alt4xC3", expr="direct(alt(4), cyclic(3))"),
    CorpusSpec(name="C13:C3", expr="semidirect(cyclic(13), cyclic(3), pow(3))"),
    CorpusSpec(name="F42", expr="semidirect(cyclic(7), cyclic(6), pow(3))"),
    CorpusSpec(name="C2xC7:C3", expr=f"direct(cyclic(2), {C7_C3})"),
    CorpusSpec(name="(Z3xZ9):C2", expr="semidirect(abelian(3,9), cyclic(2), pow(-1))"),
    CorpusSpec(name="C11:C5", expr="semidirect(cyclic(11), cyclic(5), pow(3))"),
    CorpusSpec(name="E8:C7", expr="semidirect(elab(2,3), cyclic(7), mats([[0,1,0],[0,0,1],[1,1,0]]))"),
    CorpusSpec(name="Alt5", expr="alt(5)"),
    CorpusSpec(name="C7:C9", expr="semidirect(cyclic(7), cyclic(9), pow(2))"),
    CorpusSpec(name="C3xC7:C3", expr=f"direct(cyclic(3), {C7_C3})"),
    CorpusSpec(name="Sym3xAlt4", expr="direct(sym(3), alt(4))"),
    CorpusSpec(name="E25:C3", expr="semidirect(elab(5,2), cyclic(3), mats([[0,1],[4,4]]))"),
    CorpusSpec(name="C2xAlt5", expr="direct(cyclic(2), alt(5))"),
    CorpusSpec(name="Alt4xAlt4", expr="direct(alt(4), alt(4))"),
    CorpusSpec(name="C19:C9", expr="semidirect(cyclic(19), cyclic(9), pow(4))"),
)

# Same order, pairwise non-isomorphic.
NON_ISOMORPHIC_PAIRS: tuple[tuple[str, str], ...] = (
    ("cyclic(21)", C7_C3),
    ("cyclic(6)", "sym(3)"),
    ("abelian(2,4)", "elab(2,3)"),
    ("alt(4)", "semidirect(cyclic(3), cyclic(4), pow(-1))"),
    ("alt(4)", "abelian(2,2,3)"),
    ("semidirect(cyclic(9), cyclic(2), pow(-1))", "semidirect(elab(3,2), cyclic(2), pow(-1))"),
    ("semidirect(cyclic(9), cyclic(2), pow(-1))", "direct(cyclic(3), sym(3))"),
    ("semidirect(cyclic(5), cyclic(4), pow(2))", "semidirect(cyclic(5), cyclic(4), pow(-1))"),
    ("semidirect(cyclic(7), cyclic(9), pow(2))", f"direct(cyclic(3), {C7_C3})"),
    ("direct(sym(3), sym(3))", "semidirect(elab(2,2), cyclic(9), mats([[0,1],[1,1]]))"),
    ("direct(alt(4), cyclic(3))", "direct(sym(3), sym(3))"),
    ("direct(cyclic(2), alt(5))", "direct(sym(3), semidirect(cyclic(5), cyclic(4), pow(2)))"),
)


def load_corpus(specs: Optional[tuple[CorpusSpec, ...]] = None) -> list[CorpusEntry]:
    return [CorpusEntry(spec=spec, group=(G := spec.build()), is_agroup=is_agroup(G)) for spec in specs or DEFAULT_CORPUS]


def scaling_expression(m: int, q: int = 3) -> str:
    """elab(2, 2m) extended by cyclic(q), q divisible by 3, acting by an order-3 matrix on each plane."""
    if q % 3:
        raise PreconditionError(f"q must be divisible by 3, got {q}")
    block = np.array([[0, 1], [1, 1]], dtype=int)
    matrix = np.kron(np.eye(m, dtype=int), block)
    rows = ",".join("[" + ",".join(str(int(x)) for x in row) + "]" for row in matrix)
    return f"semidirect(elab(2,{2 * m}), cyclic({q}), mats([{rows}]))"


def isomorphic_pair_lines(seed: int = 0, limit: int = 100) -> list[str]:
    """Manifest lines pairing each small corpus group with seeded relabelings of itself and of its peers."""
    lines = []
    order_of = {spec.expr: build_group(spec.expr).order for spec in DEFAULT_CORPUS}
    small = [spec for spec in DEFAULT_CORPUS if order_of[spec.expr] <= limit]
    for offset, spec in enumerate(small):
        lines.append(f"{spec.expr} ; iso=relabel({spec.expr}, {seed + offset}) ; isomorphic=true")
        lines.append(f"relabel({spec.expr}, {seed + offset + 1}) ; iso=relabel({spec.expr}, {seed + offset + 2}) ; isomorphic=true")
    for first, second in NON_ISOMORPHIC_PAIRS:
        lines.append(f"{first} ; iso={second} ; isomorphic=false")
        lines.append(f"relabel({second}, {seed}) ; iso={first} ; isomorphic=false")
    orders: dict[int, list[str]] = {}
    for spec in small:
        orders.setdefault(order_of[spec.expr], []).append(spec.expr)
    for exprs in orders.values():
        for first, second in combinations(exprs, 2):
            lines.append(f"{first} ; iso={second}")
    return lines


def default_manifest(seed: int = 0) -> list[str]:
    lines = [f"{spec.expr} ; agroup=true ; oracle=aut" for spec in DEFAULT_CORPUS]
    lines.extend(isomorphic_pair_lines(seed))
    return lines
