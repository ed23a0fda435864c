"""Acceptance driver: evaluates a manifest of `expr ; key=value ; ...` lines against the oracles."""

from __future__ import annotations

import time
from pathlib import Path
from typing import Callable, Iterable, Optional, Union

import pandas as pd
from loguru import logger
from pydantic import BaseModel

from src.errors import AGroupError, ParseError, ResourceExhausted
from src.groups.cayley import CayleyGroup
from src.groups.subgroups import is_agroup
from src.harness.dsl import build_group
from src.reductions.problems import grp_imap, grp_iso
from src.structure.autgroup import aut_agroup
from src.structure.bruteforce import aut_bruteforce, oracle_iso

KNOWN_KEYS = ("order", "agroup", "aut", "oracle", "iso", "isomorphic")
COLUMNS = ["line", "expr", "criterion", "expected", "observed", "passed"]


class AcceptanceRow(BaseModel):
    line: int
    expr: str
    criterion: str
    expected: str
    observed: str
    passed: bool
    seconds: Optional[float] = None


class ManifestEntry(BaseModel):
    line: int
    expr: str
    expectations: dict[str, str]


def parse_manifest(lines: Iterable[str]) -> list[ManifestEntry]:
    entries = []
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        expr, *fields = [part.strip() for part in text.split(";")]
        expectations = {}
        for field in fields:
            key, sep, value = field.partition("=")
            key = key.strip()
            if not sep or key not in KNOWN_KEYS:
                raise ParseError(f"manifest line {number}: expected one of {KNOWN_KEYS} as key=value, got {field!r}")
            expectations[key] = value.strip()
        entries.append(ManifestEntry(line=number, expr=expr, expectations=expectations))
    return entries


def read_manifest(path: Union[str, Path]) -> list[ManifestEntry]:
    return parse_manifest(Path(path).read_text().splitlines())


def _flag(value: str) -> bool:
    lowered = value.lower()
    if lowered not in ("true", "false"):
        raise ParseError(f"expected true or false, got {value!r}")
    return lowered == "true"


def _check_aut_oracle(G: CayleyGroup) -> tuple[str, str]:
    result = aut_agroup(G)
    verified = all(G.is_automorphism_perm(phi) for phi in result.aut.generators)
    brute = aut_bruteforce(G).order()
    return str(brute), f"{result.order()}{'' if verified else ' (unverified generator)'}"


def _check_iso(G: CayleyGroup, H: CayleyGroup) -> tuple[str, str]:
    oracle = oracle_iso(G, H) is not None
    backward = oracle_iso(H, G) is not None
    verdict = grp_iso(G, H)
    imap = grp_imap(G, H)
    notes = []
    if backward != oracle:
        notes.append("oracle asymmetric")
    if (imap is not None) != verdict:
        notes.append("imap disagrees")
    return str(oracle).lower(), str(verdict).lower() + "".join(f" ({note})" for note in notes)


class _Evaluator:
    def __init__(self, entry: ManifestEntry, base_dir: Path, timings: bool):
        self.entry = entry
        self.base_dir = base_dir
        self.timings = timings
        self.rows: list[AcceptanceRow] = []

    def record(self, criterion: str, check: Callable[[], tuple[str, str]], expected: str = "") -> bool:
        """Run one check returning (expected, observed); errors become failed rows."""
        start = time.perf_counter()
        try:
            expected, observed = check()
            passed = observed == expected
        except ResourceExhausted as err:
            observed, passed = f"resource exhausted: {err}", False
        except AGroupError as err:
            observed, passed = f"{type(err).__name__}: {err}", False
        seconds = round(time.perf_counter() - start, 3) if self.timings else None
        self.rows.append(
            AcceptanceRow(
                line=self.entry.line,
                expr=self.entry.expr,
                criterion=criterion,
                expected=expected,
                observed=observed,
                passed=passed,
                seconds=seconds,
            )
        )
        return passed

    def run(self) -> list[AcceptanceRow]:
        expectations = self.entry.expectations
        groups: dict[str, CayleyGroup] = {}

        def build() -> tuple[str, str]:
            groups["G"] = build_group(self.entry.expr, self.base_dir)
            return "valid", "valid"

        if not self.record("table", build, "valid"):
            return self.rows
        G = groups["G"]

        if "order" in expectations:
            self.record("order", lambda: (expectations["order"], str(G.order)))
        if "agroup" in expectations:
            self.record("agroup", lambda: (str(_flag(expectations["agroup"])).lower(), str(is_agroup(G)).lower()))
        if "aut" in expectations:
            self.record("aut", lambda: (expectations["aut"], str(aut_agroup(G).order())))
        if expectations.get("oracle") == "aut":
            self.record("aut-oracle", lambda: _check_aut_oracle(G))
        if "iso" in expectations:
            verdicts: dict[str, str] = {}

            def iso() -> tuple[str, str]:
                expected, observed = _check_iso(G, build_group(expectations["iso"], self.base_dir))
                verdicts["grp_iso"] = observed.split()[0]
                return expected, observed

            self.record("iso-oracle", iso)
            if "isomorphic" in expectations and verdicts:
                self.record("isomorphic", lambda: (str(_flag(expectations["isomorphic"])).lower(), verdicts["grp_iso"]))
        return self.rows


def run_acceptance(entries: Iterable[ManifestEntry], base_dir: Optional[Union[str, Path]] = None, timings: bool = False) -> pd.DataFrame:
    """One row per evaluated criterion; an empty manifest gives an empty report."""
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    rows: list[AcceptanceRow] = []
    for entry in entries:
        rows.extend(_Evaluator(entry, base, timings).run())
    columns = COLUMNS + (["seconds"] if timings else [])
    report = pd.DataFrame([row.model_dump() for row in rows], columns=list(AcceptanceRow.model_fields))[columns]
    logger.info(f"Acceptance: {int(report['passed'].sum())}/{len(report)} criteria passed")
    return report
