import time

import numpy as np
import pytest

from src.config import override_settings
from src.errors import ParseError, PreconditionError
from src.groups.io import write_group
from src.groups.subgroups import is_agroup
from src.harness.acceptance import COLUMNS, parse_manifest, read_manifest, run_acceptance
from src.harness.corpus import (
    C7_C3,
    DEFAULT_CORPUS,
    NON_ISOMORPHIC_PAIRS,
    CorpusSpec,
    default_manifest,
    isomorphic_pair_lines,
    load_corpus,
    scaling_expression,
)
from src.harness.dsl import build_group
from src.structure.autgroup import aut_agroup


@pytest.mark.parametrize(
    "expr, order",
    [("direct(sym(3), alt(4))", 72), ("alt(5)", 60), ("elab(2,3)", 8), ("abelian(2,2,3)", 12), ("sym(1)", 1), (C7_C3, 21)],
)
def test_build_group_orders(expr, order):
    assert build_group(expr).order == order


def test_build_group_products():
    assert is_agroup(build_group("direct(sym(3), alt(4))"))
    G = build_group(C7_C3)
    assert not G.is_abelian
    assert build_group("semidirect(cyclic(5), cyclic(4), pow(2))").order == 20


@pytest.mark.parametrize(
    "expr",
    [
        "cyclic(0)",
        "sym(7)",
        "alt(0)",
        "foo(3)",
        "cyclic(3) cyclic(3)",
        "direct(cyclic(2) cyclic(3))",
        "semidirect(cyclic(7), cyclic(3), mats([[1]], [[2]]))",
        "semidirect(elab(2,2), cyclic(3), mats([[1]]))",
        "semidirect(cyclic(7), cyclic(3), swap(1))",
        "table()",
    ],
)
def test_build_group_parse_errors(expr):
    with pytest.raises(ParseError):
        build_group(expr)


def test_elab_needs_a_prime():
    with pytest.raises(PreconditionError):
        build_group("elab(4,2)")


def test_relabel_is_deterministic(alt4):
    first = build_group("relabel(alt(4), 5)")
    assert first.same_table(build_group("relabel(alt(4), 5)"))
    assert not first.same_table(build_group("relabel(alt(4), 6)"))
    assert not first.same_table(alt4)
    assert np.array_equal(np.sort(first.element_orders), np.sort(alt4.element_orders))


def test_table_files_resolve_against_base_dir(tmp_path, alt4):
    write_group(alt4, tmp_path / "a4.txt")
    assert build_group("table(a4.txt)", tmp_path).same_table(alt4)
    assert build_group("direct(table(a4.txt), cyclic(1))", tmp_path).order == 12


def test_corpus_is_made_of_agroups():
    entries = load_corpus()
    assert len(entries) == len(DEFAULT_CORPUS) >= 25
    assert all(entry.is_agroup for entry in entries)
    assert all(entry.group.order <= 200 for entry in entries)
    assert len({spec.name for spec in DEFAULT_CORPUS}) == len(DEFAULT_CORPUS)


def test_non_isomorphic_pairs_share_orders():
    for first, second in NON_ISOMORPHIC_PAIRS:
        assert build_group(first).order == build_group(second).order


def test_seeded_corpus_spec(alt4):
    spec = CorpusSpec(name="Alt4", expr="alt(4)", seed=3)
    assert spec.build().same_table(build_group("relabel(alt(4), 3)"))
    assert CorpusSpec(name="Alt4", expr="alt(4)").build().same_table(alt4)


def test_scaling_family():
    G = build_group(scaling_expression(2))
    assert G.order == 48
    assert is_agroup(G)
    # |V| * |GammaL(2, 4)| for V = F4^2 with C3 acting by scalars
    assert aut_agroup(G).order() == 16 * 2 * 15 * 12
    with pytest.raises(PreconditionError):
        scaling_expression(2, q=4)


# 4^m * 2 * |GL(m, 4)| for m = 4; a central C2 leaves it unchanged
LARGE_SCALING_AUT = 256 * 2 * 255 * 252 * 240 * 192


@pytest.mark.slow
@pytest.mark.parametrize("m, q, order", [(4, 3, 768), (4, 6, 1536)])
def test_scaling_family_completes_at_larger_order(m, q, order):
    G = build_group(scaling_expression(m, q))
    assert G.order == order
    start = time.perf_counter()
    result = aut_agroup(G)
    assert time.perf_counter() - start < 60
    assert result.order() == LARGE_SCALING_AUT



def test_manifests_parse():
    assert len(parse_manifest(isomorphic_pair_lines())) == len(isomorphic_pair_lines())
    entries = parse_manifest(default_manifest())
    assert entries[0].expectations == {"agroup": "true", "oracle": "aut"}
    assert len(entries) == len(DEFAULT_CORPUS) + len(isomorphic_pair_lines())


def test_parse_manifest_lines():
    entries = parse_manifest(["# comment", "", "sym(3) ; order=6 ; agroup=true", "cyclic(4)"])
    assert [entry.line for entry in entries] == [3, 4]
    assert entries[0].expectations == {"order": "6", "agroup": "true"}
    assert entries[1].expectations == {}


@pytest.mark.parametrize("line", ["sym(3) ; colour=red", "sym(3) ; order"])
def test_parse_manifest_rejects_unknown_fields(line):
    with pytest.raises(ParseError):
        parse_manifest([line])


def test_run_acceptance_passes():
    entries = parse_manifest(
        [
            "sym(3) ; order=6 ; agroup=true ; aut=6 ; oracle=aut",
            "alt(4) ; iso=relabel(alt(4), 3) ; isomorphic=true",
            "cyclic(6) ; iso=sym(3) ; isomorphic=false",
        ]
    )
    report = run_acceptance(entries)
    assert list(report.columns) == COLUMNS
    assert report["passed"].all()
    assert report[report["line"] == 1]["criterion"].tolist() == ["table", "order", "agroup", "aut", "aut-oracle"]
    assert report[report["line"] == 2]["criterion"].tolist() == ["table", "iso-oracle", "isomorphic"]


def test_run_acceptance_reports_failures():
    report = run_acceptance(parse_manifest(["cyclic(6) ; order=7 ; agroup=false"]))
    assert report["passed"].tolist() == [True, False, False]
    assert report.iloc[1]["observed"] == "6"


def test_corrupted_table_is_reported(tmp_path):
    (tmp_path / "bad.txt").write_text("order 2\n0 1\n1 1\n")
    (tmp_path / "manifest.txt").write_text("table(bad.txt) ; order=2\n")
    report = run_acceptance(read_manifest(tmp_path / "manifest.txt"), base_dir=tmp_path)
    assert len(report) == 1
    row = report.iloc[0]
    assert row["criterion"] == "table" and not row["passed"]
    assert "Latin" in row["observed"]


def test_empty_manifest_gives_empty_report():
    report = run_acceptance([], timings=True)
    assert report.empty
    assert list(report.columns) == COLUMNS + ["seconds"]


def test_budget_exhaustion_is_a_failed_row():
    override_settings(oracle_budget=1)
    report = run_acceptance(parse_manifest(["alt(4) ; oracle=aut"]))
    row = report.iloc[-1]
    assert row["criterion"] == "aut-oracle"
    assert not row["passed"]
    assert row["observed"].startswith("resource exhausted")


@pytest.mark.slow
def test_default_manifest_passes():
    report = run_acceptance(parse_manifest(default_manifest()), timings=True)
    assert report["passed"].all(), report[~report["passed"]].to_string()
