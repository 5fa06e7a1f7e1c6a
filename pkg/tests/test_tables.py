"""Golden tables, their reproduction, and the closed-form zero conditions."""
from __future__ import annotations

from fractions import Fraction

import pytest

from cayley_ricci.cayley import build_cayley, parse_gens
from cayley_ricci.curvature import curvature_sweep
from cayley_ricci.groups import parse_group
from cayley_ricci.tables import (
    TABLE_IDS,
    MismatchReport,
    NotInTableError,
    TableCell,
    TableReport,
    check_zm,
    expected,
    golden_rows,
    reproduce_table,
    scan_zm,
    table_spec,
)

F = Fraction


def test_golden_rows_cover_all_ten_tables():
    ids = {r.table_id for r in golden_rows()}
    assert ids == set(TABLE_IDS)


def test_golden_values_are_in_lowest_terms_and_unit_interval_adjacent():
    for row in golden_rows():
        assert 0 <= row.kappa <= 2
        assert row.edge_kind in {"A", "B", "AB"}


def test_expected_lookups():
    assert expected(1, "D:5", "sigma-tau") == {"A": F(1, 3), "B": F(2, 3)}
    assert expected(7, "Z:19", "s1k:4") == {"A": F(1, 4), "B": F(0)}
    assert expected(9, "Z:15", "s1k:5") == {"A": F(0), "B": F(3, 4)}


def test_expected_rejects_unknown_rows():
    with pytest.raises(NotInTableError):
        expected(1, "D:7", "sigma-tau")
    with pytest.raises(NotInTableError):
        table_spec(11)


def test_table3_descriptor_order_follows_the_asset():
    groups = [g for g, _ in table_spec(3).descriptors]
    assert groups == ["Z:6", "Z:7", "Z:8", "Z:9", "Z:10"]


def test_alias_rows_agree_across_tables():
    # small-n rows where +-k collapses onto a smaller +-k' give the same
    # graph, so their golden values must coincide across tables
    assert set(expected(9, "Z:7", "s1k:5").values()) == set(
        expected(3, "Z:7", "s1k:2").values()
    )
    assert set(expected(9, "Z:8", "s1k:5").values()) == set(
        expected(5, "Z:8", "s1k:3").values()
    )
    assert set(expected(9, "Z:9", "s1k:5").values()) == set(
        expected(7, "Z:9", "s1k:4").values()
    )
    assert expected(7, "Z:6", "s1k:4") == expected(3, "Z:6", "s1k:2")


@pytest.mark.parametrize("table_id", TABLE_IDS)
def test_reproduce_table(table_id):
    report = reproduce_table(table_id)
    assert report.ok, MismatchReport(report.mismatches)
    report.raise_if_failed()  # should be a no-op


def test_reproduce_table_is_parallelism_invariant():
    serial = reproduce_table(2)
    threaded = reproduce_table(2, parallelism=4)
    assert serial.cells == threaded.cells


def test_family_membership_beyond_the_sampled_rows():
    # the flat S_{1,2} regime holds at an untabulated n as well
    spec = parse_group("Z:13")
    graph = build_cayley(spec, parse_gens(spec, "s1k:2"))
    _, summary = curvature_sweep(graph)
    assert summary == {"A": (F(1, 2),), "B": (F(0),)}


def test_mismatch_report_formats_every_cell():
    cells = (
        TableCell(3, "Z:8", "s1k:2", "A", F(3, 4), F(2, 3)),
        TableCell(3, "Z:9", "s1k:2", "B", F(1, 4), None),
    )
    report = TableReport(3, cells)
    assert not report.ok
    assert report.mismatches == cells
    with pytest.raises(MismatchReport) as err:
        report.raise_if_failed()
    message = str(err.value)
    assert "Z:8" in message and "Z:9" in message
    assert "expected 3/4, computed 2/3" in message


def test_check_zm_worked_examples():
    c = check_zm(5, 18)
    assert c.type_a_zero and c.type_b_zero and c.type_b_condition == 1
    c = check_zm(5, 13)
    assert not c.type_a_zero  # n = 3k - 2 carve-out
    c = check_zm(3, 16)
    assert c.type_b_zero and c.type_b_condition == 3
    c = check_zm(6, 16)
    assert not c.type_a_zero and not c.type_b_zero
    c = check_zm(7, 31)
    assert c.type_a_zero and c.type_b_condition == 2
    # condition 4 window at k = 8 is n in {20, 21}
    assert check_zm(8, 20).type_b_condition == 4
    assert check_zm(8, 21).type_b_condition == 4
    assert check_zm(8, 22).type_b_condition is None


def test_check_zm_is_deterministic_and_total():
    for k in range(2, 9):
        for n in range(k + 1, 30):
            assert check_zm(k, n) == check_zm(k, n)


def test_scan_agrees_on_the_k5_band():
    cells = scan_zm(5, 5, 26)
    assert all(c.agrees for c in cells)


def test_scan_condition2_upper_boundary_cells_verify():
    # the n = 5k - 1 edge cells of condition 2, empirically zero
    for k, n in ((3, 14), (4, 19), (5, 24)):
        cell = next(c for c in scan_zm(k, k, n) if c.n == n)
        assert cell.conditions.type_b_condition == 2
        assert cell.kappa_b == 0 and cell.agrees


def test_scan_finds_the_condition4_counterexample():
    # (k = 8, n = 20) is the one in-grid cell where n divides 5k, so the
    # displacement -3k is two +k chords and the closed-form prediction
    # breaks; the computed type B curvature there is 1/4, not 0.
    cells = scan_zm(8, 8, 22)
    disagreements = [c for c in cells if not c.agrees]
    assert [(c.k, c.n) for c in disagreements] == [(8, 20)]
    bad = disagreements[0]
    assert bad.conditions.type_b_condition == 4
    assert bad.kappa_b == F(1, 4)
    assert bad.kappa_a == 0  # the type A prediction still holds there
    neighbour = next(c for c in cells if c.n == 21)
    assert neighbour.agrees and neighbour.kappa_b == 0


def test_scan_reports_untested_cells_as_agreeing():
    # no condition applies at (2, 10); whatever the value, the cell agrees
    cell = next(c for c in scan_zm(2, 2, 10) if c.n == 10)
    assert cell.conditions.type_b_condition is None
    assert cell.kappa_b == F(1, 4)
    assert cell.agrees


def test_scan_handles_the_dedup_and_merged_columns():
    # n = 2k rows drop to degree 3 and n = k + 1 rows merge the classes
    cells = {c.n: c for c in scan_zm(4, 4, 8)}
    assert cells[8].kappa_a == F(1, 3) and cells[8].kappa_b == F(2, 3)
    assert cells[5].kappa_ab is not None
