import time

import pytest

from candeg.bounds import (
    STATED_CASE_B_MAX_PG,
    SurfaceRecord,
    check,
    enumerate_feasible,
    max_degree,
)

from expected import CASE_B_MAX_PG

PG_SCAN = range(3, 201)


def verdict(record, rule):
    return next(v for v in check(record) if v.rule == rule)


def passes_R5(d, pg, q):
    return verdict(SurfaceRecord("A", d, pg, q), "R5").status == "pass"


def test_degree_36_is_tight():
    v = verdict(SurfaceRecord("A", 36, 3, 0), "R5")
    assert (v.status, v.slack) == ("pass", 0)


def test_degree_28_irregular_fails():
    assert verdict(SurfaceRecord("A", 28, 3, 1), "R5").status == "fail"


def test_case_b_degree_3_irregularity():
    assert verdict(SurfaceRecord("B", 3, 4, 4, 0), "R6").status == "fail"
    assert verdict(SurfaceRecord("B", 3, 4, 3, 0), "R6").status == "pass"


def test_horikawa_floor_slack_is_exact():
    # 44 - (6*9 + 2*2 - 14) = 0
    v = verdict(SurfaceRecord("B", 2, 9, 0, 2, K2=44), "R7")
    assert (v.status, v.slack) == ("pass", 0)
    v = verdict(SurfaceRecord("B", 2, 9, 2, 0, K2=44), "R7")
    assert v.slack == 4


def test_inapplicable_rules():
    statuses = {v.rule: v.status for v in check(SurfaceRecord("A", 4, 5))}
    assert statuses["R1"] == statuses["R3-A"] == statuses["R4"] == "inapplicable"
    assert statuses["R6"] == statuses["R7"] == statuses["R8"] == "inapplicable"
    assert statuses["R5"] == "pass"


def test_moving_part_rules():
    rec = SurfaceRecord("A", 2, 3, K2=4, M2=4, degSigma=2)
    statuses = {v.rule: (v.status, v.slack) for v in check(rec)}
    assert statuses["R1"] == ("pass", 0)
    assert statuses["R2-A"] == ("pass", 1)
    rec = SurfaceRecord("B", 3, 4, K2=20, M2=10, degSigma=5)
    statuses = {v.rule: (v.status, v.slack) for v in check(rec)}
    assert statuses["R1"] == ("fail", -5)
    assert statuses["R2-B"] == ("pass", 0)
    assert statuses["R8"] == ("pass", 5)


def test_record_validation():
    with pytest.raises(ValueError):
        SurfaceRecord("C", 2, 3)
    with pytest.raises(ValueError):
        SurfaceRecord("A", 1, 3)
    with pytest.raises(ValueError):
        SurfaceRecord("A", 2, 2)
    with pytest.raises(ValueError):
        SurfaceRecord("A", 2, 3, K2=4, M2=5)


def test_max_degree_examples():
    assert max_degree("A", 3, 0) == 36
    assert max_degree("A", 3, 1) == 27
    assert max_degree("B", 4, 0, 0) == 9
    assert max_degree("B", 3) is None
    for pg in range(30, 133):
        assert max_degree("A", pg, 0) == 9
    assert max_degree("A", 133, 0) == 8


def test_irregularity_three_forces_degree_nine():
    for q in range(3, 10):
        for pg in PG_SCAN:
            for d in range(10, 60):
                assert not passes_R5(d, pg, q)


def test_unique_tight_maxima():
    for q, top in [(0, 36), (1, 27)]:
        best = max((d, pg) for pg in PG_SCAN for d in range(2, 60) if passes_R5(d, pg, q))
        assert best == (top, 3)
        assert [pg for pg in PG_SCAN if passes_R5(top, pg, q)] == [3]
        assert verdict(SurfaceRecord("A", top, 3, q), "R5").slack == 0


def test_case_b_degree_nine_only_at_pg_4():
    hits = [(pg, q) for pg in range(4, 201) for q in range(0, 5) if max_degree("B", pg, q) == 9]
    assert hits == [(4, 0)]
    assert all((max_degree("B", pg) or 0) <= 9 for pg in range(4, 201))


def test_case_b_degree_three_irregularity_bound():
    for pg in range(4, 201):
        for q_sigma in range(0, 4):
            for q in range(0, 8):
                ok = verdict(SurfaceRecord("B", 3, pg, q, q_sigma), "R6").status == "pass"
                if q >= 4:
                    assert not ok


def test_case_b_table():
    rows = {r.d: r for r in enumerate_feasible("B", range(2, 11))}
    for d in range(4, 10):
        assert rows[d].max_pg == CASE_B_MAX_PG[d]
        assert rows[d].stated == STATED_CASE_B_MAX_PG[d]
    for d in range(5, 10):
        assert not rows[d].discrepancy
    assert rows[4].discrepancy
    assert rows[2].unbounded and rows[3].unbounded
    assert rows[10].max_pg is None and not rows[10].unbounded


def test_case_a_table():
    rows = {r.d: r for r in enumerate_feasible("A", [8, 9, 10, 16, 36, 37])}
    assert rows[8].unbounded
    assert rows[9].max_pg == 132
    assert rows[10].max_pg == 29
    assert rows[16].max_pg == 5
    assert rows[36].max_pg == 3
    assert rows[37].max_pg is None


def _degree(case, pg, q):
    return max_degree(case, pg, q) or 0


@pytest.mark.parametrize("case, low", [("A", 3), ("B", 4)])
def test_max_degree_monotone(case, low):
    for q in range(0, 4):
        degrees = [_degree(case, pg, q) for pg in range(low, 301)]
        assert all(a >= b for a, b in zip(degrees, degrees[1:]))
    for pg in range(low, 301):
        degrees = [_degree(case, pg, q) for q in range(0, 12)]
        assert all(a >= b for a, b in zip(degrees, degrees[1:]))


def test_max_degree_grows_with_pg_once_q_exceeds_three():
    # 9(1 - q + p_g)/(p_g - 2) increases in p_g when q > 3
    assert _degree("A", 4, 4) == 4 and _degree("A", 5, 4) == 6
    assert _degree("B", 4, 5) < _degree("B", 40, 5)


def test_scans_are_fast():
    start = time.perf_counter()
    enumerate_feasible("B", range(4, 10), pg_limit=200)
    for pg in PG_SCAN:
        for q in range(0, 4):
            max_degree("A", pg, q)
            max_degree("B", max(pg, 4), q)
    assert time.perf_counter() - start < 1.0
