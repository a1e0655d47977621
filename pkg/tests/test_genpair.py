import dataclasses
from fractions import Fraction

import pytest

from candeg import bounds
from candeg.catalog import load_catalog
from candeg.genpair import sequence, sigma_slope_limit, slope_limit, validate_pair

from expected import PAIR_IDENTITIES, SLOPES
from oracles import genpair_closed_forms

PAIRS = {e.id: e.build() for e in load_catalog() if e.kind == "generating_pair"}


def test_four_pairs():
    assert sorted(PAIRS) == sorted(PAIR_IDENTITIES)


@pytest.mark.parametrize("pid", sorted(PAIR_IDENTITIES))
def test_pairs_are_valid(pid):
    check = validate_pair(PAIRS[pid])
    assert check.ok, check.violations
    assert check.warnings == ()


@pytest.mark.parametrize("pid", sorted(PAIR_IDENTITIES))
def test_linear_identities_for_all_n(pid):
    spec = PAIRS[pid]
    (cs, a_s, b_s), (cx, a_x, b_x) = PAIR_IDENTITIES[pid]
    for n in range(3, 51):
        s = sequence(spec, n)
        assert (s.pg, s.K2_Sigma, s.K2_X) == genpair_closed_forms(
            spec.nu, spec.pg_W, spec.K2_W, spec.K2_V, spec.L2, spec.g, spec.g_bar, n)
        assert cs * s.K2_Sigma == a_s * s.pg + b_s
        assert cx * s.K2_X == a_x * s.pg + b_x
        assert s.q_X == spec.g_bar - spec.g


@pytest.mark.parametrize("pid", sorted(SLOPES))
def test_slope_limit(pid):
    assert slope_limit(PAIRS[pid]) == Fraction(*SLOPES[pid])


def test_sigma_slopes():
    assert sigma_slope_limit(PAIRS["gp-kummer-beauville"]) == 3
    assert sigma_slope_limit(PAIRS["gp-theta-double"]) == Fraction(16, 5)
    assert sigma_slope_limit(PAIRS["gp-symmetric-square"]) == Fraction(24, 7)
    assert sigma_slope_limit(PAIRS["gp-dual-cubic-abelian"]) == 2


@pytest.mark.parametrize("pid", sorted(SLOPES))
def test_slope_is_the_limit_of_the_ratios(pid):
    spec = PAIRS[pid]
    limit = slope_limit(spec)
    ratios = [Fraction(s.K2_X, s.chi_X) for s in (sequence(spec, n) for n in (10, 100, 1000))]
    gaps = [abs(r - limit) for r in ratios]
    assert gaps[0] > gaps[1] > gaps[2]


def test_degree_and_case():
    s = sequence(PAIRS["gp-kummer-beauville"], 3)
    assert (s.degree, s.case) == (2, "B")
    assert (s.pg, s.K2_Sigma, s.K2_X) == (9, 20, 40)
    s = sequence(PAIRS["gp-dual-cubic-abelian"], 3)
    assert (s.degree, s.case) == (6, "A")


def test_beauville_sequence_meets_horikawa_floor():
    spec = PAIRS["gp-kummer-beauville"]
    for n in range(3, 51):
        s = sequence(spec, n)
        rec = bounds.SurfaceRecord("B", s.degree, s.pg, s.q_X, s.q_Sigma, s.K2_X)
        r7 = next(v for v in bounds.check(rec) if v.rule == "R7")
        assert (r7.status, r7.slack) == ("pass", 0)


def test_corrupt_genus_is_rejected():
    bad = dataclasses.replace(PAIRS["gp-kummer-beauville"], g_bar=3)
    check = validate_pair(bad)
    assert not check.ok
    with pytest.raises(ValueError):
        sequence(bad, 3)


def test_adjunction_mismatch_is_rejected():
    bad = dataclasses.replace(PAIRS["gp-theta-double"], L2=4)
    assert not validate_pair(bad).ok


def test_large_degree_warns():
    spec = dataclasses.replace(PAIRS["gp-kummer-beauville"], nu=4, KV_dot_hL=-8)
    check = validate_pair(spec)
    assert check.ok
    assert check.warnings


def test_small_index_rejected():
    with pytest.raises(ValueError):
        sequence(PAIRS["gp-kummer-beauville"], 2)
