import pytest

from candeg.abgroup import generate
from candeg.canmap import CaseHint, base_locus, decompose, factorization
from candeg.catalog import load_catalog
from candeg.cover import invariants
from candeg.picard import h0

from expected import CANONICAL
from oracles import plane_h0

CATALOG = {e.id: e for e in load_catalog()}
ANTICANONICAL = [eid for eid in CATALOG if eid.endswith("-anticanonical")]


def report_for(eid, **params):
    entry = CATALOG[eid]
    return factorization(entry.build(params or None), facts=entry.facts)


@pytest.mark.parametrize("eid", sorted(CANONICAL))
def test_factorization_matches(eid):
    gens, groups, pg_Z, degree, case = CANONICAL[eid]
    rep = report_for(eid)
    G = rep.gamma.group
    assert rep.gamma == generate(G, gens)
    assert rep.quotient_groups == sorted(groups)
    assert rep.pg_Z == pg_Z
    assert rep.degree == degree
    assert rep.classification_hint is CaseHint(case)
    assert rep.trace


@pytest.mark.parametrize("eid", ANTICANONICAL)
def test_free_anticanonical_net(eid):
    entry = CATALOG[eid]
    bd = entry.build()
    rep = factorization(bd, facts=entry.facts)
    assert rep.degree == invariants(bd).K2
    assert rep.classification_hint is CaseHint.CASE_A
    assert all(v == 0 for v in base_locus(bd).fixed_part.values())


def test_decomposition_sums_to_pg():
    for eid, entry in CATALOG.items():
        if entry.kind != "abelian_cover":
            continue
        bd = entry.build()
        assert decompose(bd).pg == invariants(bd).pg


def test_pencil_cover_decomposition():
    bd = CATALOG["z3sq-delpezzo6-pencils"].build()
    dec = decompose(bd)
    S = bd.surface
    F = S.names["F1"] + S.names["F2"] + S.names["F3"]
    assert h0(S, F) == 7
    assert dec.pg == 8


def test_quintic_cross_check():
    # simple Z5 cover of the plane branched on a quintic: p_g = sum_j h0((j - 3) h)
    bd = CATALOG["z5-plane-quintic"].build()
    dec = decompose(bd)
    assert dec.pg == sum(plane_h0(j - 3) for j in range(1, 5)) == 4
    rep = factorization(bd, facts=CATALOG["z5-plane-quintic"].facts)
    assert rep.degree == 1


@pytest.mark.parametrize("m", [3, 4, 5])
def test_fibre_cover_base_locus(m):
    bd = CATALOG["z3sq-quadric-fibres"].build({"m": m})
    loc = base_locus(bd)
    nonzero = {k: v for k, v in loc.fixed_part.items() if v}
    assert nonzero == {"D11": 2, "D22": 2}
    assert loc.isolated_point_count == 4 * m
    assert len(loc.per_char) == 2


@pytest.mark.parametrize("m", [3, 4, 5])
def test_fibre_cover_quotient(m):
    rep = report_for("z3sq-quadric-fibres", m=m)
    assert rep.degree == 6
    assert rep.pg_Z == 2 * m - 2
    assert rep.quotient_invariants.K2 * 3 == 16 * m - 24


def test_anticanonical_per_character_orders():
    bd = CATALOG["z2sq-delpezzo6-anticanonical"].build()
    loc = base_locus(bd)
    for chi, row in loc.per_char.items():
        # the component with chi(v) = 0 carries the single vanishing order
        ones = [lab for lab, k in row.items() if k == 1]
        assert len(ones) == 1
        v = bd.component(ones[0]).v
        assert sum(a * b for a, b in zip(chi, v)) % 2 == 0


def test_quotient_of_pencil_cover_is_canonical():
    rep = report_for("z3sq-delpezzo6-pencils")
    assert rep.quotient.group.orders == (3,)
    assert rep.degree_factor == 3
