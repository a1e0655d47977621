"""Canonical system of an abelian cover: eigen-decomposition, factorisation, base locus.

The canonical map of X is analysed through the character decomposition of
H^0(K_X). The subgroup gamma annihilating every contributing character acts
trivially on H^0(K_X), so the canonical map factors through X -> X/gamma;
the degree is then settled by a short list of rules, each leaving a line in
the trace.

Recognised declared facts (``facts`` mapping):

``pullback_map_degree``
    degree of the map given by |K_Y + L_chi| for a single contributing chi.
``canonical_system_free``
    |K_X| has no base points (used with p_g = 3: the image is the plane).
``quotient_canonical_degree``
    degree of the canonical map of (a smooth model of) X/gamma.
``quotient_canonical_image``
    ``"canonical"`` or ``"rational"``: the image of that canonical map.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Mapping

from . import abgroup
from .abgroup import Element, order, r_value
from .cover import (
    BuildingData,
    CoverInvariants,
    invariants,
    is_simple_cyclic,
    quotient_building_data,
    simple_cyclic_adjunction,
    verify_fundamental,
)
from .errors import UnsupportedSurface
from .picard import DivisorClass, SurfaceKind, cohomology, intersect, is_nef, sum_classes

__all__ = [
    "CaseHint",
    "DecompositionEntry",
    "CanonicalDecomposition",
    "FactorizationReport",
    "BaseLocusReport",
    "decompose",
    "factorization",
    "base_locus",
]


class CaseHint(str, enum.Enum):
    CASE_A = "A"
    CASE_B = "B"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class DecompositionEntry:
    chi: Element
    bundle: DivisorClass
    h0: int


@dataclass(frozen=True)
class CanonicalDecomposition:
    entries: tuple[DecompositionEntry, ...]

    @property
    def pg(self) -> int:
        return sum(e.h0 for e in self.entries)

    @property
    def contributing(self) -> list[Element]:
        """Nontrivial characters with h^0(K_Y + L_chi) > 0."""
        return [e.chi for e in self.entries if e.h0 > 0 and any(e.chi)]

    def h0_of(self, chi) -> int:
        for e in self.entries:
            if e.chi == tuple(chi):
                return e.h0
        raise KeyError(chi)


@dataclass
class FactorizationReport:
    gamma: abgroup.Subgroup
    quotient: abgroup.Quotient
    quotient_bd: BuildingData
    quotient_invariants: CoverInvariants
    pg_Z: int
    degree_factor: int
    classification_hint: CaseHint = CaseHint.UNDETERMINED
    degree: int | None = None
    trace: list[str] = field(default_factory=list)

    @property
    def quotient_groups(self) -> list[tuple[str, ...]]:
        """Branch labels grouped by their image in G/gamma."""
        groups = defaultdict(list)
        for c in self.quotient_bd.branch:
            groups[c.v].append(c.label)
        return sorted(tuple(sorted(g)) for g in groups.values())


@dataclass
class BaseLocusReport:
    per_char: dict[Element, dict[str, int]]
    fixed_part: dict[str, int]
    isolated_point_count: int | None = None
    note: str = ""


def decompose(bd: BuildingData) -> CanonicalDecomposition:
    """One entry per character: (chi, K_Y + L_chi, h^0), the trivial one giving p_g(Y)."""
    S, G = bd.surface, bd.group
    entries = [DecompositionEntry(G.zero, S.canonical, S.pg)]
    for chi in G.characters():
        if chi == G.zero:
            continue
        bundle = S.reduce(S.canonical + bd.L_of(chi))
        entries.append(DecompositionEntry(chi, bundle, cohomology(S, bundle)[0]))
    return CanonicalDecomposition(tuple(entries))


def _map_degree(bd: BuildingData, A: DivisorClass, facts: Mapping[str, Any]):
    """Degree of the map given by |A| on Y, with the reason, or None."""
    S = bd.surface
    if "pullback_map_degree" in facts:
        return int(facts["pullback_map_degree"]), "declared"
    if S.kind is SurfaceKind.PROJECTIVE_PLANE and A[0] >= 1:
        return 1, f"{A[0]}h is very ample on P2"
    if S.kind is SurfaceKind.QUADRIC and A[0] >= 1 and A[1] >= 1:
        return 1, f"({A[0]},{A[1]}) is very ample on P1xP1"
    if S.kind is SurfaceKind.DEL_PEZZO and all(intersect(S, A, C) > 0 for C in S.curves):
        return 1, "ample on a del Pezzo surface of degree >= 6, hence very ample"
    return None


def factorization(
    bd: BuildingData,
    decomposition: CanonicalDecomposition | None = None,
    facts: Mapping[str, Any] | None = None,
) -> FactorizationReport:
    facts = dict(facts or {})
    G, S = bd.group, bd.surface
    dec = decomposition or decompose(bd)
    contributing = dec.contributing
    gamma = abgroup.annihilator(G, contributing)
    allowed = set(abgroup.perp(G, gamma))
    assert all(c in allowed for c in contributing), "contributing characters escape gamma-perp"

    quo, qbd = quotient_building_data(bd, gamma)
    qinv = invariants(qbd, require_integral_K2=False)
    report = FactorizationReport(gamma, quo, qbd, qinv, qinv.pg, gamma.size)
    trace = report.trace
    gens = ", ".join(str(g) for g in gamma.generators) or "0"
    trace.append(f"gamma = <{gens}> of order {gamma.size} annihilates {contributing}")
    if verify_fundamental(qbd):
        trace.append("quotient building data violate the fundamental relations")
        return report
    if qinv.pg != dec.pg:
        trace.append(f"p_g(X/gamma) = {qinv.pg} differs from p_g(X) = {dec.pg}")
        return report
    trace.append(f"p_g(X/gamma) = {qinv.pg} = p_g(X): canonical map factors through X -> X/gamma")

    if len(contributing) == 1 and S.pg == 0:
        chi = contributing[0]
        A = S.reduce(S.canonical + bd.L_of(chi))
        trace.append(
            f"single contributing character {chi}: canonical map = (map of |K_Y+L| = |{A.coeffs}|) o f"
        )
        found = _map_degree(bd, A, facts)
        if found is None:
            trace.append("degree of the map of |K_Y+L| unknown")
            return report
        k, why = found
        report.degree = G.size * k
        report.classification_hint = CaseHint.CASE_A
        trace.append(f"map of |K_Y+L| has degree {k} ({why}); degree = {G.size}*{k}")
        trace.append("image is dominated by Y with p_g(Y) = 0: case A")
        return report

    if facts.get("canonical_system_free") and dec.pg == 3:
        K2 = invariants(bd).K2
        report.degree = int(K2)
        report.classification_hint = CaseHint.CASE_A
        trace.append(f"p_g = 3 and |K_X| free (declared): canonical map onto P2 of degree K^2 = {K2}")
        return report

    nq = quo.group.size
    if is_simple_cyclic(qbd) and nq > 1 and all(nq % p for p in range(2, nq)):
        A = simple_cyclic_adjunction(qbd)
        hA = cohomology(S, A)[0]
        trace.append(f"X/gamma is a simple Z{nq}-cover with K = pullback of {A.coeffs}, h0 = {hA}")
        if qinv.pg > hA:
            report.degree = gamma.size
            report.classification_hint = CaseHint.CASE_B
            trace.append(
                f"p_g(X/gamma) = {qinv.pg} > {hA}: canonical map of X/gamma is not composed with "
                f"the prime-degree covering, hence birational; degree = {gamma.size}"
            )
            return report
        trace.append("canonical map of X/gamma may be composed with the covering")

    if "quotient_canonical_degree" in facts:
        k = int(facts["quotient_canonical_degree"])
        report.degree = gamma.size * k
        image = facts.get("quotient_canonical_image")
        if image == "canonical" and k == 1:
            report.classification_hint = CaseHint.CASE_B
        elif image == "rational":
            report.classification_hint = CaseHint.CASE_A
        trace.append(
            f"canonical map of X/gamma has degree {k} (declared, image {image}); "
            f"degree = {gamma.size}*{k}"
        )
        return report

    trace.append("no rule determines the degree")
    return report


def base_locus(bd: BuildingData, decomposition: CanonicalDecomposition | None = None) -> BaseLocusReport:
    """Divisorial base locus of |K_X| from the per-character vanishing orders.

    For each contributing chi the pulled-back sections vanish on
    sum_v (m_v - 1 - r_chi(v)) R_v; the fixed part is the componentwise
    minimum (the trivial character contributes m_v - 1 when p_g(Y) > 0).
    """
    G, S = bd.group, bd.surface
    dec = decomposition or decompose(bd)
    contributing = dec.contributing
    if not contributing and S.pg == 0:
        raise ValueError("canonical system is empty")
    ms = {c.label: order(G, c.v) for c in bd.branch}
    per_char = {
        chi: {c.label: ms[c.label] - 1 - r_value(G, chi, c.v) for c in bd.branch}
        for chi in contributing
    }
    rows = list(per_char.values())
    if S.pg > 0:
        rows.append({lab: m - 1 for lab, m in ms.items()})
    fixed = {lab: min(row[lab] for row in rows) for lab in ms}
    report = BaseLocusReport(per_char, fixed)

    if len(contributing) != 2 or S.pg > 0:
        report.note = "isolated base points computed only for two contributing characters"
        return report
    try:
        free = all(is_nef(S, S.canonical + bd.L_of(chi)) for chi in contributing)
    except UnsupportedSurface:
        free = False
    if not free or not S.kind.computable:
        report.note = "moving systems not known to be base point free"
        return report
    groups = []
    for chi in contributing:
        labels = [lab for lab, k in per_char[chi].items() if k > fixed[lab]]
        groups.append(sum_classes(S, (bd.component(lab).cls for lab in labels)))
    report.isolated_point_count = intersect(S, groups[0], groups[1])
    report.note = "intersection number of the two moving branch groupings"
    return report
