"""Building data of abelian covers X -> Y and the invariants of X.

A cover is described by its branch components (each labelled, carrying an
inertia element v of G and a divisor class on Y) and by the character line
bundles L_chi. The routines here solve the reduced relations, extend them to
every character, check the full set of relations, test smoothness at the
group-theoretic level, and compute K^2, p_g, q of the cover.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from . import abgroup
from .abgroup import Element, GroupSpec, order, pairing, r_value
from .errors import (
    InvalidBuildingData,
    NonDivisible,
    NonIntegralK2,
    UnsupportedSurface,
)
from .picard import (
    BaseSurface,
    DivisorClass,
    RationalClass,
    cohomology,
    euler_characteristic,
    intersect,
    is_nef,
)

__all__ = [
    "Tri",
    "ConfigMode",
    "ConfigurationAssumption",
    "BranchComponent",
    "BuildingData",
    "FundamentalViolation",
    "SmoothnessReport",
    "CoverInvariants",
    "standard_basis",
    "solve_reduced",
    "all_L_chi",
    "verify_fundamental",
    "verify_d_power",
    "trivial_bundles",
    "totally_ramified",
    "smoothness_check",
    "adjunction_class",
    "invariants",
    "chi_riemann_roch",
    "is_simple_cyclic",
    "simple_cyclic_adjunction",
    "quotient_building_data",
]


class Tri(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


class ConfigMode(str, enum.Enum):
    GENERAL_POSITION = "GeneralPosition"
    EXPLICIT_POINTS = "ExplicitPoints"
    SIMPLE_NORMAL_CROSSINGS = "SimpleNormalCrossings"


@dataclass(frozen=True)
class ConfigurationAssumption:
    """How the branch components meet.

    GeneralPosition and SimpleNormalCrossings: distinct components with
    positive intersection meet transversally in that many points and there are
    no triple points. ExplicitPoints: ``points`` is the complete list of
    intersection points as ``(point_id, labels)``.
    """

    mode: ConfigMode = ConfigMode.GENERAL_POSITION
    points: tuple[tuple[str, tuple[str, ...]], ...] = ()


@dataclass(frozen=True)
class BranchComponent:
    label: str
    v: Element
    cls: DivisorClass
    declared_smooth: bool = True
    declared_irreducible: bool = True


@dataclass(frozen=True, eq=False)
class BuildingData:
    surface: BaseSurface
    group: GroupSpec
    branch: tuple[BranchComponent, ...]
    L: Mapping[Element, DivisorClass]
    config: ConfigurationAssumption = field(default_factory=ConfigurationAssumption)

    def __post_init__(self):
        G, S = self.group, self.surface
        branch = []
        for comp in self.branch:
            v = G.elem(comp.v)
            if v == G.zero:
                raise InvalidBuildingData(f"branch component {comp.label}: inertia element is 0")
            S.check(comp.cls)
            branch.append(BranchComponent(comp.label, v, comp.cls, comp.declared_smooth,
                                          comp.declared_irreducible))
        labels = [c.label for c in branch]
        if len(set(labels)) != len(labels):
            raise InvalidBuildingData(f"branch labels are not distinct: {labels}")
        L = {}
        for chi, cls in self.L.items():
            chi = G.elem(chi)
            S.check(cls)
            L[chi] = S.reduce(cls)
        missing = [c for c in G.characters() if c != G.zero and c not in L]
        if missing:
            raise InvalidBuildingData(f"L_chi missing for characters {missing}")
        L.pop(G.zero, None)
        known = set(labels)
        for pid, incident in self.config.points:
            unknown = set(incident) - known
            if unknown:
                raise InvalidBuildingData(f"point {pid} references unknown labels {sorted(unknown)}")
        object.__setattr__(self, "branch", tuple(branch))
        object.__setattr__(self, "L", L)

    def L_of(self, chi: Sequence[int]) -> DivisorClass:
        chi = self.group.elem(chi)
        if chi == self.group.zero:
            return DivisorClass.zero(self.surface.dim)
        return self.L[chi]

    def component(self, label: str) -> BranchComponent:
        for c in self.branch:
            if c.label == label:
                return c
        raise KeyError(label)

    @classmethod
    def from_reduced(
        cls,
        surface: BaseSurface,
        group: GroupSpec,
        branch: Sequence[BranchComponent],
        reduced: Mapping[Element, DivisorClass] | None = None,
        basis: Sequence[Element] | None = None,
        config: ConfigurationAssumption | None = None,
    ) -> BuildingData:
        """Build the full data from reduced bundles, solving for them if absent."""
        basis = tuple(group.elem(b) for b in (basis or standard_basis(group)))
        if reduced is None:
            reduced = solve_reduced(surface, group, branch, basis)
        L = all_L_chi(surface, group, branch, reduced, basis)
        return cls(surface, group, tuple(branch), L, config or ConfigurationAssumption())


@dataclass(frozen=True)
class FundamentalViolation:
    chi: Element
    chi2: Element
    discrepancy: DivisorClass

    def __str__(self):
        return f"L{self.chi} + L{self.chi2} - L(sum) - sum eps D = {self.discrepancy.coeffs}"


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: Tri
    failing_points: tuple[tuple[str, tuple[str, ...], str], ...] = ()
    undeclared: tuple[str, ...] = ()


@dataclass(frozen=True)
class CoverInvariants:
    K2: int | Fraction
    pg: int
    q: int
    chi: int
    adjunction_class: RationalClass
    minimal_general_type: Tri


def standard_basis(G: GroupSpec) -> list[Element]:
    return [tuple(int(i == j) for i in range(G.rank)) for j in range(G.rank)]


def _coordinates(G: GroupSpec, basis: Sequence[Element]) -> dict[Element, tuple[int, ...]]:
    """alpha with chi = sum alpha_i chi_i, 0 <= alpha_i < ord(chi_i)."""
    ords = [order(G, b) for b in basis]
    coords = {}
    for alpha in product(*(range(d) for d in ords)):
        chi = G.zero
        for a, b in zip(alpha, basis):
            chi = G.add(chi, G.scale(a, b))
        if chi in coords:
            raise ValueError(f"characters {list(basis)} are not independent")
        coords[chi] = alpha
    if len(coords) != G.size:
        raise ValueError(f"characters {list(basis)} do not generate the character group")
    return coords


def _branch_sum(surface: BaseSurface, terms) -> DivisorClass:
    total = DivisorClass.zero(surface.dim)
    for k, cls in terms:
        if k:
            total = total + k * cls
    return total


def solve_reduced(
    surface: BaseSurface,
    group: GroupSpec,
    branch: Sequence[BranchComponent],
    basis: Sequence[Element] | None = None,
) -> dict[Element, DivisorClass]:
    """Solve d_i L_i = sum_v (d_i r_i(v) / m_v) D_v for each basis character."""
    if surface.torsion:
        raise InvalidBuildingData(
            "reduced relations do not determine L on a surface with torsion; supply L explicitly"
        )
    basis = [group.elem(b) for b in (basis or standard_basis(group))]
    _coordinates(group, basis)
    out = {}
    for chi in basis:
        d = order(group, chi)
        R = _branch_sum(
            surface, (((d * pairing(group, chi, c.v)).numerator, c.cls) for c in branch)
        )
        if any(x % d for x in R):
            raise NonDivisible(f"{d} L{chi} = {R.coeffs} has no integral solution")
        out[chi] = DivisorClass(tuple(x // d for x in R))
    return out


def all_L_chi(
    surface: BaseSurface,
    group: GroupSpec,
    branch: Sequence[BranchComponent],
    reduced: Mapping[Element, DivisorClass],
    basis: Sequence[Element] | None = None,
) -> dict[Element, DivisorClass]:
    """L_chi = sum alpha_i L_i - sum_v floor(sum alpha_i r_i(v) / m_v) D_v."""
    basis = [group.elem(b) for b in (basis or standard_basis(group))]
    reduced = {group.elem(k): v for k, v in reduced.items()}
    coords = _coordinates(group, basis)
    rs = [[r_value(group, b, c.v) for b in basis] for c in branch]
    ms = [order(group, c.v) for c in branch]
    L = {}
    for chi, alpha in coords.items():
        if chi == group.zero:
            continue
        total = _branch_sum(surface, ((a, reduced[b]) for a, b in zip(alpha, basis)))
        beta = (
            (sum(a * r for a, r in zip(alpha, rv)) // m, c.cls)
            for rv, m, c in zip(rs, ms, branch)
        )
        L[chi] = surface.reduce(total - _branch_sum(surface, beta))
    return L


def verify_fundamental(bd: BuildingData) -> list[FundamentalViolation]:
    """Check L_chi + L_chi' = L_(chi+chi') + sum eps D for every pair of characters."""
    G, S = bd.group, bd.surface
    chars = list(G.characters())
    # frac <chi, v> scaled by m_v, i.e. r-values
    rtab = [{chi: r_value(G, chi, c.v) for chi in chars} for c in bd.branch]
    ms = [order(G, c.v) for c in bd.branch]
    out = []
    for i, chi in enumerate(chars):
        for chi2 in chars[i:]:
            lhs = bd.L_of(chi) + bd.L_of(chi2) - bd.L_of(G.add(chi, chi2))
            eps = _branch_sum(
                S, ((int(rt[chi] + rt[chi2] >= m), c.cls) for rt, m, c in zip(rtab, ms, bd.branch))
            )
            diff = S.reduce(lhs - eps)
            if not diff.is_zero():
                out.append(FundamentalViolation(chi, chi2, diff))
    return out


def verify_d_power(bd: BuildingData) -> list[tuple[Element, DivisorClass]]:
    """Check ord(chi) L_chi = sum_v (ord(chi) r_chi(v) / m_v) D_v for every chi != 1."""
    G, S = bd.group, bd.surface
    out = []
    for chi, L in bd.L.items():
        d = order(G, chi)
        rhs = _branch_sum(S, ((int(d * pairing(G, chi, c.v)), c.cls) for c in bd.branch))
        diff = S.reduce(d * L - rhs)
        if not diff.is_zero():
            out.append((chi, diff))
    return out


def trivial_bundles(bd: BuildingData) -> list[Element]:
    """Characters whose L_chi is zero in the lattice (the cover would be disconnected)."""
    return [chi for chi, L in bd.L.items() if L.is_zero()]


def totally_ramified(bd: BuildingData) -> bool:
    if bd.group.size == 1:
        return True
    return abgroup.generate(bd.group, [c.v for c in bd.branch]).size == bd.group.size


def _injective(G: GroupSpec, vs: Sequence[Element]) -> bool:
    """Is <v_1> + ... + <v_s> -> G injective?"""
    expected = 1
    for v in vs:
        expected *= order(G, v)
    return abgroup.generate(G, vs).size == expected


def smoothness_check(bd: BuildingData) -> SmoothnessReport:
    """Group-theoretic smoothness test over every intersection point of the branch locus.

    Smoothness and normal crossings of the components are taken from the
    declarations and the configuration mode; injectivity of the sum of inertia
    subgroups is checked at each point.
    """
    G, S = bd.group, bd.surface
    by_label = {c.label: c for c in bd.branch}
    failing = []
    if bd.config.mode is ConfigMode.EXPLICIT_POINTS:
        points = [(pid, tuple(labels)) for pid, labels in bd.config.points]
    else:
        points = [
            (f"{a.label}.{b.label}", (a.label, b.label))
            for a, b in combinations(bd.branch, 2)
            if intersect(S, a.cls, b.cls) > 0
        ]
    for pid, labels in points:
        if len(labels) > 2:
            failing.append((pid, labels, "not normal crossings"))
            continue
        vs = [by_label[lab].v for lab in labels]
        if not _injective(G, vs):
            failing.append((pid, labels, "inertia sum not injective"))
    undeclared = tuple(c.label for c in bd.branch if not c.declared_smooth)
    if failing:
        status = Tri.NO
    elif undeclared:
        status = Tri.UNDETERMINED
    else:
        status = Tri.YES
    return SmoothnessReport(status, tuple(failing), undeclared)


def adjunction_class(bd: BuildingData) -> RationalClass:
    """K_Y + sum_v (1 - 1/m_v) D_v; its pullback is K_X."""
    total = RationalClass.of(bd.surface.canonical)
    for c in bd.branch:
        m = order(bd.group, c.v)
        total = total + c.cls * Fraction(m - 1, m)
    return total


def invariants(bd: BuildingData, require_integral_K2: bool = True) -> CoverInvariants:
    """K^2, p_g, q, chi of the cover.

    ``require_integral_K2=False`` is meant for normal singular covers (such as
    intermediate quotients), whose K^2 may be fractional.
    """
    S, G = bd.surface, bd.group
    A = adjunction_class(bd)
    K2 = G.size * intersect(S, A, A)
    if isinstance(K2, Fraction):
        if K2.denominator != 1:
            if require_integral_K2:
                raise NonIntegralK2(f"K^2 = {K2} is not an integer: inconsistent building data")
        else:
            K2 = int(K2)
    pg, q = S.pg, S.q
    for L in bd.L.values():
        pg += cohomology(S, S.canonical + L)[0]
        q += cohomology(S, -L)[1]
    chi = 1 - q + pg
    return CoverInvariants(K2, pg, q, chi, A, _minimal_general_type(bd, A))


def _minimal_general_type(bd: BuildingData, A: RationalClass) -> Tri:
    if smoothness_check(bd).smooth is not Tri.YES:
        return Tri.UNDETERMINED
    try:
        nef = is_nef(bd.surface, A)
    except UnsupportedSurface:
        return Tri.UNDETERMINED
    # K_X = f^*A: nef iff A nef, and then big iff A^2 > 0
    if nef and intersect(bd.surface, A, A) > 0:
        return Tri.YES
    return Tri.NO


def chi_riemann_roch(bd: BuildingData) -> int:
    """chi(O_X) = chi(O_Y) + sum_chi chi(-L_chi), each term by Riemann-Roch."""
    S = bd.surface
    return S.chi_O + sum(euler_characteristic(S, -L) for L in bd.L.values())


def is_simple_cyclic(bd: BuildingData) -> bool:
    G = bd.group
    if G.rank != 1 or not bd.branch:
        return False
    vs = {c.v for c in bd.branch}
    return len(vs) == 1 and order(G, next(iter(vs))) == G.size


def simple_cyclic_adjunction(bd: BuildingData) -> DivisorClass:
    """K_Y + (d-1) L for a simple cyclic cover d L = D."""
    if not is_simple_cyclic(bd):
        raise InvalidBuildingData("cover is not simple cyclic")
    G, S = bd.group, bd.surface
    d = G.size
    v = bd.branch[0].v
    chi = next(c for c in G.characters() if c != G.zero and r_value(G, c, v) == 1)
    K = S.canonical + (d - 1) * bd.L_of(chi)
    A = adjunction_class(bd)
    # torsion coordinates are invisible to the Q-class, so compare numerically
    if tuple(A.coeffs[: S.rank]) != tuple(K.coeffs[: S.rank]):
        raise InvalidBuildingData(f"simple cyclic adjunction {K} disagrees with {A}")
    return K


def quotient_building_data(
    bd: BuildingData, gamma: abgroup.Subgroup
) -> tuple[abgroup.Quotient, BuildingData]:
    """Building data of X/gamma -> Y as a (G/gamma)-cover.

    Branch components are pushed forward along the projection (dropped when
    their inertia element dies) and L_chibar is L of the lifted character.
    """
    quo = abgroup.quotient(bd.group, gamma)
    branch = []
    for c in bd.branch:
        vbar = quo.project(c.v)
        if vbar != quo.group.zero:
            branch.append(BranchComponent(c.label, vbar, c.cls, c.declared_smooth,
                                          c.declared_irreducible))
    L = {cb: bd.L_of(quo.lift_character(cb)) for cb in quo.group.characters()
         if cb != quo.group.zero}
    labels = {c.label for c in branch}
    points = tuple(
        (pid, tuple(lab for lab in labs if lab in labels)) for pid, labs in bd.config.points
    )
    points = tuple(p for p in points if len(p[1]) >= 2)
    config = ConfigurationAssumption(bd.config.mode, points)
    return quo, BuildingData(bd.surface, quo.group, tuple(branch), L, config)
