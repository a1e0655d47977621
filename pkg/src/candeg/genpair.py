"""Generating pairs and the surface sequences they produce.

A generating pair is recorded by its numbers alone: the degree nu of
h: V -> W, the invariants of V and W, the class L on W (through L^2 and
h^0(L)), and the genera g of a curve C in |L| and g_bar of its preimage.
For each n >= 3 the pair yields X_n with canonical map onto Sigma_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "GeneratingPairSpec",
    "SequenceInvariants",
    "PairCheck",
    "validate_pair",
    "sequence",
    "slope_limit",
    "sigma_slope_limit",
]


@dataclass(frozen=True)
class GeneratingPairSpec:
    name: str
    nu: int
    pg_W: int
    pg_V: int
    K2_W: int
    K2_V: int
    L2: int
    h0_L: int
    g: int
    g_bar: int
    C_hyperelliptic: bool
    notes: str = ""
    # optional data enabling extra adjunction checks
    L_is_KW: bool = False
    KW_dot_L: int | None = None
    KV_dot_hL: int | None = None

    @property
    def q_V(self) -> int:
        return self.g_bar - self.g


@dataclass(frozen=True)
class PairCheck:
    violations: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SequenceInvariants:
    n: int
    pg: int
    q_X: int
    q_Sigma: int
    K2_X: int
    K2_Sigma: int
    degree: int
    case: str

    @property
    def chi_X(self) -> int:
        return 1 - self.q_X + self.pg


def validate_pair(spec: GeneratingPairSpec) -> PairCheck:
    bad, warn = [], []
    if spec.nu < 2:
        bad.append(f"nu = {spec.nu} < 2")
    if spec.pg_W != spec.pg_V:
        bad.append(f"p_g(W) = {spec.pg_W} differs from p_g(V) = {spec.pg_V}")
    if spec.L2 <= 0:
        bad.append(f"L^2 = {spec.L2} is not positive")
    if spec.h0_L < 2:
        bad.append(f"h^0(L) = {spec.h0_L} < 2")
    if spec.g < 2:
        bad.append(f"g = {spec.g} < 2")
    if spec.q_V <= 0:
        bad.append(f"q(V) = g_bar - g = {spec.q_V} is not positive")
    KW_dot_L = spec.K2_W if spec.L_is_KW else spec.KW_dot_L
    if spec.L_is_KW and spec.L2 != spec.K2_W:
        bad.append(f"L = K_W but L^2 = {spec.L2} differs from K_W^2 = {spec.K2_W}")
    if KW_dot_L is not None and 2 * spec.g - 2 != spec.L2 + KW_dot_L:
        bad.append(f"adjunction on W: 2g-2 = {2 * spec.g - 2} but L^2 + K_W.L = {spec.L2 + KW_dot_L}")
    if spec.KV_dot_hL is not None and 2 * spec.g_bar - 2 != spec.nu * spec.L2 + spec.KV_dot_hL:
        bad.append(
            f"adjunction on V: 2g_bar-2 = {2 * spec.g_bar - 2} but "
            f"nu L^2 + K_V.h*L = {spec.nu * spec.L2 + spec.KV_dot_hL}"
        )
    if spec.nu > 4 or (spec.nu > 3 and not spec.C_hyperelliptic):
        warn.append(
            f"nu = {spec.nu} exceeds the degree bound for generating pairs "
            f"({'hyperelliptic' if spec.C_hyperelliptic else 'non-hyperelliptic'} C)"
        )
    return PairCheck(tuple(bad), tuple(warn))


def sequence(spec: GeneratingPairSpec, n: int) -> SequenceInvariants:
    if n < 3:
        raise ValueError(f"sequence index n = {n} must be >= 3")
    check = validate_pair(spec)
    if not check.ok:
        raise ValueError(f"invalid generating pair {spec.name}: " + "; ".join(check.violations))
    pg = n * spec.pg_W + (n - 1) * spec.g
    K2_Sigma = n * (spec.K2_W - spec.L2) + 8 * (n - 1) * (spec.g - 1)
    K2_X = n * (spec.K2_V - spec.nu * spec.L2) + 8 * (n - 1) * (spec.g_bar - 1)
    if spec.C_hyperelliptic:
        degree, case = 2 * spec.nu, "A"
    else:
        degree, case = spec.nu, "B"
    return SequenceInvariants(n, pg, spec.q_V, 0, K2_X, K2_Sigma, degree, case)


def slope_limit(spec: GeneratingPairSpec) -> Fraction:
    """lim K^2(X_n) / chi(X_n) as n grows."""
    return Fraction(spec.K2_V - spec.nu * spec.L2 + 8 * (spec.g_bar - 1), spec.pg_W + spec.g)


def sigma_slope_limit(spec: GeneratingPairSpec) -> Fraction:
    """lim K^2(Sigma_n) / chi(Sigma_n); Sigma_n is regular."""
    return Fraction(spec.K2_W - spec.L2 + 8 * (spec.g - 1), spec.pg_W + spec.g)
