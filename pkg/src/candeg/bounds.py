"""Inequalities bounding the degree of the canonical map.

Every rule is an inequality LHS >= RHS evaluated in exact integers; a
verdict records its slack LHS - RHS. Case "A" means the canonical image has
p_g = 0, case "B" means the image is itself a canonically embedded surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

__all__ = [
    "SurfaceRecord",
    "Verdict",
    "FeasibleRow",
    "RULES",
    "STATED_CASE_B_MAX_PG",
    "XIAO_PG_THRESHOLD",
    "check",
    "max_degree",
    "enumerate_feasible",
]

XIAO_PG_THRESHOLD = 132

# published upper bounds on p_g for case B, compared against the computed ones
STATED_CASE_B_MAX_PG = {4: 9, 5: 7, 6: 5, 7: 4, 8: 4, 9: 4}


@dataclass(frozen=True)
class SurfaceRecord:
    case: str
    d: int
    pg: int
    q_X: int = 0
    q_Sigma: int = 0
    K2: int | None = None
    M2: int | None = None
    degSigma: int | None = None

    def __post_init__(self):
        if self.case not in ("A", "B"):
            raise ValueError(f"case must be 'A' or 'B', got {self.case!r}")
        if self.d < 2:
            raise ValueError(f"degree d = {self.d} must be >= 2")
        if self.pg < 3:
            raise ValueError(f"p_g = {self.pg} must be >= 3")
        if self.q_X < 0 or self.q_Sigma < 0:
            raise ValueError("irregularities must be nonnegative")
        if self.K2 is not None and self.M2 is not None and self.M2 > self.K2:
            raise ValueError(f"moving part square {self.M2} exceeds K^2 = {self.K2}")

    @property
    def chi(self) -> int:
        return 1 - self.q_X + self.pg


@dataclass(frozen=True)
class Verdict:
    rule: str
    status: str
    citation: str
    slack: int | None = None


@dataclass(frozen=True)
class _Rule:
    rule: str
    citation: str
    cases: tuple[str, ...]
    needs: tuple[str, ...]
    slack: Callable[[SurfaceRecord], int]
    degrees: tuple[int, ...] | None = None


RULES: tuple[_Rule, ...] = (
    _Rule("R1", "M^2 >= d deg(image)", ("A", "B"), ("M2", "degSigma"),
          lambda r: r.M2 - r.d * r.degSigma),
    _Rule("R2-A", "deg(image) >= p_g - 2 (nondegenerate image in P^(p_g-1))", ("A",), ("degSigma",),
          lambda r: r.degSigma - (r.pg - 2)),
    _Rule("R2-B", "deg(image) >= 3 p_g + q(image) - 7 (image canonically embedded)", ("B",),
          ("degSigma",), lambda r: r.degSigma - (3 * r.pg + r.q_Sigma - 7)),
    _Rule("R3-A", "K^2 >= d (p_g - 2)", ("A",), ("K2",),
          lambda r: r.K2 - r.d * (r.pg - 2)),
    _Rule("R3-B", "K^2 >= d (3 p_g + q(image) - 7)", ("B",), ("K2",),
          lambda r: r.K2 - r.d * (3 * r.pg + r.q_Sigma - 7)),
    _Rule("R4", "Bogomolov-Miyaoka-Yau: 9 chi >= K^2", ("A", "B"), ("K2",),
          lambda r: 9 * r.chi - r.K2),
    _Rule("R5", "27 - 9q >= (d - 9)(p_g - 2)", ("A",), (),
          lambda r: 27 - 9 * r.q_X - (r.d - 9) * (r.pg - 2)),
    _Rule("R6", "30 - 9q - d q(image) >= (d - 3)(3 p_g - 7)", ("B",), (),
          lambda r: 30 - 9 * r.q_X - r.d * r.q_Sigma - (r.d - 3) * (3 * r.pg - 7)),
    _Rule("R7", "K^2 >= 6 p_g + 2 q(image) - 14 (case B, d = 2)", ("B",), ("K2",),
          lambda r: r.K2 - (6 * r.pg + 2 * r.q_Sigma - 14), degrees=(2,)),
    _Rule("R8", "K^2 >= 9 p_g + 3 q(image) - 21 (case B, d = 3)", ("B",), ("K2",),
          lambda r: r.K2 - (9 * r.pg + 3 * r.q_Sigma - 21), degrees=(3,)),
)


def check(record: SurfaceRecord) -> list[Verdict]:
    out = []
    for rule in RULES:
        applicable = (
            record.case in rule.cases
            and all(getattr(record, f) is not None for f in rule.needs)
            and (rule.degrees is None or record.d in rule.degrees)
        )
        if not applicable:
            out.append(Verdict(rule.rule, "inapplicable", rule.citation))
            continue
        s = rule.slack(record)
        out.append(Verdict(rule.rule, "pass" if s >= 0 else "fail", rule.citation, s))
    return out


def max_degree(case: str, pg: int, q_X: int = 0, q_Sigma: int = 0) -> int | None:
    """Largest d >= 2 allowed by R5 (case A) or R6 (case B); None if there is none."""
    if case == "A":
        if pg < 3:
            return None
        # R5 rearranged: d (p_g - 2) <= 9 (1 - q + p_g)
        d = 9 * (1 - q_X + pg) // (pg - 2)
        if pg > XIAO_PG_THRESHOLD:
            d = min(d, 8)
    elif case == "B":
        if pg < 4:
            return None
        # R6 rearranged: d (3 p_g + q(image) - 7) <= 9 (1 - q + p_g)
        d = 9 * (1 - q_X + pg) // (3 * pg + q_Sigma - 7)
    else:
        raise ValueError(f"case must be 'A' or 'B', got {case!r}")
    return d if d >= 2 else None


@dataclass(frozen=True)
class FeasibleRow:
    d: int
    max_pg: int | None
    unbounded: bool
    stated: int | None = None

    @property
    def discrepancy(self) -> bool:
        return self.stated is not None and self.stated != self.max_pg


def enumerate_feasible(
    case: str, d_range: Iterable[int], q_X: int = 0, q_Sigma: int = 0, pg_limit: int = 10_000
) -> list[FeasibleRow]:
    """For each d, the largest p_g passing R5 or R6 (scan up to ``pg_limit``)."""
    rule = next(r for r in RULES if r.rule == ("R5" if case == "A" else "R6"))
    low = 3 if case == "A" else 4
    rows = []
    for d in d_range:
        best = None
        for pg in range(low, pg_limit + 1):
            if case == "A" and d > 8 and pg > XIAO_PG_THRESHOLD:
                break
            if rule.slack(SurfaceRecord(case, d, pg, q_X, q_Sigma)) >= 0:
                best = pg
        unbounded = best == pg_limit
        stated = STATED_CASE_B_MAX_PG.get(d) if case == "B" and q_X == 0 and q_Sigma == 0 else None
        rows.append(FeasibleRow(d, None if unbounded else best, unbounded, stated))
    return rows
