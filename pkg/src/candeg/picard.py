"""Picard lattices of base surfaces.

A divisor class is an integer vector in the fixed basis of its surface.
Intersection numbers use the surface's Gram matrix; cohomology of line
bundles is computed exactly for the rational bases (plane, quadric, del
Pezzo blow-ups of at most three points) and looked up for declared ones.

Supported kinds and bases::

    ProjectivePlane        (h)                 gram [1]
    QuadricProduct         (F1, F2)            gram [[0,1],[1,0]]
    DelPezzoBlowup(r<=3)   (h, e1, ..., er)    gram diag(1,-1,...,-1)
    DeclaredProduct        (P, F, torsion...)  C x P^1, P = pt x P^1, F = C x pt
    Declared               user-supplied lattice and cohomology table

Torsion line bundles on a declared curve are carried as trailing
coordinates reduced modulo their order; they are invisible to the
intersection form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, UnresolvableCohomology, UnsupportedSurface

__all__ = [
    "DivisorClass",
    "RationalClass",
    "SurfaceKind",
    "BaseSurface",
    "projective_plane",
    "quadric",
    "del_pezzo",
    "declared_product",
    "declared_surface",
    "intersect",
    "euler_characteristic",
    "cohomology",
    "h0",
    "is_nef",
    "line_cohomology",
]


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> DivisorClass:
        return cls((0,) * n)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other):
        if len(other) != len(self):
            raise DimensionMismatch(f"class lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other):
        if isinstance(other, RationalClass):
            return RationalClass.of(self) + other
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if isinstance(other, RationalClass):
            return RationalClass.of(self) - other
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __mul__(self, k):
        if isinstance(k, Fraction):
            return RationalClass.of(self) * k
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        return f"DivisorClass{self.coeffs}"


@dataclass(frozen=True)
class RationalClass:
    """Q-divisor class with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, d: DivisorClass) -> RationalClass:
        return cls(tuple(Fraction(c) for c in d.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other):
        if isinstance(other, DivisorClass):
            other = RationalClass.of(other)
        if not isinstance(other, RationalClass):
            return NotImplemented
        if len(other) != len(self):
            raise DimensionMismatch(f"class lengths differ: {len(self)} vs {len(other)}")
        return RationalClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return RationalClass(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return RationalClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_divisor(self) -> DivisorClass:
        if not self.is_integral():
            raise ValueError(f"class {self} is not integral")
        return DivisorClass(tuple(int(c) for c in self.coeffs))

    def __repr__(self):
        return "RationalClass(" + ", ".join(str(c) for c in self.coeffs) + ")"


class SurfaceKind(str, Enum):
    PROJECTIVE_PLANE = "ProjectivePlane"
    QUADRIC = "QuadricProduct"
    DEL_PEZZO = "DelPezzoBlowup"
    DECLARED_PRODUCT = "DeclaredProduct"
    DECLARED = "Declared"

    @property
    def computable(self) -> bool:
        return self in (SurfaceKind.PROJECTIVE_PLANE, SurfaceKind.QUADRIC, SurfaceKind.DEL_PEZZO)


@dataclass(frozen=True, eq=False)
class BaseSurface:
    """A base surface Y together with its Picard lattice data.

    ``curves`` generate the cone of curves (used for nef tests and for peeling
    fixed (-1)-curves); ``torsion`` lists the orders of trailing torsion
    coordinates. ``curve_table`` maps ``(degree, torsion)`` on the curve factor
    of a DeclaredProduct to ``(h0, h1)``; ``cohomology_table`` maps coefficient
    tuples of a Declared surface to ``(h0, h1, h2)``.
    """

    kind: SurfaceKind
    rank: int
    gram: tuple[tuple[int, ...], ...]
    canonical: DivisorClass
    q: int = 0
    pg: int = 0
    curves: tuple[DivisorClass, ...] = ()
    torsion: tuple[int, ...] = ()
    names: Mapping[str, DivisorClass] = field(default_factory=dict)
    points: int = 0
    genus: int = 0
    curve_table: Mapping[tuple, tuple[int, int]] = field(default_factory=dict)
    cohomology_table: Mapping[tuple, tuple[int, int, int]] = field(default_factory=dict)
    label: str = ""

    @property
    def dim(self) -> int:
        """Length of a coefficient vector (numerical rank plus torsion slots)."""
        return self.rank + len(self.torsion)

    @property
    def chi_O(self) -> int:
        return 1 - self.q + self.pg

    def reduce(self, D: DivisorClass) -> DivisorClass:
        self.check(D)
        if not self.torsion:
            return D
        free = D.coeffs[: self.rank]
        tors = tuple(c % o for c, o in zip(D.coeffs[self.rank:], self.torsion))
        return DivisorClass(free + tors)

    def check(self, D) -> None:
        if len(D) != self.dim:
            raise DimensionMismatch(
                f"class of length {len(D)} on {self.kind.value} (expects {self.dim})"
            )

    def equal(self, A: DivisorClass, B: DivisorClass) -> bool:
        return self.reduce(A - B).is_zero()

    def cls(self, *coeffs: int) -> DivisorClass:
        D = DivisorClass(coeffs)
        self.check(D)
        return D

    @property
    def K(self) -> DivisorClass:
        return self.canonical

    def __repr__(self):
        return f"BaseSurface({self.label or self.kind.value})"


def _basis(n: int, i: int) -> DivisorClass:
    return DivisorClass(tuple(1 if j == i else 0 for j in range(n)))


def projective_plane() -> BaseSurface:
    h = DivisorClass((1,))
    return BaseSurface(
        kind=SurfaceKind.PROJECTIVE_PLANE,
        rank=1,
        gram=((1,),),
        canonical=DivisorClass((-3,)),
        curves=(h,),
        names={"h": h, "K": DivisorClass((-3,))},
        label="P2",
    )


def quadric() -> BaseSurface:
    F1, F2 = DivisorClass((1, 0)), DivisorClass((0, 1))
    K = DivisorClass((-2, -2))
    return BaseSurface(
        kind=SurfaceKind.QUADRIC,
        rank=2,
        gram=((0, 1), (1, 0)),
        canonical=K,
        curves=(F1, F2),
        names={"F1": F1, "F2": F2, "K": K},
        label="P1xP1",
    )


def del_pezzo(points: int) -> BaseSurface:
    """Blow-up of the plane at ``points`` <= 3 general points (degree 9 - points)."""
    if not 0 <= points <= 3:
        raise UnsupportedSurface(
            f"del Pezzo blow-up of {points} points: only 0..3 have a built-in curve list"
        )
    n = points + 1
    h = _basis(n, 0)
    es = [_basis(n, i) for i in range(1, n)]
    K = -3 * h
    for e in es:
        K = K + e
    gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n))
    # generators of the cone of curves for r <= 3
    if points == 0:
        curves = [h]
    elif points == 1:
        curves = [es[0], h - es[0]]
    else:
        curves = list(es) + [h - a - b for a, b in combinations(es, 2)]
    names = {"h": h, "K": K}
    for i, e in enumerate(es, 1):
        names[f"e{i}"] = e
        names[f"F{i}"] = h - e
    return BaseSurface(
        kind=SurfaceKind.DEL_PEZZO,
        rank=n,
        gram=gram,
        canonical=K,
        curves=tuple(curves),
        names=names,
        points=points,
        label=f"dP{9 - points}",
    )


def _curve_chi(deg: int, genus: int) -> int:
    return deg + 1 - genus


def declared_product(
    genus: int,
    torsion: Sequence[int] = (),
    curve_table: Mapping[tuple, tuple[int, int]] | None = None,
    torsion_names: Sequence[str] = (),
) -> BaseSurface:
    """C x P^1 with C of the given genus and a declared table of curve bundles.

    Keys of ``curve_table`` are ``(degree, (t1, ...))``; every entry is checked
    against Riemann-Roch on the curve.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    torsion = tuple(int(t) for t in torsion)
    n = 2 + len(torsion)
    table = {}
    for key, (a, b) in (curve_table or {}).items():
        deg, tors = key
        tors = tuple(t % o for t, o in zip(tors, torsion))
        if len(tors) != len(torsion):
            raise DimensionMismatch(f"curve table key {key} has wrong torsion length")
        if a < 0 or b < 0:
            raise ValueError(f"curve table entry {key}: negative dimension")
        if a - b != _curve_chi(deg, genus):
            raise ValueError(
                f"curve table entry {key}: h0-h1={a - b} contradicts Riemann-Roch "
                f"({_curve_chi(deg, genus)})"
            )
        table[(deg, tors)] = (a, b)
    P, F = _basis(n, 0), _basis(n, 1)
    K = DivisorClass((2 * genus - 2, -2) + (0,) * len(torsion))
    names = {"P": P, "F": F, "K": K}
    for i, name in enumerate(torsion_names):
        names[name] = _basis(n, 2 + i)
    gram = ((0, 1), (1, 0))
    # h^1(O_Y) = h^1(O_C) h^0(O) ; h^2(O_Y) = h^1(O_C) h^1(O(0)) = 0
    return BaseSurface(
        kind=SurfaceKind.DECLARED_PRODUCT,
        rank=2,
        gram=gram,
        canonical=K,
        q=genus,
        pg=0,
        curves=(P, F),
        torsion=torsion,
        names=names,
        genus=genus,
        curve_table=table,
        label=f"C{genus}xP1",
    )


def declared_surface(
    gram: Sequence[Sequence[int]],
    canonical: Sequence[int],
    q: int,
    pg: int,
    cohomology_table: Mapping[tuple, tuple[int, int, int]] | None = None,
    names: Mapping[str, Sequence[int]] | None = None,
) -> BaseSurface:
    rank = len(gram)
    gram_t = tuple(tuple(int(x) for x in row) for row in gram)
    if any(len(row) != rank for row in gram_t):
        raise DimensionMismatch("gram matrix must be square")
    if any(gram_t[i][j] != gram_t[j][i] for i in range(rank) for j in range(rank)):
        raise ValueError("gram matrix must be symmetric")
    K = DivisorClass(tuple(canonical))
    if len(K) != rank:
        raise DimensionMismatch("canonical class has wrong length")
    table = {tuple(int(c) for c in k): tuple(v) for k, v in (cohomology_table or {}).items()}
    named = {k: DivisorClass(tuple(v)) for k, v in (names or {}).items()}
    named.setdefault("K", K)
    return BaseSurface(
        kind=SurfaceKind.DECLARED,
        rank=rank,
        gram=gram_t,
        canonical=K,
        q=q,
        pg=pg,
        cohomology_table=table,
        names=named,
        label="declared",
    )


def intersect(S: BaseSurface, A, B):
    """Intersection number A.B; exact rational if either class is rational."""
    S.check(A)
    S.check(B)
    r = S.rank
    total = sum(S.gram[i][j] * A[i] * B[j] for i in range(r) for j in range(r))
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def euler_characteristic(S: BaseSurface, D: DivisorClass) -> int:
    """chi(O_Y(D)) by Riemann-Roch."""
    twice = intersect(S, D, D - S.canonical)
    if twice % 2:
        raise ValueError(f"D.(D-K) odd for {D}: lattice data inconsistent")
    return S.chi_O + twice // 2


def line_cohomology(n: int) -> tuple[int, int]:
    """(h0, h1) of O(n) on P^1."""
    if n >= 0:
        return n + 1, 0
    return 0, -n - 1


def _kunneth(first: tuple[int, int], second: tuple[int, int]) -> tuple[int, int, int]:
    a0, a1 = first
    b0, b1 = second
    return a0 * b0, a0 * b1 + a1 * b0, a1 * b1


def _plane_h0(a: int) -> int:
    return comb(a + 2, 2) if a >= 0 else 0


def _del_pezzo_h0(S: BaseSurface, D: DivisorClass) -> int:
    anti = -S.canonical
    while True:
        if intersect(S, D, anti) < 0:
            return 0
        for C in S.curves:
            if intersect(S, D, C) < 0:
                if intersect(S, C, C) < 0:
                    # C is a fixed component of |D|
                    D = D - C
                    break
                return 0
        else:
            return euler_characteristic(S, D)


def _curve_cohomology(S: BaseSurface, deg: int, tors: tuple[int, ...]) -> tuple[int, int]:
    g = S.genus
    chi = _curve_chi(deg, g)
    if deg < 0:
        return 0, -chi
    if deg > 2 * g - 2:
        return chi, 0
    trivial = not any(tors)
    if trivial and deg == 0:
        return 1, g
    if trivial and deg == 2 * g - 2:
        return g, 1
    if (deg, tors) in S.curve_table:
        return S.curve_table[(deg, tors)]
    dual = (2 * g - 2 - deg, tuple((-t) % o for t, o in zip(tors, S.torsion)))
    if dual in S.curve_table:
        a, b = S.curve_table[dual]
        return b, a
    raise UnresolvableCohomology(
        f"curve bundle of degree {deg} with torsion {tors} missing from the declared table"
    )


def cohomology(S: BaseSurface, D: DivisorClass) -> tuple[int, int, int]:
    """(h0, h1, h2) of the line bundle O_Y(D)."""
    S.check(D)
    D = S.reduce(D)
    kind = S.kind
    if kind is SurfaceKind.PROJECTIVE_PLANE:
        a = D[0]
        h0_, h2_ = _plane_h0(a), _plane_h0(-3 - a)
        return h0_, h0_ + h2_ - euler_characteristic(S, D), h2_
    if kind is SurfaceKind.QUADRIC:
        return _kunneth(line_cohomology(D[0]), line_cohomology(D[1]))
    if kind is SurfaceKind.DEL_PEZZO:
        h0_ = _del_pezzo_h0(S, D)
        h2_ = _del_pezzo_h0(S, S.canonical - D)
        return h0_, h0_ + h2_ - euler_characteristic(S, D), h2_
    if kind is SurfaceKind.DECLARED_PRODUCT:
        curve = _curve_cohomology(S, D[0], tuple(D.coeffs[2:]))
        return _kunneth(curve, line_cohomology(D[1]))
    key = tuple(D.coeffs)
    if key in S.cohomology_table:
        return tuple(S.cohomology_table[key])
    dual = tuple((S.canonical - D).coeffs)
    if dual in S.cohomology_table:
        a, b, c = S.cohomology_table[dual]
        return c, b, a
    raise UnresolvableCohomology(f"class {key} missing from the declared cohomology table")


def h0(S: BaseSurface, D: DivisorClass) -> int:
    return cohomology(S, D)[0]


def is_nef(S: BaseSurface, D) -> bool:
    """Nonnegative on every generator of the cone of curves.

    Accepts integral or rational classes. Declared surfaces carry no curve
    cone and are rejected.
    """
    if S.kind is SurfaceKind.DECLARED:
        raise UnsupportedSurface("nef test is not available on a Declared surface")
    return all(intersect(S, D, C) >= 0 for C in S.curves)


def sum_classes(S: BaseSurface, classes: Iterable[DivisorClass]) -> DivisorClass:
    total = DivisorClass.zero(S.dim)
    for c in classes:
        total = total + c
    return total
