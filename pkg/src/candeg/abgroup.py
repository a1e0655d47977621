"""Finite abelian groups G = Z_d1 x ... x Z_dk and their characters.

Elements and characters are integer tuples reduced modulo the orders. The
pairing of a character chi with an element v is the exact rational

    <chi, v> = sum_j chi_j v_j / d_j   (mod 1),

so chi(v) = exp(2 pi i <chi, v>) and no root of unity is ever materialised.
A nonzero element v of order m stands for the inertia pair (<v>, psi_v) with
psi_v(v) = exp(2 pi i / m); under this encoding the r-value of chi at v is
m * <chi, v>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "GroupSpec",
    "Subgroup",
    "Quotient",
    "order",
    "pairing",
    "r_value",
    "epsilon",
    "generate",
    "annihilator",
    "perp",
    "quotient",
    "subgroups",
    "inertia_pair",
    "smith_normal_form",
]

Element = tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        if any(d < 2 for d in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.orders, 1)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def elem(self, v: Sequence[int]) -> Element:
        if len(v) != self.rank:
            raise ValueError(f"element {tuple(v)} does not have length {self.rank}")
        return tuple(int(x) % d for x, d in zip(v, self.orders))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.elem([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> Element:
        return self.elem([-x for x in a])

    def scale(self, k: int, a: Sequence[int]) -> Element:
        return self.elem([k * x for x in a])

    def elements(self) -> Iterator[Element]:
        return product(*(range(d) for d in self.orders))

    # characters use the same encoding via the dual basis
    characters = elements

    def __str__(self):
        if not self.orders:
            return "trivial"
        return " x ".join(f"Z{d}" for d in self.orders)


def order(G: GroupSpec, v: Sequence[int]) -> int:
    v = G.elem(v)
    return reduce(lcm, (d // gcd(d, x) for d, x in zip(G.orders, v)), 1)


def pairing(G: GroupSpec, chi: Sequence[int], v: Sequence[int]) -> Fraction:
    total = sum(Fraction(c * x, d) for c, x, d in zip(G.elem(chi), G.elem(v), G.orders))
    return total - (total.numerator // total.denominator)


def r_value(G: GroupSpec, chi: Sequence[int], v: Sequence[int]) -> int:
    """Smallest r >= 0 with chi restricted to <v> equal to psi_v^r."""
    m = order(G, v)
    if m == 1:
        raise ValueError("r-value undefined at the zero element")
    r = m * pairing(G, chi, v)
    assert r.denominator == 1
    return int(r)


def epsilon(G: GroupSpec, chi: Sequence[int], chi2: Sequence[int], v: Sequence[int]) -> int:
    return int(r_value(G, chi, v) + r_value(G, chi2, v) >= order(G, v))


@dataclass(frozen=True)
class Subgroup:
    group: GroupSpec
    generators: tuple[Element, ...]
    elements: frozenset

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return self.group.elem(v) in self.elements

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group == other.group and self.elements == other.elements

    def __hash__(self):
        return hash((self.group, self.elements))

    def is_cyclic(self) -> bool:
        return any(order(self.group, v) == self.size for v in self.elements)


def generate(G: GroupSpec, gens: Iterable[Sequence[int]]) -> Subgroup:
    gens = tuple(G.elem(g) for g in gens)
    seen = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, gens, frozenset(seen))


def annihilator(G: GroupSpec, chars: Iterable[Sequence[int]]) -> Subgroup:
    """Subgroup {v : <chi, v> = 0 for every chi in chars}."""
    chars = [G.elem(c) for c in chars]
    elems = [v for v in G.elements() if all(pairing(G, c, v) == 0 for c in chars)]
    return Subgroup(G, tuple(_minimal_generators(G, elems)), frozenset(elems))


def perp(G: GroupSpec, gamma: Subgroup | Iterable[Sequence[int]]) -> list[Element]:
    """Characters vanishing on gamma, in lexicographic order."""
    elems = gamma.elements if isinstance(gamma, Subgroup) else [G.elem(v) for v in gamma]
    return [c for c in G.characters() if all(pairing(G, c, v) == 0 for v in elems)]


def _minimal_generators(G: GroupSpec, elems: Iterable[Element]) -> list[Element]:
    target = set(elems)
    gens: list[Element] = []
    span = {G.zero}
    # greedy by decreasing order keeps cyclic subgroups single-generated
    for v in sorted(target, key=lambda x: (-order(G, x), x)):
        if v not in span:
            gens.append(v)
            span = set(generate(G, gens).elements)
        if span == target:
            break
    return gens


def subgroups(G: GroupSpec) -> list[Subgroup]:
    """All subgroups of G (intended for small groups)."""
    cyclic = {generate(G, [v]) for v in G.elements()}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if not C.elements <= H.elements:
                    J = generate(G, H.generators + C.generators)
                    if J not in found:
                        new.add(J)
        found |= new
        frontier = new
    return sorted(found, key=lambda H: (H.size, sorted(H.elements)))


def inertia_pair(G: GroupSpec, v: Sequence[int]) -> tuple[frozenset, frozenset]:
    """The pair (H, psi) encoded by v: H = <v>, psi(k v) = k / |H| mod 1."""
    v = G.elem(v)
    m = order(G, v)
    H = generate(G, [v]).elements
    psi = frozenset((G.scale(k, v), Fraction(k, m)) for k in range(m))
    return H, psi


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return (S, U, V) with U A V = S diagonal, d1 | d2 | ..., U and V unimodular."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in M:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(t, i, -(M[i][t] // p))
                    clean = clean and M[i][t] == 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(t, j, -(M[t][j] // p))
                    clean = clean and M[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
    return M, U, V


@dataclass(frozen=True)
class Quotient:
    """G / gamma in invariant-factor form, with the projection and character lift."""

    source: GroupSpec
    gamma: Subgroup
    group: GroupSpec
    _rows: tuple[tuple[int, ...], ...]

    def project(self, v: Sequence[int]) -> Element:
        v = self.source.elem(v)
        return self.group.elem([sum(a * x for a, x in zip(row, v)) for row in self._rows])

    def lift_character(self, chi_bar: Sequence[int]) -> Element:
        """The character of G (lying in gamma-perp) that chi_bar induces."""
        G = self.source
        chi = []
        for j, d in enumerate(G.orders):
            e = tuple(int(i == j) for i in range(G.rank))
            value = d * pairing(self.group, chi_bar, self.project(e))
            assert value.denominator == 1
            chi.append(int(value))
        return G.elem(chi)

    def character_map(self) -> dict[Element, Element]:
        return {c: self.lift_character(c) for c in self.group.characters()}


def quotient(G: GroupSpec, gamma: Subgroup) -> Quotient:
    k = G.rank
    cols = [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(G.orders)]
    cols += [g for g in gamma.generators if any(g)]
    R = [[c[i] for c in cols] for i in range(k)]
    S, U, _ = smith_normal_form(R)
    keep = [i for i in range(k) if S[i][i] > 1]
    orders = tuple(S[i][i] for i in keep)
    rows = tuple(tuple(U[i]) for i in keep)
    return Quotient(G, gamma, GroupSpec(orders), rows)
