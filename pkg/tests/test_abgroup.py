from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from candeg.abgroup import (
    GroupSpec,
    annihilator,
    epsilon,
    generate,
    inertia_pair,
    order,
    pairing,
    perp,
    quotient,
    r_value,
    smith_normal_form,
    subgroups,
)

from oracles import brute_annihilator

Z3SQ = GroupSpec((3, 3))
SMALL_GROUPS = [GroupSpec(o) for o in [(2,), (4,), (6,), (2, 2), (3, 3), (2, 4), (2, 2, 2), (5, 5), (3, 9)]]


def test_orders_and_values():
    assert order(Z3SQ, (1, 2)) == 3
    assert order(GroupSpec((2, 4)), (1, 2)) == 2
    assert order(GroupSpec((6,)), (4,)) == 3
    assert pairing(Z3SQ, (1, 1), (1, 2)) == 0
    assert pairing(GroupSpec((5, 5)), (1, 0), (2, 3)) == Fraction(2, 5)
    assert r_value(GroupSpec((5, 5)), (1, 0), (2, 3)) == 2
    assert r_value(Z3SQ, (1, 0), (0, 1)) == 0


def test_r_value_rejects_zero():
    with pytest.raises(ValueError):
        r_value(Z3SQ, (1, 0), (0, 0))


def test_epsilon_examples():
    assert epsilon(Z3SQ, (1, 0), (1, 0), (1, 0)) == 0
    assert epsilon(Z3SQ, (2, 0), (2, 0), (1, 0)) == 1
    assert epsilon(Z3SQ, (1, 0), (2, 0), (1, 0)) == 1
    assert epsilon(Z3SQ, (0, 1), (0, 1), (1, 0)) == 0


def test_annihilator_example():
    ann = annihilator(Z3SQ, [(1, 1)])
    assert ann.elements == {(0, 0), (1, 2), (2, 1)}
    assert ann.is_cyclic()


def test_quotient_example():
    q = quotient(Z3SQ, generate(Z3SQ, [(1, 1)]))
    assert q.group.orders == (3,)
    assert q.project((1, 1)) == (0,)
    assert set(q.character_map().values()) == {(0, 0), (1, 2), (2, 1)}


def test_quotient_non_cyclic_result():
    G = GroupSpec((2, 2, 2))
    q = quotient(G, generate(G, [(0, 0, 1)]))
    assert q.group.orders == (2, 2)
    G = GroupSpec((2, 4))
    q = quotient(G, generate(G, [(1, 2)]))
    assert q.group.orders == (4,)


def test_smith_normal_form():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    S, U, V = smith_normal_form(A)
    diag = [S[i][i] for i in range(3)]
    assert diag == [2, 6, 12]
    UA = np.array(U) @ np.array(A) @ np.array(V)
    assert (UA == np.array(S)).all()
    assert round(abs(np.linalg.det(np.array(U, dtype=float)))) == 1


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=str)
def test_inertia_encoding_injective(G):
    pairs = {inertia_pair(G, v) for v in G.elements() if any(v)}
    assert len(pairs) == G.size - 1


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=str)
def test_annihilator_matches_brute_force(G):
    for chars in [[c] for c in G.characters()] + [list(G.characters())[1:3]]:
        assert annihilator(G, chars).elements == brute_annihilator(G.orders, chars)


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=str)
def test_perp_of_annihilator_is_generated_subgroup(G):
    for chars in [[c] for c in G.characters()] + [list(G.characters())[1:3]]:
        back = set(perp(G, annihilator(G, chars)))
        assert back == generate(G, chars).elements


@pytest.mark.parametrize("orders", [(3, 3, 3, 3), (5, 5, 5), (2, 4, 8), (9, 9)], ids=str)
def test_r_epsilon_identity_exhaustive(orders):
    # r(chi) + r(chi') = r(chi + chi') + m eps for every pair of characters
    G = GroupSpec(orders)
    chars = list(G.characters())
    index = {c: i for i, c in enumerate(chars)}
    add_index = np.array([[index[G.add(a, b)] for b in chars] for a in chars])
    for v in G.elements():
        if not any(v):
            continue
        m = order(G, v)
        r = np.array([r_value(G, c, v) for c in chars])
        lhs = r[:, None] + r[None, :]
        rhs = r[add_index]
        eps = (lhs >= m).astype(int)
        assert (lhs == rhs + m * eps).all()
        assert (r < m).all() and (r >= 0).all()
    sample = chars[1], chars[-1]
    for v in list(G.elements())[1:20]:
        m = order(G, v)
        e = epsilon(G, sample[0], sample[1], v)
        assert e == int(r_value(G, sample[0], v) + r_value(G, sample[1], v) >= m)


@pytest.mark.parametrize("orders", [(3, 3), (5, 5), (2, 2, 2)], ids=str)
def test_quotient_composition_on_all_chains(orders):
    G = GroupSpec(orders)
    subs = subgroups(G)
    chains = 0
    for small, big in product(subs, repeat=2):
        if not small.elements <= big.elements:
            continue
        chains += 1
        q1 = quotient(G, small)
        image = generate(q1.group, [q1.project(v) for v in big.generators])
        q2 = quotient(q1.group, image)
        direct = quotient(G, big)
        assert sorted(q2.group.orders) == sorted(direct.group.orders)
        assert q2.group.size * big.size == G.size
        for v in G.elements():
            assert (q2.project(q1.project(v)) == q2.group.zero) == (v in big)
        lifted = {q1.lift_character(q2.lift_character(c)) for c in q2.group.characters()}
        assert lifted == set(perp(G, big))
        for c in q2.group.characters():
            chi = q1.lift_character(q2.lift_character(c))
            for v in G.elements():
                assert pairing(G, chi, v) == pairing(q2.group, c, q2.project(q1.project(v)))
    assert chains > len(subs)


def test_subgroup_counts():
    assert len(subgroups(GroupSpec((3, 3)))) == 6
    assert len(subgroups(GroupSpec((5, 5)))) == 8
    assert len(subgroups(GroupSpec((2, 2, 2)))) == 16
