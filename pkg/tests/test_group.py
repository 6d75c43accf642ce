import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfgalois.cyclotomic import CycloScalar
from hopfgalois.group import (
    Character,
    FiniteAbelianGroup,
    element_order,
    evaluate_character,
    smith_normal_form,
    subgroup_generated,
)

from strategies import characters, elements, groups


def brute_order(g):
    k, cur = 1, g
    while not cur.is_identity():
        cur = cur * g
        k += 1
    return k


def test_element_order_examples():
    Z5 = FiniteAbelianGroup((5,))
    assert element_order(Z5.identity()) == 1
    assert element_order(Z5.element(3)) == 5
    g = FiniteAbelianGroup((4, 6)).element(2, 3)
    # both coordinates have order 2
    assert element_order(g) == brute_order(g) == 2


@pytest.mark.parametrize("orders", [(4, 6), (2, 2, 3), (12,), (8, 9)])
def test_element_order_matches_powering(orders):
    G = FiniteAbelianGroup(orders)
    for g in G.elements():
        assert element_order(g) == brute_order(g)


def test_character_examples():
    Z5 = FiniteAbelianGroup((5,))
    lam = CycloScalar.symbol("lambda", 5)
    assert evaluate_character(Character.trivial(Z5), Z5.element(2)) == 1
    assert evaluate_character(Character(Z5, (lam,)), Z5.element(3)) == lam ** 3
    Z7 = FiniteAbelianGroup((7,))
    chi = Character(Z7, (CycloScalar.root(7, -1),))
    assert chi(Z7.element(5)) == CycloScalar.root(7, 2)


def test_subgroup_examples():
    Z5 = FiniteAbelianGroup((5,))
    sub, _ = subgroup_generated(Z5, [Z5.identity()])
    assert sub.order == 1
    sub, emb = subgroup_generated(Z5, [Z5.element(3)])
    assert sub.factor_orders == (5,)
    V = FiniteAbelianGroup((2, 2))
    sub, emb = subgroup_generated(V, [V.element(1, 1)])
    assert sub.factor_orders == (2,)
    assert emb.generator_images == (V.element(1, 1),)


def _closure(G, gens):
    seen = {G.identity()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h * g
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


@given(st.data())
def test_subgroup_generated_contains_generators(data):
    G = data.draw(groups(max_rank=3, max_order=6))
    gens = data.draw(st.lists(elements(G), min_size=1, max_size=3))
    sub, emb = subgroup_generated(G, gens)
    assert G.order % sub.order == 0
    assert sub.order == len(_closure(G, gens))
    images = {emb.to_ambient(h) for h in sub.elements()}
    assert images == _closure(G, gens)
    for g, c in zip(gens, emb.coordinates):
        assert emb.to_ambient(c) == g


def test_character_multiplicativity_seeded():
    rng = random.Random(7)
    trials = 0
    while trials < 600:
        G = FiniteAbelianGroup(tuple(rng.randint(1, 12) for _ in range(rng.randint(1, 2))))
        if G.exponent > 12:
            continue
        chi = Character(G, tuple(CycloScalar.root(m, rng.randrange(m)) for m in G.factor_orders))
        g = G.element([rng.randrange(m) for m in G.factor_orders])
        h = G.element([rng.randrange(m) for m in G.factor_orders])
        assert chi(g * h) == chi(g) * chi(h)
        assert chi(g) ** element_order(g) == 1
        trials += 1


@given(st.data())
def test_character_multiplicativity_property(data):
    G = data.draw(groups(max_rank=2, max_order=12))
    chi = data.draw(characters(G))
    g, h = data.draw(elements(G)), data.draw(elements(G))
    assert chi(g * h) == chi(g) * chi(h)


def test_symbolic_character_values_have_right_order():
    G = FiniteAbelianGroup((5,))
    lam = CycloScalar.symbol("lambda", 5)
    chi = Character(G, (lam,))
    for g in G.elements():
        v = chi(g) ** element_order(g)
        for k in range(5):
            w = v.substitute("lambda", CycloScalar.root(5, k)) if v.free_symbols() else v
            assert w == 1


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@pytest.mark.parametrize("M", [
    [[2, 4], [6, 8]],
    [[3, 0], [0, 5]],
    [[1, 2, 3], [4, 5, 6], [7, 8, 10]],
    [[4, 6], [6, 4], [2, 2]],
])
def test_smith_normal_form(M):
    D, U, V, Vi = smith_normal_form(M)
    assert _matmul(_matmul(U, M), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(x >= 0 for x in diag)
    for a, b in itertools.pairwise(diag):
        if b:
            assert a and b % a == 0
    n = len(V)
    assert _matmul(V, Vi) == [[int(i == j) for j in range(n)] for i in range(n)]
