import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfgalois.atlas import load_example
from hopfgalois.cyclotomic import CycloScalar
from hopfgalois.errors import ExpansionCapExceeded, MissingCartanMatrix, NotMultihomogeneous
from hopfgalois.group import Character, FiniteAbelianGroup
from hopfgalois.group_algebra import GroupAlgebraElement as GA
from hopfgalois.hopf_datum import HopfDatum
from hopfgalois.relations import (
    NcPolynomial,
    adjoint,
    iterated_adjoint,
    monomial_Q,
    power_relation_Q,
    relation_Q,
    serre_relation,
)

X1, X2 = NcPolynomial.letter(0), NcPolynomial.letter(1)


def W(*letters, c=None):
    return NcPolynomial.word(tuple(i - 1 for i in letters), c)


def z(n, k=1):
    return CycloScalar.root(n, k)


def generic_rank2(n=35):
    """Rank-2 datum over Z_n x Z_n whose braiding entries are independent enough to compare coefficients."""
    G = FiniteAbelianGroup((n, n))
    chi1 = Character(G, (z(n, 2), z(n, 3)))
    chi2 = Character(G, (z(n, 5), z(n, 7)))
    return HopfDatum(G, (G.element(1, 0), G.element(0, 1)), (chi1, chi2),
                     cartan=((2, -1), (-1, 2)))


# -- adjoint and Serre relations ----------------------------------------------------------


def test_adjoint_examples():
    d = generic_rank2()
    q = d.braiding
    assert adjoint(d, 0, X2) == W(1, 2) - W(2, 1, c=q[0][1])
    assert adjoint(d, 0, NcPolynomial.constant(CycloScalar.one())).is_zero()


def test_triple_adjoint_expansion():
    d = generic_rank2()
    q = d.braiding
    q11, q12 = q[0][0], q[0][1]
    want = (W(1, 1, 1, 2)
            - W(1, 1, 2, 1, c=q11 ** 2 * q12 + q11 * q12 + q12)
            + W(1, 2, 1, 1, c=q11 ** 3 * q12 ** 2 + q11 ** 2 * q12 ** 2 + q11 * q12 ** 2)
            - W(2, 1, 1, 1, c=q11 ** 3 * q12 ** 3))
    assert iterated_adjoint(d, 0, 3, X2) == want


def test_serre_relations_have_displayed_coefficients():
    d = generic_rank2()
    q = d.braiding
    q11, q12, q21, q22 = q[0][0], q[0][1], q[1][0], q[1][1]
    a2 = W(1, 1, 2) - W(1, 2, 1, c=q11 * q12 + q12) + W(2, 1, 1, c=q12 ** 2 * q11)
    assert serre_relation(d, 0, 1) == a2
    b2 = W(2, 2, 1) - W(2, 1, 2, c=q21 * q22 + q21) + W(1, 2, 2, c=q21 ** 2 * q22)
    assert serre_relation(d, 1, 0, ((2, -2), (-1, 2))) == b2
    qls = serre_relation(d, 0, 1, ((2, 0), (0, 2)))
    assert qls == W(1, 2) - W(2, 1, c=q12)


def test_serre_needs_cartan():
    G = FiniteAbelianGroup((5,))
    d = HopfDatum(G, (G.element(1), G.element(1)), (Character(G, (z(5),)),) * 2)
    with pytest.raises(MissingCartanMatrix):
        serre_relation(d, 0, 1)


# -- monomial Q -----------------------------------------------------------------------------


def test_monomial_Q_examples():
    d = generic_rank2()
    G = d.group
    g1, g2 = d.g
    assert monomial_Q(d, ()) == GA.one(G)
    assert monomial_Q(d, (0,)) == GA.one_minus(g1)
    q11, q12 = d.qij(0, 0), d.qij(0, 1)
    want = (GA.one_minus(g1, q11 ** 2 * q12) * GA.one_minus(g1, q11 * q12)
            * GA.one_minus(g1, q12) * GA.one_minus(g2))
    assert monomial_Q(d, (0, 0, 0, 1)) == want


def composed(d, word):
    # move each w_j to the far left: T w_j = w_j sigma_j(T), sigma_j(h) = chi_j(h) h
    T = GA.one(d.group)
    for j in word:
        T = T.twist(d.chi[j]) * GA.one_minus(d.g[j])
    return T


def random_datum(rng, theta, max_order=8):
    G = FiniteAbelianGroup(tuple(rng.randint(2, max_order) for _ in range(rng.randint(1, 2))))
    g = tuple(G.element([rng.randrange(m) for m in G.factor_orders]) for _ in range(theta))
    chi = tuple(Character(G, tuple(z(m, rng.randrange(m)) for m in G.factor_orders)) for _ in range(theta))
    return HopfDatum(G, g, chi)


def test_monomial_Q_matches_operator_composition():
    rng = random.Random(3)
    for _ in range(250):
        d = random_datum(rng, rng.randint(1, 3))
        word = tuple(rng.randrange(d.theta) for _ in range(rng.randint(0, 8)))
        assert monomial_Q(d, word) == composed(d, word)


# -- relation Q ---------------------------------------------------------------------------------


def test_graded_uqsl2_relation():
    for m in (3, 5, 7):
        q = z(m)
        G = FiniteAbelianGroup((m,))
        k = G.element(1)
        d = HopfDatum(G, (k, k), (Character(G, (q ** 2,)), Character(G, (q ** -2,))))
        r = relation_Q(d, W(1, 2, c=q ** 2) - W(2, 1))
        assert r.q_element == (GA.one(G) - GA.basis(k ** 2)).scale(q ** 2 - 1)
        assert not r.is_zero
        assert r.multidegree == (1, 1)


def test_quantum_linear_space_relation():
    rng = random.Random(11)
    for _ in range(100):
        d = random_datum(rng, 2)
        # Q has the product form exactly when chi_j(g_i) chi_i(g_j) = 1
        if d.qij(0, 1) * d.qij(1, 0) != 1:
            continue
        c = d.qij(0, 1)
        r = relation_Q(d, W(1, 2) - W(2, 1, c=c))
        assert r.q_element == (GA.one(d.group) - GA.basis(d.g[0] * d.g[1])).scale(1 - c)


def test_not_multihomogeneous():
    d = generic_rank2()
    with pytest.raises(NotMultihomogeneous):
        relation_Q(d, W(1, 2) - W(2, 1) + X1)


def test_relation_Q_is_linear_seeded():
    rng = random.Random(5)
    for _ in range(500):
        d = random_datum(rng, rng.randint(1, 3))
        n = d.conductor
        letters = [rng.randrange(d.theta) for _ in range(rng.randint(1, 4))]

        def rand_poly():
            P = NcPolynomial()
            for _ in range(rng.randint(1, 3)):
                w = letters[:]
                rng.shuffle(w)
                P = P + NcPolynomial.word(tuple(w), z(n, rng.randrange(n)) * rng.randint(-3, 3))
            return P

        P, R = rand_poly(), rand_poly()
        a, b = z(n, rng.randrange(n)) + 1, CycloScalar.rational(rng.randint(-4, 4))
        combo = P.scale(a) + R.scale(b)
        if P.is_zero() or R.is_zero() or combo.is_zero():
            continue
        lhs = relation_Q(d, combo).q_element
        rhs = relation_Q(d, P).q_element.scale(a) + relation_Q(d, R).q_element.scale(b)
        assert lhs == rhs


@given(st.data())
def test_relation_Q_is_linear_property(data):
    n = data.draw(st.sampled_from([2, 3, 4, 5, 6]))
    theta = data.draw(st.integers(1, 3))
    G = FiniteAbelianGroup((n,))
    g = tuple(G.element(data.draw(st.integers(0, n - 1))) for _ in range(theta))
    chi = tuple(Character(G, (z(n, data.draw(st.integers(0, n - 1))),)) for _ in range(theta))
    d = HopfDatum(G, g, chi)
    letters = data.draw(st.lists(st.integers(0, theta - 1), min_size=1, max_size=4))
    perms = st.permutations(letters).map(tuple)
    P = NcPolynomial.word(data.draw(perms)) + NcPolynomial.word(data.draw(perms), z(n))
    R = NcPolynomial.word(data.draw(perms), CycloScalar.rational(data.draw(st.integers(-3, 3))))
    a = z(n, data.draw(st.integers(0, n - 1)))
    combo = P.scale(a) + R
    if P.is_zero() or R.is_zero() or combo.is_zero():
        return
    assert relation_Q(d, combo).q_element == relation_Q(d, P).q_element.scale(a) + relation_Q(d, R).q_element


# -- the two exceptional reproductions, against a transcription of the original computations


def _f(lam, g):
    return GA.one_minus(g, lam)


def factored_h55():
    d = load_example("h55").datum
    q11, q12, q21, q22 = d.qij(0, 0), d.qij(0, 1), d.qij(1, 0), d.qij(1, 1)
    g1, g2 = d.g
    one = d.one()
    Q12 = (_f(q11 ** 2 * q12, g1) * _f(q11 * q12, g1) * _f(q12, g1) * _f(one, g2)
           - (_f(q11 ** 2 * q12, g1) * _f(q11 * q12, g1) * _f(q21, g2) * _f(one, g1)).scale(q11 ** 2 * q12 + q11 * q12 + q12)
           + (_f(q11 ** 2 * q12, g1) * _f(q21 ** 2, g2) * _f(q11, g1) * _f(one, g1)).scale(
               q11 ** 3 * q12 ** 2 + q11 ** 2 * q12 ** 2 + q11 * q12 ** 2)
           - (_f(q21 ** 3, g2) * _f(q11 ** 2, g1) * _f(q11, g1) * _f(one, g1)).scale(q11 ** 3 * q12 ** 3))
    Q21 = (_f(q21 * q22, g2) * _f(q21, g2) * _f(one, g1)
           - (_f(q21 * q22, g2) * _f(q12, g1) * _f(one, g2)).scale(q21 * q22 + q21)
           + (_f(q12 * q12, g1) * _f(q22, g2) * _f(one, g2)).scale(q21 ** 2 * q22))
    return d, Q12, Q21


def factored_h77():
    d = load_example("h77").datum
    q11, q12, q21, q22 = d.qij(0, 0), d.qij(0, 1), d.qij(1, 0), d.qij(1, 1)
    g1, g2 = d.g
    one = d.one()
    Q12 = (_f(q11 * q12, g1) * _f(q12, g1) * _f(one, g2)
           - (_f(q11 * q12, g1) * _f(q21, g2) * _f(one, g1)).scale(q11 * q12 + q12)
           + (_f(q21 * q21, g2) * _f(q11, g1) * _f(one, g1)).scale(q11 * q12 ** 2))
    head = _f(q21 * q22 ** 3, g2) * _f(q21 * q22 ** 2, g2)
    Q21 = (head * _f(q21 * q22, g2) * _f(q21, g2) * _f(one, g1)
           - (head * _f(q21 * q22, g2) * _f(q12, g1) * _f(one, g2)).scale(
               q21 * q22 ** 3 + q21 * q22 ** 2 + q21 * q22 + q21)
           + (head * _f(q12 ** 2, g1) * _f(q22, g2) * _f(one, g2)).scale(
               q21 ** 2 * (q22 ** 5 + q22 ** 4 + 2 * q22 ** 3 + q22 ** 2 + q22))
           - (_f(q21 * q22 ** 3, g2) * _f(q12 ** 3, g1) * _f(q22 ** 2, g2) * _f(q22, g2) * _f(one, g2)).scale(
               q21 ** 3 * (q22 ** 6 + q22 ** 5 + q22 ** 4 + q22 ** 3))
           + (_f(q12 ** 4, g1) * _f(q22 ** 3, g2) * _f(q22 ** 2, g2) * _f(q22, g2) * _f(one, g2)).scale(
               q21 ** 4 * q22 ** 6))
    return d, Q12, Q21


@pytest.mark.parametrize("maker, powers", [(factored_h55, (3, 2)), (factored_h77, (2, 4))])
def test_exceptional_serre_Q_matches_transcription(maker, powers):
    d, Q12, Q21 = maker()
    assert d.free_symbols() == ("lambda",)
    r12 = relation_Q(d, iterated_adjoint(d, 0, powers[0], X2))
    r21 = relation_Q(d, iterated_adjoint(d, 1, powers[1], X1))
    assert r12.q_element == Q12
    assert r21.q_element == Q21
    assert r12.is_zero and r21.is_zero


# -- power relations ------------------------------------------------------------------------------


def test_taft_power_vanishes():
    for n in (2, 3, 5, 7):
        G = FiniteAbelianGroup((n,))
        d = HopfDatum(G, (G.element(1),), (Character(G, (z(n),)),))
        r = power_relation_Q(d, X1, n)
        assert r.is_zero and r.method == "lemma"
        assert power_relation_Q(d, X1, n, method="expand").is_zero


def test_power_stops_short_of_group_order():
    for n in (2, 3, 5):
        G = FiniteAbelianGroup((2 * n,))
        g = G.element(1)
        d = HopfDatum(G, (g,), (Character(G, (z(n),)),))
        for method in ("auto", "twisted", "expand"):
            r = power_relation_Q(d, X1, n, method=method)
            assert r.q_element == GA.one(G) - GA.basis(g ** n)


def test_h34_root_vector_power_by_shortcut():
    G = FiniteAbelianGroup((3,))
    g = G.element(1)
    chi = Character(G, (z(3),))
    d = HopfDatum(G, (g, g), (chi, chi))
    P = adjoint(d, 0, X2)
    r = power_relation_Q(d, P, 3)
    assert r.is_zero and r.method == "lemma"
    assert power_relation_Q(d, P, 3, method="expand").is_zero


def test_power_methods_agree_on_random_data():
    rng = random.Random(17)
    fired = 0
    for _ in range(120):
        n = rng.choice([2, 3, 4, 5])
        G = FiniteAbelianGroup((rng.choice([n, 2 * n, 3 * n]),))
        m = G.factor_orders[0]
        d = HopfDatum(G, tuple(G.element(rng.randrange(m)) for _ in range(2)),
                      tuple(Character(G, (z(m, rng.randrange(m)),)) for _ in range(2)))
        P = rng.choice([X1, X2, adjoint(d, 0, X2), adjoint(d, 1, X1)])
        if P.is_zero():
            continue
        expand = power_relation_Q(d, P, n, method="expand")
        for method in ("auto", "characters", "twisted"):
            assert power_relation_Q(d, P, n, method=method).q_element == expand.q_element
        try:
            lemma = power_relation_Q(d, P, n, method="lemma")
        except ValueError:
            continue
        fired += 1
        assert lemma.is_zero and expand.is_zero
    assert fired > 0


def test_expansion_cap():
    d = generic_rank2(5)
    P = adjoint(d, 0, X2)
    with pytest.raises(ExpansionCapExceeded):
        power_relation_Q(d, P, 12, method="expand", cap=100)
