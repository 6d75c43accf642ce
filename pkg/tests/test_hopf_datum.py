import pytest

from hopfgalois.cartan import cartan_matrix, classify_cartan
from hopfgalois.cyclotomic import CycloScalar
from hopfgalois.errors import CartanIncompatible, MalformedDatum, NotFiniteCartanType, SymbolicDatum
from hopfgalois.group import Character, FiniteAbelianGroup
from hopfgalois.hopf_datum import (
    HopfDatum,
    LiftingData,
    infer_cartan_matrix,
    minimal_datum,
    validate,
)

B2 = ((2, -2), (-1, 2))


def z(n, k=1):
    return CycloScalar.root(n, k)


def b2_datum():
    G = FiniteAbelianGroup((5,))
    lam = CycloScalar.symbol("lambda", 5)
    q = ((z(5, -1), z(5, 2) * lam ** -1), (lam, z(5, -2)))
    return HopfDatum(G, (G.element(3), G.element(1)), q=q, cartan=B2, unit_symbols=(("lambda", 5),))


def test_taft_datum_is_valid():
    for n in (2, 3, 5, 8):
        G = FiniteAbelianGroup((n,))
        d = HopfDatum(G, (G.element(1),), (Character(G, (z(n),)),))
        rep = validate(d)
        assert rep.ok
        assert d.qij(0, 0) == z(n)
        assert rep.orders == [n]
        assert rep.order_divides_generator == [True]


def test_symbolic_b2_datum_validates_against_b2():
    rep = validate(b2_datum())
    assert rep.eq21 is True
    assert rep.cartan_type == "B2"
    assert rep.orders == [5, 5]
    # lambda may be any fifth root of unity consistent with g1 = g^3
    assert len(rep.admissible) >= 1


def test_trivial_self_braiding_is_malformed():
    G = FiniteAbelianGroup((3,))
    d = HopfDatum(G, (G.element(1),), (Character.trivial(G),))
    with pytest.raises(MalformedDatum):
        validate(d)


def test_wrong_cartan_matrix_is_rejected():
    G = FiniteAbelianGroup((5,))
    d = HopfDatum(G, (G.element(1), G.element(4)), (Character(G, (z(5),)),) * 2, cartan=((2, -1), (-1, 2)))
    with pytest.raises(CartanIncompatible):
        validate(d)


def test_length_mismatch_is_malformed():
    G = FiniteAbelianGroup((5,))
    with pytest.raises(MalformedDatum):
        HopfDatum(G, (G.element(1), G.element(2)), (Character(G, (z(5),)),))


def test_linking_scalar_needs_nontrivial_product():
    G = FiniteAbelianGroup((5,))
    d = HopfDatum(G, (G.element(1), G.element(4)), (Character(G, (z(5),)), Character(G, (z(5),))),
                  lifting=LiftingData((), (((0, 1), CycloScalar.one()),)))
    with pytest.raises(MalformedDatum):
        validate(d)


def test_infer_quantum_linear_space():
    G = FiniteAbelianGroup((5, 7))
    d = HopfDatum(G, (G.element(1, 0), G.element(0, 1)),
                  (Character(G, (z(5), CycloScalar.one())), Character(G, (CycloScalar.one(), z(7)))))
    assert infer_cartan_matrix(d).matrix == ((2, 0), (0, 2))


def test_infer_a2_from_borel_data():
    q = z(5)
    G = FiniteAbelianGroup((5, 5))
    d = HopfDatum(G, (G.element(1, 0), G.element(0, 1)),
                  (Character(G, (q ** 2, q ** -1)), Character(G, (q ** -1, q ** 2))))
    tag = infer_cartan_matrix(d)
    assert tag.label() == "A2"
    A = tag.matrix
    Q = d.braiding
    for i in range(2):
        for j in range(2):
            if i != j:
                assert Q[i][j] * Q[j][i] == Q[i][i] ** A[i][j]


def test_infer_rejects_non_power():
    G = FiniteAbelianGroup((15,))
    d = HopfDatum(G, (G.element(1), G.element(1)), q=((z(5), z(3)), (CycloScalar.one(), z(5))))
    with pytest.raises(NotFiniteCartanType):
        infer_cartan_matrix(d)


def test_infer_needs_concrete_values():
    with pytest.raises(SymbolicDatum):
        infer_cartan_matrix(b2_datum())


def test_minimal_datum_of_minimal_is_identity():
    G = FiniteAbelianGroup((5,))
    d = HopfDatum(G, (G.element(1),), (Character(G, (z(5),)),))
    assert minimal_datum(d) is d


def test_book_inside_larger_group():
    G = FiniteAbelianGroup((5, 4))
    g = G.element(1, 0)
    chi = Character(G, (z(5), z(4)))
    d = HopfDatum(G, (g, g.inverse()), (chi, chi))
    m = minimal_datum(d)
    assert m.group.factor_orders == (5,)
    assert m.braiding == d.braiding


def test_e2_inside_klein_four():
    G = FiniteAbelianGroup((2, 2))
    g = G.element(1, 0)
    chi = Character(G, (CycloScalar.rational(-1), CycloScalar.one()))
    d = HopfDatum(G, (g, g), (chi, chi))
    m = minimal_datum(d)
    assert m.group.factor_orders == (2,)
    assert m.braiding == d.braiding


@pytest.mark.parametrize("letter, rank", [("A", 1), ("A", 4), ("B", 3), ("C", 3), ("D", 5), ("E", 6), ("F", 4), ("G", 2)])
def test_cartan_roundtrip(letter, rank):
    tag = classify_cartan(cartan_matrix(letter, rank))
    assert tag.label() == f"{letter}{rank}"


def test_symbolic_instantiation_agrees_with_concrete():
    d = b2_datum()
    for a in d.admissible_instantiations():
        c = d.instantiate(a)
        assert c.is_consistent()
        assert validate(c).eq21
