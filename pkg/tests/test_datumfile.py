import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfgalois.atlas import atlas_data, load_example
from hopfgalois.cyclotomic import CycloScalar
from hopfgalois.datumfile import DatumFile, parse_datum_file, render_datum
from hopfgalois.errors import DatumSemanticError, DatumSyntaxError
from hopfgalois.expr import Env, PowerRelation, parse_relation, parse_scalar
from hopfgalois.group import Character, FiniteAbelianGroup
from hopfgalois.hopf_datum import HopfDatum, LiftingData
from hopfgalois.relations import NcPolynomial, adjoint

from conftest import DATA


def z(n, k=1):
    return CycloScalar.root(n, k)


def test_h55_file():
    df = parse_datum_file((DATA / "h55.datum").read_text())
    d = df.datum
    lam = CycloScalar.symbol("lambda", 5)
    assert d.group.factor_orders == (5,)
    assert [g.exponents for g in d.g] == [(3,), (1,)]
    assert d.braiding == ((z(5, -1), z(5, 2) * lam ** -1), (lam, z(5, -2)))
    assert d.cartan == ((2, -2), (-1, 2))


def test_character_order_must_divide_factor():
    with pytest.raises(DatumSemanticError) as info:
        parse_datum_file("group = Z5\ng[1] = (1)\nchi[1] = [zeta4^1]\n")
    assert info.value.line == 3


def test_missing_generator_is_syntax_error():
    with pytest.raises(DatumSyntaxError) as info:
        parse_datum_file("group = Z5\ng[1] = (1)\nchi[1] = [zeta5]\nchi[2] = [zeta5]\n")
    assert not isinstance(info.value, DatumSemanticError)
    assert info.value.line == 4


def test_unknown_key_and_columns():
    with pytest.raises(DatumSyntaxError) as info:
        parse_datum_file("group = Z5\n  frobnicate = 3\n")
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(DatumSyntaxError) as info:
        parse_datum_file("group = Z5\ng[1] = (1)\nchi[1] = [zeta5 $ 2]\n")
    assert (info.value.line, info.value.column) == (3, 17)


def test_chi_and_q_are_exclusive():
    with pytest.raises(DatumSyntaxError):
        parse_datum_file("group = Z5\ng[1] = (1)\nchi[1] = [zeta5]\nq[1][1] = zeta5\n")


def test_comments_and_constants():
    df = parse_datum_file("# comment\ngroup = Z7   # trailing\nlet q = zeta7^3\ng[1] = (1)\nchi[1] = [q^2]\n")
    assert df.datum.qij(0, 0) == z(7, 6)
    assert df.constants["q"] == z(7, 3)


def test_lifting_and_options():
    text = ("group = Z5 x Z5\ng[1] = (1,0)\ng[2] = (0,1)\nchi[1] = [zeta5, zeta5]\nchi[2] = [zeta5^-1, zeta5^-1]\n"
            "alpha[1] = 0\nalpha[2] = 0\nlambda[1][2] = 1\noption expansion_cap = 500\n")
    df = parse_datum_file(text)
    assert df.datum.lifting.linking(0, 1) == 1
    assert df.options == {"expansion_cap": 500}


def test_relations_and_powers():
    df = load_example("gr-uqsl2")
    assert len(df.relations) == 1
    d = df.datum
    P = parse_relation("pow(ad(1, x2), 5)", d)
    assert isinstance(P, PowerRelation) and P.exponent == 5
    assert P.base == adjoint(d, 0, NcPolynomial.letter(1))
    Q = parse_relation("x1*x2 - q(1,2)*x2*x1", d)
    assert Q == NcPolynomial.word((0, 1)) - NcPolynomial.word((1, 0), d.qij(0, 1))


def test_scalar_grammar():
    env = Env(symbols={"lambda": 5})
    lam = CycloScalar.symbol("lambda", 5)
    assert parse_scalar("3/4 * zeta5^-2 * lambda^(-1)", env) == CycloScalar.rational(3) / 4 * z(5, -2) * lam ** -1
    assert parse_scalar("-(1 + zeta4)^2") == -(1 + z(4)) ** 2
    with pytest.raises(DatumSemanticError):
        parse_scalar("1/(zeta3 - zeta3)")
    with pytest.raises(DatumSemanticError):
        parse_scalar("mu")


def test_action_block():
    df = load_example("sl2-field")
    assert df.action is not None and df.action.nvars == 1
    q = z(3)
    w2 = df.action.w[1]
    (a, c), = w2.terms.items()
    assert a == (1,) and c == -(q ** -1) * (q ** 2 - 1).inverse()


@pytest.mark.parametrize("row", atlas_data(), ids=lambda r: r[0])
def test_atlas_entries_roundtrip(row):
    item = row[2]
    text = render_datum(item)
    again = parse_datum_file(text)
    want = item.datum if isinstance(item, DatumFile) else item
    assert again.datum == want
    assert render_datum(again) == text


@pytest.mark.parametrize("name", ["h55", "h77", "gr-uqsl2", "taft5", "sl2-field"])
def test_shipped_files_roundtrip(name):
    df = load_example(name)
    text = render_datum(df)
    again = parse_datum_file(text)
    assert again.datum == df.datum
    assert [str(r) for _, r in again.relations] == [str(r) for _, r in df.relations]


@st.composite
def random_datum(draw):
    orders = tuple(draw(st.integers(2, 8)) for _ in range(draw(st.integers(1, 2))))
    G = FiniteAbelianGroup(orders)
    theta = draw(st.integers(1, 3))
    g = tuple(G.element([draw(st.integers(0, m - 1)) for m in orders]) for _ in range(theta))
    chi = tuple(Character(G, tuple(z(m, draw(st.integers(0, m - 1))) for m in orders)) for _ in range(theta))
    lifting = None
    if draw(st.booleans()):
        taft = tuple(CycloScalar.rational(draw(st.integers(-2, 2))) for _ in range(theta))
        links = tuple(((i, j), z(orders[0], draw(st.integers(0, 3))))
                      for i in range(theta) for j in range(i + 1, theta) if draw(st.booleans()))
        lifting = LiftingData(taft, links)
    return HopfDatum(G, g, chi, lifting=lifting, name=draw(st.sampled_from(["", "random datum"])))


@given(random_datum())
def test_render_parse_roundtrip(d):
    text = render_datum(d)
    again = parse_datum_file(text)
    assert again.datum == d
    assert render_datum(again) == text
