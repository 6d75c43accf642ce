"""Built-in catalog of worked examples with their expected verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .classifier import Status, check_graded, classify, count_twists
from .cyclotomic import CycloScalar
from .datumfile import DatumFile, parse_datum_file
from .group import Character, FiniteAbelianGroup
from .hopf_datum import HopfDatum, LiftingData

__all__ = ["AtlasRow", "atlas_data", "atlas_report", "load_example", "render_table"]


def load_example(name: str) -> DatumFile:
    """A datum file shipped with the package, e.g. ``"h55"``."""
    text = resources.files("hopfgalois").joinpath("data", f"{name}.datum").read_text(encoding="utf-8")
    return parse_datum_file(text)


def _chars(G, *rows):
    return tuple(Character(G, tuple(rows_i)) for rows_i in rows)


def atlas_data() -> list[tuple[str, str, HopfDatum | DatumFile, Status]]:
    """(row id, label, datum, expected status) for the verdict rows."""
    z5 = CycloScalar.root(5)
    z3 = CycloScalar.root(3)
    one = CycloScalar.one()
    rows = []

    G = FiniteAbelianGroup((5,))
    rows.append(("taft", "Taft algebra T(5)", HopfDatum(G, (G.element(1),), _chars(G, [z5]), name="T(5)"), Status.GALOIS_THEORETICAL))

    G = FiniteAbelianGroup((4,))
    d = HopfDatum(G, (G.element(1),), _chars(G, [CycloScalar.root(4, 2)]),
                  lifting=LiftingData((one,)), name="T(4,2,1)")
    rows.append(("gen-taft", "generalized Taft T(4,2,alpha), alpha = 1", d, Status.NOT_GALOIS_THEORETICAL))

    G = FiniteAbelianGroup((2,))
    m1 = CycloScalar.rational(-1)
    d = HopfDatum(G, (G.element(1), G.element(1)), _chars(G, [m1], [m1]), name="E(2)")
    rows.append(("e2", "Nichols Hopf algebra E(2)", d, Status.GALOIS_THEORETICAL))

    G = FiniteAbelianGroup((5,))
    d = HopfDatum(G, (G.element(1), G.element(4)), _chars(G, [z5], [z5]), name="book")
    rows.append(("book", "book algebra h(zeta,1), g1 = g2^-1", d, Status.GALOIS_THEORETICAL))

    G = FiniteAbelianGroup((3, 5))
    d = HopfDatum(G, (G.element(1, 0), G.element(0, 1)), _chars(G, [z3, one], [one, z5]), name="T(3) x T(5)")
    rows.append(("taft-tensor", "tensor product T(3) (x) T(5)", d, Status.GALOIS_THEORETICAL))

    G = FiniteAbelianGroup((3,))
    d = HopfDatum(G, (G.element(1), G.element(1)), _chars(G, [z3], [z3]), name="H(3^4)")
    rows.append(("h34", "type A2 exceptional H_{3^4}", d, Status.GALOIS_THEORETICAL))

    rows.append(("h55", "type B2 exceptional H_{5^5}", load_example("h55"), Status.GALOIS_THEORETICAL))
    rows.append(("h77", "type G2 exceptional H_{7^7}", load_example("h77"), Status.GALOIS_THEORETICAL))
    rows.append(("gr-uqsl2", "associated graded gr(u_q(sl2))", load_example("gr-uqsl2"), Status.NOT_GALOIS_THEORETICAL))

    q = z5
    G = FiniteAbelianGroup((5, 5))
    d = HopfDatum(G, (G.element(1, 0), G.element(0, 1)), _chars(G, [q ** 2, one], [q ** -2, q ** 2]),
                  name="u_q>=0(sl3), q21 = 1")
    rows.append(("uq-borel-sl3", "small quantum Borel of sl3 with q21 = 1", d, Status.GALOIS_THEORETICAL))

    z25 = CycloScalar.root(25)
    G = FiniteAbelianGroup((25, 5))
    d = HopfDatum(G, (G.element(1, 0), G.element(0, 1)), _chars(G, [z25 ** 10, one], [z25 ** -10, q ** 2]),
                  lifting=LiftingData((one, CycloScalar.zero())), name="lifted A2, mu1 = 1")
    rows.append(("lifted-a2", "lifted type A2 with mu1 != 0", d, Status.NOT_GALOIS_THEORETICAL))

    G = FiniteAbelianGroup((5, 5))
    d = HopfDatum(G, (G.element(1, 0), G.element(0, 1)), _chars(G, [q, q], [q ** -1, q ** -1]),
                  lifting=LiftingData((CycloScalar.zero(), CycloScalar.zero()), (((0, 1), one),)),
                  name="lifted QLS, dotted edge")
    rows.append(("lifted-qls-dotted", "lifted quantum linear space with a dotted edge -> u_q'(gl2)", d,
                 Status.GALOIS_THEORETICAL))
    return rows


TWIST_ROWS = [
    ("A", 1, 1), ("A", 2, 2), ("A", 3, 2), ("A", 4, 2), ("A", 5, 2),
    ("B", 2, 0), ("D", 4, 0), ("G", 2, 0),
]


@dataclass
class AtlasRow:
    row_id: str
    label: str
    expected: str
    actual: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {
            "id": self.row_id,
            "label": self.label,
            "expected": self.expected,
            "actual": self.actual,
            "result": "PASS" if self.passed else "FAIL",
            "detail": self.detail,
        }


def _verdict_row(row_id, label, item, expected: Status) -> AtlasRow:
    try:
        if isinstance(item, DatumFile):
            if item.relations:
                v = check_graded(item.datum, item.relation_items())
            else:
                v = classify(item.datum)
        else:
            v = classify(item)
        return AtlasRow(row_id, label, expected.value, v.status.value, {"case": v.case, **(
            {"decomposition": v.decomposition} if v.decomposition else {})})
    except Exception as exc:  # a failing row must not abort the table
        return AtlasRow(row_id, label, expected.value, "ERROR", {"error": f"{type(exc).__name__}: {exc}"})


def atlas_report() -> list[AtlasRow]:
    rows = [_verdict_row(*r) for r in atlas_data()]
    for letter, rank, full in TWIST_ROWS:
        for part, want in (("borel", 2 ** (rank - 1)), ("full", full)):
            got = count_twists(letter, rank, part).count
            rows.append(AtlasRow(f"twists-{letter}{rank}-{part}", f"twist count ({letter},{rank},{part})",
                                 str(want), str(got)))
    return rows


def render_table(rows: list[AtlasRow]) -> str:
    w1 = max(len(r.label) for r in rows)
    w2 = max(len(r.expected) for r in rows)
    lines = []
    for r in rows:
        lines.append(f"{r.label:<{w1}}  expected {r.expected:<{w2}}  got {r.actual:<{w2}}  "
                     f"{'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines)
