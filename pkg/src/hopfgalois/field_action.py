"""Hopf actions on Laurent-polynomial module fields.

G acts diagonally on the variables z_1..z_r, and x_i acts as the operator
w_i (1 - g_i) with w_i an eigenvector of G of character chi_i.  Operators
are applied literally, so the module can cross-check every Q computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cyclotomic import CycloScalar
from .errors import EquivarianceViolated, NoEquivariantMonomial, UnfaithfulGroupAction
from .group import Character, FiniteAbelianGroup, GroupElement
from .group_algebra import GroupAlgebraElement
from .hopf_datum import HopfDatum
from .relations import NcPolynomial, relation_Q

__all__ = [
    "ActionSpec",
    "FieldAction",
    "LaurentPoly",
    "OperatorExpr",
    "apply_word",
    "build_action",
    "check_linear_independence",
    "find_equivariant_monomial",
    "SL2Demo",
    "sl2_demo",
    "verify_relations_on_basis",
]


class LaurentPoly:
    """Sparse Laurent polynomial: exponent tuple -> CycloScalar."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], CycloScalar] = {}
        for a, c in (terms or {}).items():
            a = tuple(a)
            if len(a) != nvars:
                raise ValueError(f"exponent vector {a} does not have {nvars} entries")
            c = c if isinstance(c, CycloScalar) else CycloScalar.rational(c)
            prev = self.terms.get(a)
            c = c if prev is None else prev + c
            if c.is_zero():
                self.terms.pop(a, None)
            else:
                self.terms[a] = c

    @classmethod
    def monomial(cls, exps, coeff=None) -> LaurentPoly:
        exps = tuple(exps)
        return cls(len(exps), {exps: CycloScalar.one() if coeff is None else coeff})

    @classmethod
    def constant(cls, nvars: int, c) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = LaurentPoly(self.nvars, self.terms)
        for a, c in other.terms.items():
            prev = out.terms.get(a)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.terms.pop(a, None)
            else:
                out.terms[a] = s
        return out

    def __neg__(self) -> LaurentPoly:
        out = LaurentPoly(self.nvars)
        out.terms = {a: -c for a, c in self.terms.items()}
        return out

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def scale(self, c: CycloScalar) -> LaurentPoly:
        out = LaurentPoly(self.nvars)
        for a, v in self.terms.items():
            p = v * c
            if not p.is_zero():
                out.terms[a] = p
        return out

    def __mul__(self, other):
        if isinstance(other, (int, CycloScalar)):
            return self.scale(other if isinstance(other, CycloScalar) else CycloScalar.rational(other))
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                p = ca * cb
                prev = acc.get(k)
                acc[k] = p if prev is None else prev + p
        out = LaurentPoly(self.nvars)
        out.terms = {k: c for k, c in acc.items() if not c.is_zero()}
        return out

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and (self - other).is_zero()

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms):
            mono = "*".join(f"z{j + 1}^{e}" for j, e in enumerate(a) if e) or "1"
            parts.append(f"({self.terms[a].render()})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"


@dataclass(frozen=True)
class ActionSpec:
    """Diagonal G-action plus the eigenvectors w_i.

    ``g_matrix[k][j]`` is the scalar by which the k-th cyclic generator of G
    multiplies z_j.  ``w[i]`` is a Laurent polynomial in the same variables.
    """

    datum: HopfDatum
    nvars: int
    g_matrix: tuple[tuple[CycloScalar, ...], ...]
    w: tuple[LaurentPoly, ...]


@dataclass
class FieldAction:
    spec: ActionSpec
    _eigen_cache: dict = field(default_factory=dict, repr=False)

    @property
    def datum(self) -> HopfDatum:
        return self.spec.datum

    @property
    def nvars(self) -> int:
        return self.spec.nvars

    def generator_eigenvalues(self, a) -> tuple[CycloScalar, ...]:
        """Scalar by which each cyclic generator of G multiplies z^a."""
        a = tuple(a)
        hit = self._eigen_cache.get(a)
        if hit is None:
            vals = []
            for row in self.spec.g_matrix:
                v = CycloScalar.one()
                for s, e in zip(row, a):
                    if e:
                        v = v * s ** e
                vals.append(v)
            hit = tuple(vals)
            self._eigen_cache[a] = hit
        return hit

    def eigencharacter(self, a) -> Character:
        return Character(self.datum.group, self.generator_eigenvalues(a))

    def act_group(self, h: GroupElement, f: LaurentPoly) -> LaurentPoly:
        out = LaurentPoly(f.nvars)
        for a, c in f.terms.items():
            out.terms[a] = c * self.eigencharacter(a)(h)
        return out

    def act_x(self, i: int, f: LaurentPoly) -> LaurentPoly:
        return self.spec.w[i] * (f - self.act_group(self.datum.g[i], f))


# An operator word is a tuple whose items are letter indices (int, x_i) or
# GroupElement instances; an OperatorExpr is a list of (coefficient, word).
OperatorExpr = list


def _as_operator(P) -> OperatorExpr:
    if isinstance(P, NcPolynomial):
        return [(c, w) for w, c in P.terms.items()]
    if isinstance(P, tuple):
        return [(CycloScalar.one(), P)]
    return list(P)


def apply_word(action: FieldAction, P, f: LaurentPoly) -> LaurentPoly:
    """Apply a word or operator expression to f; the rightmost factor acts first."""
    total = LaurentPoly(f.nvars)
    for coeff, word in _as_operator(P):
        cur = f
        for item in reversed(word):
            if isinstance(item, GroupElement):
                cur = action.act_group(item, cur)
            else:
                cur = action.act_x(item, cur)
            if cur.is_zero():
                break
        total = total + cur.scale(coeff)
    return total


def _faithful(G, g_matrix) -> bool:
    for h in G.elements():
        if h.is_identity():
            continue
        trivial = True
        for j in range(len(g_matrix[0]) if g_matrix else 0):
            v = CycloScalar.one()
            for k, e in enumerate(h.exponents):
                if e:
                    v = v * g_matrix[k][j] ** e
            if v != 1:
                trivial = False
                break
        if trivial:
            return False
    return True


def _chi_on_generators(d: HopfDatum, i: int) -> tuple[CycloScalar, ...] | None:
    if d.chi is not None:
        return d.chi[i].values
    return None


def build_action(spec: ActionSpec) -> FieldAction:
    d = spec.datum
    G = d.group
    if len(spec.g_matrix) != G.rank or any(len(row) != spec.nvars for row in spec.g_matrix):
        raise ValueError("g_matrix needs one row per cyclic factor and one entry per variable")
    if len(spec.w) != d.theta:
        raise ValueError("one w_i per generator x_i is required")
    for k, row in enumerate(spec.g_matrix):
        for s in row:
            if s ** G.factor_orders[k] != 1:
                raise UnfaithfulGroupAction(f"generator {k + 1} does not act with order dividing {G.factor_orders[k]}")
    if not _faithful(G, spec.g_matrix):
        raise UnfaithfulGroupAction("some nontrivial element of G fixes every variable")
    action = FieldAction(spec)
    for i, w in enumerate(spec.w):
        if w.is_zero():
            raise EquivarianceViolated(f"w_{i + 1} is zero")
        target = _chi_on_generators(d, i)
        for a in w.terms:
            ev = action.generator_eigenvalues(a)
            if target is not None:
                ok = all(x == y for x, y in zip(ev, target))
            else:
                # braiding-only data: compare on the grouplikes g_1..g_theta
                ch = Character(G, ev)
                ok = all(ch(d.g[s]) == d.braiding[s][i] for s in range(d.theta))
            if not ok:
                raise EquivarianceViolated(f"w_{i + 1} term z^{a} is not an eigenvector of character chi_{i + 1}")
    return action


def find_equivariant_monomial(d: HopfDatum, nvars: int, g_matrix, i: int, bound: int | None = None):
    """Smallest (in L1 norm) exponent vector a with g . z^a = chi_i(g) z^a."""
    spec = ActionSpec(d, nvars, tuple(tuple(r) for r in g_matrix), ())
    action = FieldAction(spec)
    target = _chi_on_generators(d, i)
    bound = d.group.exponent if bound is None else bound
    box = sorted(itertools.product(range(-bound, bound + 1), repeat=nvars), key=lambda a: (sum(map(abs, a)), a))
    for a in box:
        ev = action.generator_eigenvalues(a)
        if target is not None:
            ok = all(x == y for x, y in zip(ev, target))
        else:
            ch = Character(d.group, ev)
            ok = all(ch(d.g[s]) == d.braiding[s][i] for s in range(d.theta))
        if ok:
            return a
    raise NoEquivariantMonomial(f"no monomial z^a with |a_j| <= {bound} has character chi_{i + 1}")


@dataclass
class RelationCheck:
    label: str
    passed: bool
    failures: list[tuple[int, ...]]
    q_consistent: bool | None = None

    def to_json(self) -> dict:
        return {
            "relation": self.label,
            "passed": self.passed,
            "failing_monomials": [list(a) for a in self.failures[:10]],
            "failure_count": len(self.failures),
            "q_cross_check": self.q_consistent,
        }


@dataclass
class VerificationReport:
    degree_bound: int
    checks: list[RelationCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "passed": self.passed,
            "relations": [c.to_json() for c in self.checks],
        }


def verify_relations_on_basis(action: FieldAction, relations, degree_bound: int = 10) -> VerificationReport:
    """Apply every relation to each z^a with all |a_j| <= D.

    ``relations`` holds (label, expr) pairs where expr is an NcPolynomial, a
    word, or an operator expression whose value should be the zero operator.
    Pure x-relations are also compared with Q evaluated at the eigencharacter
    of each tested monomial.
    """
    D = degree_bound
    box = list(itertools.product(range(-D, D + 1), repeat=action.nvars))
    checks = []
    for label, expr in relations:
        failures = []
        for a in box:
            if not apply_word(action, expr, LaurentPoly.monomial(a)).is_zero():
                failures.append(a)
        consistent = None
        if isinstance(expr, NcPolynomial) and not expr.is_zero():
            Q = relation_Q(action.datum, expr).q_element
            predicted = [a for a in box if not Q.evaluate(action.eigencharacter(a)).is_zero()]
            consistent = predicted == failures
        checks.append(RelationCheck(label, not failures, failures, consistent))
    return VerificationReport(D, checks)


def _rank(rows: list[list[CycloScalar]]) -> int:
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def check_linear_independence(action: FieldAction) -> list[dict]:
    """Within each class of equal (g_i, chi_i), are the w_i linearly independent?"""
    d = action.datum
    classes: dict = {}
    for i in range(d.theta):
        if d.chi is not None:
            chi_key = tuple(v.render() for v in d.chi[i].values)
        else:
            chi_key = tuple(d.braiding[s][i].render() for s in range(d.theta))
        classes.setdefault((d.g[i].exponents, chi_key), []).append(i)
    out = []
    for (g, _), idx in sorted(classes.items()):
        support = sorted({a for i in idx for a in action.spec.w[i].terms})
        rows = [[action.spec.w[i].terms.get(a, CycloScalar.zero()) for a in support] for i in idx]
        independent = _rank(rows) == len(idx)
        out.append({"indices": [i + 1 for i in idx], "g": list(g), "independent": independent})
    return out


# -- the u_q(sl2) example ---------------------------------------------------------


@dataclass
class SL2Demo:
    m: int
    q: CycloScalar
    action: FieldAction
    relations: list

    def generator_images(self) -> dict[str, LaurentPoly]:
        """k.z, e.z and f.z, where e = x1 and f = k^-1 x2."""
        d = self.action.datum
        k = d.g[0]
        z = LaurentPoly.monomial((1,))
        return {
            "k.z": self.action.act_group(k, z),
            "e.z": apply_word(self.action, (0,), z),
            "f.z": apply_word(self.action, (k.inverse(), 1), z),
        }

    def expected_images(self) -> dict[str, LaurentPoly]:
        q = self.q
        return {
            "k.z": LaurentPoly.monomial((1,), q ** -2),
            "e.z": LaurentPoly.constant(1, CycloScalar.one()),
            "f.z": LaurentPoly.monomial((2,), -q),
        }


def sl2_demo(m: int) -> SL2Demo:
    """u_q(sl2) acting on k(z) with q = zeta_m, k.z = q^-2 z, x1 = e and x2 = kf."""
    q = CycloScalar.root(m)
    G = FiniteAbelianGroup((m,))
    k = G.element(1)
    d = HopfDatum(G, (k, k), (Character(G, (q ** 2,)), Character(G, (q ** -2,))), name="u_q(sl2)")
    one = CycloScalar.one(m)
    w1 = LaurentPoly.monomial((-1,), (one - q ** -2).inverse())
    w2 = LaurentPoly.monomial((1,), -(q ** -1) * (q ** 2 - 1).inverse())
    action = build_action(ActionSpec(d, 1, ((q ** -2,),), (w1, w2)))
    ident = G.identity()
    c = (q - q ** -1).inverse()
    relations = [
        ("k x1 - q^2 x1 k", [(one, (k, 0)), (-(q ** 2), (0, k))]),
        ("k x2 - q^-2 x2 k", [(one, (k, 1)), (-(q ** -2), (1, k))]),
        (f"x1^{m}", [(one, (0,) * m)]),
        (f"x2^{m}", [(one, (1,) * m)]),
        (f"k^{m} - 1", [(one, (k ** m,)), (-one, (ident,))]),
        (
            "q^2 x1 x2 - x2 x1 - (k^2 - 1)(q - q^-1)^-1",
            [(q ** 2, (0, 1)), (-one, (1, 0)), (-c, (k * k,)), (c, (ident,))],
        ),
    ]
    return SL2Demo(m, q, action, relations)
