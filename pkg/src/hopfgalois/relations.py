"""Noncommutative relations and their group-algebra elements Q.

Under x_i -> w_i (1 - g_i), a multihomogeneous relation P of multidegree
(d_1..d_theta) acts on a module field as (prod_i w_i^{d_i}) * Q_P with
Q_P in kG.  Moving every w to the left through the (1 - g) factors gives,
for a word x_{j_1} ... x_{j_t},

    Q = prod_s (1 - lam_s g_{j_s}),   lam_s = prod_{r > s} q_{j_s j_r}.

Words are tuples of 0-based letter indices; text renderings are 1-based.
"""

from __future__ import annotations

import os
from collections import deque
from math import factorial
from dataclasses import dataclass, field

from .cyclotomic import CycloScalar
from .errors import ExpansionCapExceeded, MissingCartanMatrix, NotMultihomogeneous
from .group import subgroup_generated
from .group_algebra import GroupAlgebraElement
from .hopf_datum import HopfDatum
from .vanishing import power_vanishes

__all__ = [
    "NcPolynomial",
    "QResult",
    "adjoint",
    "expansion_cap",
    "monomial_Q",
    "power_relation_Q",
    "relation_Q",
    "root_vectors",
    "serre_relation",
]

DEFAULT_EXPANSION_CAP = 10**6


def expansion_cap() -> int:
    raw = os.environ.get("HOPF_GALOIS_EXPANSION_CAP")
    return int(raw) if raw else DEFAULT_EXPANSION_CAP


class NcPolynomial:
    """Element of the free algebra k<x_1..x_theta>: {word: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, ...], CycloScalar] = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, CycloScalar):
                c = CycloScalar.rational(c)
            w = tuple(w)
            prev = self.terms.get(w)
            c = c if prev is None else prev + c
            if c.is_zero():
                self.terms.pop(w, None)
            else:
                self.terms[w] = c

    @classmethod
    def letter(cls, i: int) -> NcPolynomial:
        return cls({(i,): CycloScalar.one()})

    @classmethod
    def word(cls, letters, coeff=None) -> NcPolynomial:
        return cls({tuple(letters): coeff if coeff is not None else CycloScalar.one()})

    @classmethod
    def constant(cls, c) -> NcPolynomial:
        return cls({(): c})

    def _add_into(self, acc, w, c):
        prev = acc.get(w)
        s = c if prev is None else prev + c
        if s.is_zero():
            acc.pop(w, None)
        else:
            acc[w] = s

    def __add__(self, other):
        if not isinstance(other, NcPolynomial):
            other = NcPolynomial.constant(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            self._add_into(acc, w, c)
        out = NcPolynomial()
        out.terms = acc
        return out

    __radd__ = __add__

    def __neg__(self):
        out = NcPolynomial()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, NcPolynomial):
            other = NcPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> NcPolynomial:
        if not isinstance(c, CycloScalar):
            c = CycloScalar.rational(c)
        out = NcPolynomial()
        for w, v in self.terms.items():
            p = v * c
            if not p.is_zero():
                out.terms[w] = p
        return out

    def multiply(self, other: NcPolynomial, cap: int | None = None) -> NcPolynomial:
        acc: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                self._add_into(acc, wa + wb, ca * cb)
            if cap is not None and len(acc) > cap:
                raise ExpansionCapExceeded(f"expansion exceeds {cap} monomials")
        out = NcPolynomial()
        out.terms = acc
        return out

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            return self.multiply(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def power(self, n: int, cap: int | None = None) -> NcPolynomial:
        out = NcPolynomial.constant(CycloScalar.one())
        for _ in range(n):
            out = out.multiply(self, cap)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return (self - other).is_zero()

    def __len__(self):
        return len(self.terms)

    def multidegrees(self, theta: int) -> set[tuple[int, ...]]:
        out = set()
        for w in self.terms:
            deg = [0] * theta
            for j in w:
                deg[j] += 1
            out.add(tuple(deg))
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = "*".join(f"x{j + 1}" for j in w) or "1"
            if c == 1:
                parts.append(word)
            elif c == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"({c.render()})*{word}" if w else f"({c.render()})")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NcPolynomial({self.render()!r})"


def _as_poly(P) -> NcPolynomial:
    if isinstance(P, NcPolynomial):
        return P
    return NcPolynomial.word(P)


# -- braided adjoint and Serre relations ------------------------------------------


def adjoint(d: HopfDatum, i: int, P, cap: int | None = None) -> NcPolynomial:
    """(ad_c x_i)(y) = x_i y - (q_{i j_1} ... q_{i j_t}) y x_i, extended linearly."""
    P = _as_poly(P)
    Q = d.braiding
    acc: dict = {}
    out = NcPolynomial()
    for w, c in P.terms.items():
        out._add_into(acc, (i,) + w, c)
        factor = c
        for j in w:
            factor = factor * Q[i][j]
        out._add_into(acc, w + (i,), -factor)
    if cap is not None and len(acc) > cap:
        raise ExpansionCapExceeded(f"expansion exceeds {cap} monomials")
    out.terms = acc
    return out


def iterated_adjoint(d: HopfDatum, i: int, times: int, P) -> NcPolynomial:
    P = _as_poly(P)
    for _ in range(times):
        P = adjoint(d, i, P)
    return P


def serre_relation(d: HopfDatum, i: int, j: int, cartan=None) -> NcPolynomial:
    A = cartan if cartan is not None else d.cartan
    if A is None:
        raise MissingCartanMatrix("a Cartan matrix is needed for the Serre relations")
    if i == j:
        raise ValueError("Serre relations need i != j")
    return iterated_adjoint(d, i, 1 - A[i][j], NcPolynomial.letter(j))


# -- Q elements ---------------------------------------------------------------------


@dataclass
class QResult:
    relation_id: str
    multidegree: tuple[int, ...]
    q_element: GroupAlgebraElement
    is_zero: bool
    relation: str = ""
    method: str = "direct"
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "relation_id": self.relation_id,
            "relation": self.relation,
            "multidegree": list(self.multidegree),
            "q_element_canonical": self.q_element.render(),
            "is_zero": self.is_zero,
            "method": self.method,
            "notes": list(self.notes),
        }


def _q_cache(d: HopfDatum) -> dict:
    return d.__dict__.setdefault("_monomial_q_cache", {})


def monomial_factors(d: HopfDatum, word, twist=None):
    """[(lam_s, j_s)] so that Q(word) = prod (1 - lam_s g_{j_s}).

    ``twist`` optionally multiplies lam_s by twist[j_s]; this realizes the
    automorphism h -> chi(h) h of kG on the factored form.
    """
    Q = d.braiding
    out = []
    one = d.one()
    for s, js in enumerate(word):
        lam = one
        for jr in word[s + 1 :]:
            lam = lam * Q[js][jr]
        if twist is not None:
            lam = lam * twist[js]
        out.append((lam, js))
    return out


def _product_of_factors(d: HopfDatum, factors) -> GroupAlgebraElement:
    G = d.group
    one = d.one()
    terms = {G.identity().exponents: one}
    red = G.reduce
    for lam, j in factors:
        gj = d.g[j].exponents
        nxt = dict(terms)
        for k, c in terms.items():
            kk = red(a + b for a, b in zip(k, gj))
            v = -(c * lam)
            prev = nxt.get(kk)
            s = v if prev is None else prev + v
            if s.is_zero():
                nxt.pop(kk, None)
            else:
                nxt[kk] = s
        terms = nxt
    out = GroupAlgebraElement(G)
    out.terms = terms
    return out


def monomial_Q(d: HopfDatum, word) -> GroupAlgebraElement:
    word = tuple(word)
    cache = _q_cache(d)
    hit = cache.get(word)
    if hit is None:
        hit = _product_of_factors(d, monomial_factors(d, word))
        cache[word] = hit
    return hit


def _multidegree(d: HopfDatum, P: NcPolynomial) -> tuple[int, ...]:
    degs = P.multidegrees(d.theta)
    if len(degs) != 1:
        raise NotMultihomogeneous("relation is not multihomogeneous; Q would depend on the w_i")
    return next(iter(degs))


def relation_Q(d: HopfDatum, P, relation_id: str = "") -> QResult:
    P = _as_poly(P)
    if P.is_zero():
        raise ValueError("relation_Q needs a nonzero relation")
    deg = _multidegree(d, P)
    total = GroupAlgebraElement(d.group)
    for w, c in P.terms.items():
        total = total + monomial_Q(d, w).scale(c)
    return QResult(relation_id, deg, total, total.is_zero(), P.render())


def _twisted_relation_Q(d: HopfDatum, P: NcPolynomial, twist) -> GroupAlgebraElement:
    total = GroupAlgebraElement(d.group)
    for w, c in P.terms.items():
        total = total + _product_of_factors(d, monomial_factors(d, w, twist)).scale(c)
    return total


def grading_character_values(d: HopfDatum, deg) -> list[CycloScalar]:
    """chi_alpha(g_i) = prod_j q_ij^{d_j} for the character chi_alpha of multidegree d."""
    out = []
    for i in range(d.theta):
        v = d.one()
        for j, e in enumerate(deg):
            if e:
                v = v * d.braiding[i][j] ** e
        out.append(v)
    return out


def lemma_hypotheses(d: HopfDatum, deg, n: int) -> bool:
    """All g_i are powers of one g of order n and chi_alpha(g) is a primitive n-th root."""
    sub, emb = subgroup_generated(d.group, d.g)
    if sub.rank != 1 or sub.factor_orders[0] != n:
        return False
    mu = grading_character_values(d, deg)
    coeffs = _express_in_generators(d, emb.generator_images[0])
    zeta = d.one()
    for m, c in zip(mu, coeffs):
        if c:
            zeta = zeta * m ** c
    if zeta.free_symbols():
        return False
    return zeta.multiplicative_order() == n


def _express_in_generators(d: HopfDatum, target):
    """Exponents c with prod g_i^{c_i} = target, found by breadth-first search."""
    start = d.group.identity().exponents
    seen = {start: (0,) * d.theta}
    queue = deque([start])
    red = d.group.reduce
    while queue:
        h = queue.popleft()
        if h == target.exponents:
            return seen[h]
        for i, gi in enumerate(d.g):
            nxt = red(a + b for a, b in zip(h, gi.exponents))
            if nxt not in seen:
                c = list(seen[h])
                c[i] += 1
                seen[nxt] = tuple(c)
                queue.append(nxt)
    raise ValueError("element is not in the span of the grouplikes")


def power_relation_Q(
    d: HopfDatum,
    P,
    n: int,
    relation_id: str = "",
    method: str = "auto",
    cap: int | None = None,
) -> QResult:
    """Q for the relation P^n.

    ``auto`` uses the telescoping shortcut when its hypotheses hold and
    otherwise the exact identity Q(P^n) = prod_{k<n} sigma^k(Q(P)), where
    sigma(h) = chi_alpha(h) h and chi_alpha is the character of P's degree.
    ``characters`` decides vanishing by evaluating at the characters of the
    span of the g_i (used by ``auto`` before falling back to the product).
    ``expand`` multiplies P out literally (bounded by the expansion cap).
    """
    P = _as_poly(P)
    deg = _multidegree(d, P)
    ndeg = tuple(n * e for e in deg)
    label = f"({P.render()})^{n}"
    if method in ("auto", "lemma") and lemma_hypotheses(d, deg, n):
        zero = GroupAlgebraElement(d.group)
        return QResult(relation_id, ndeg, zero, True, label, "lemma",
                       ["telescoping: prod_k (1 - zeta^k g) = 1 - g^n = 0"])
    if method == "lemma":
        raise ValueError("telescoping hypotheses do not hold for this relation")
    if method in ("auto", "characters"):
        mu = grading_character_values(d, deg)
        if power_vanishes(d, relation_Q(d, P).q_element, mu, n):
            zero = GroupAlgebraElement(d.group)
            return QResult(relation_id, ndeg, zero, True, label, "characters",
                           ["every coset of <chi_alpha> meets the zero set of Q_P on the characters of <g_i>"])
        if method == "characters":
            method = "twisted"
    if method in ("auto", "twisted"):
        mu = grading_character_values(d, deg)
        total = GroupAlgebraElement.one(d.group, d.conductor)
        for k in range(n):
            twist = [m ** k for m in mu]
            total = total * _twisted_relation_Q(d, P, twist)
            if total.is_zero():
                break
        return QResult(relation_id, ndeg, total, total.is_zero(), label, "twisted")
    if method == "expand":
        cap = expansion_cap() if cap is None else cap
        bound = len(P.terms) ** n
        if bound > cap and len(P.terms) > 1:
            # a literal expansion may still collapse, but the bound is what is guaranteed
            words = _count_words(deg, n)
            if words > cap:
                raise ExpansionCapExceeded(f"expanding P^{n} may need {words} monomials (cap {cap})")
        Pn = P.power(n, cap)
        if Pn.is_zero():
            zero = GroupAlgebraElement(d.group)
            return QResult(relation_id, ndeg, zero, True, label, "expand")
        r = relation_Q(d, Pn, relation_id)
        r.relation, r.method = label, "expand"
        return r
    raise ValueError(f"unknown method {method!r}")


def _count_words(deg, n) -> int:
    total = factorial(sum(deg) * n)
    for e in deg:
        total //= factorial(e * n)
    return total


# -- rank-2 root vectors ---------------------------------------------------------------


def root_vectors(d: HopfDatum, letter: str, cartan) -> list[tuple[str, NcPolynomial]]:
    """Positive-root vectors of a rank-2 datum under the fixed convention.

    A2: x1, x2, ad(x1)(x2).  B2 (node s short): x_s, x_l, ad(x_s)(x_l),
    ad(x_s)^2(x_l).  G2 (node s short): x_l, x_s, ad(x_s)^k(x_l) for k=1..3 and
    ad(x_l)(ad(x_s)^3(x_l)).
    """
    x = [NcPolynomial.letter(0), NcPolynomial.letter(1)]
    if letter == "A":
        return [("x1", x[0]), ("x2", x[1]), ("ad(1,x2)", adjoint(d, 0, x[1]))]
    s = 0 if cartan[0][1] < -1 else 1
    l = 1 - s
    S, L = s + 1, l + 1
    if letter in ("B", "C"):
        a1 = adjoint(d, s, x[l])
        a2 = adjoint(d, s, a1)
        return [
            (f"x{S}", x[s]),
            (f"x{L}", x[l]),
            (f"ad({S},x{L})", a1),
            (f"ad({S},ad({S},x{L}))", a2),
        ]
    if letter == "G":
        out = [(f"x{L}", x[l]), (f"x{S}", x[s])]
        cur, text = x[l], f"x{L}"
        for _ in range(3):
            cur = adjoint(d, s, cur)
            text = f"ad({S},{text})"
            out.append((text, cur))
        out.append((f"ad({L},{text})", adjoint(d, l, cur)))
        return out
    raise ValueError(f"no rank-2 root vectors for type {letter}")
