"""The datum (G, g_1..g_theta, chi_1..chi_theta) of a pointed Hopf algebra.

A datum is given either by characters chi_j (the braiding is then
q_ij = chi_j(g_i)) or directly by a braiding matrix q.  The second form lets
entries carry unit symbols independently of any particular character, which
is how the symbolic rank-2 computations are set up.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce

from .cartan import CartanComponent, CartanTypeTag, classify_cartan
from .cyclotomic import CycloScalar
from .errors import (
    CartanIncompatible,
    MalformedDatum,
    NotFiniteCartanType,
    SymbolicDatum,
)
from .group import Character, FiniteAbelianGroup, GroupElement, subgroup_generated

__all__ = [
    "HopfDatum",
    "LiftingData",
    "ValidationReport",
    "infer_cartan_matrix",
    "minimal_datum",
    "validate",
]


@dataclass(frozen=True)
class LiftingData:
    """Lifting scalars: x_i^{n_i} = taft_i (1 - g_i^{n_i}) and linking lambda_ij for i<j.

    The same scalar is called alpha_i for quantum linear spaces and mu_i for
    rank-2 liftings; here it is always ``taft_scalars[i]``.
    """

    taft_scalars: tuple[CycloScalar, ...] = ()
    linking_scalars: tuple[tuple[tuple[int, int], CycloScalar], ...] = ()

    def taft(self, i: int) -> CycloScalar:
        if i < len(self.taft_scalars):
            return self.taft_scalars[i]
        return CycloScalar.zero()

    def linking(self, i: int, j: int) -> CycloScalar:
        if i > j:
            i, j = j, i
        for key, v in self.linking_scalars:
            if key == (i, j):
                return v
        return CycloScalar.zero()

    def is_trivial(self) -> bool:
        return all(c.is_zero() for c in self.taft_scalars) and all(v.is_zero() for _, v in self.linking_scalars)


@dataclass(frozen=True)
class HopfDatum:
    group: FiniteAbelianGroup
    g: tuple[GroupElement, ...]
    chi: tuple[Character, ...] | None = None
    q: tuple[tuple[CycloScalar, ...], ...] | None = None
    cartan: tuple[tuple[int, ...], ...] | None = None
    lifting: LiftingData | None = None
    unit_symbols: tuple[tuple[str, int], ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        if self.chi is not None:
            object.__setattr__(self, "chi", tuple(self.chi))
        if self.q is not None:
            object.__setattr__(self, "q", tuple(tuple(row) for row in self.q))
        if self.cartan is not None:
            object.__setattr__(self, "cartan", tuple(tuple(int(a) for a in row) for row in self.cartan))
        object.__setattr__(self, "unit_symbols", tuple(sorted(self.unit_symbols)))
        theta = len(self.g)
        if theta < 1:
            raise MalformedDatum("a datum needs at least one generator")
        if (self.chi is None) == (self.q is None):
            raise MalformedDatum("give exactly one of: characters chi, braiding matrix q")
        if self.chi is not None and len(self.chi) != theta:
            raise MalformedDatum(f"{theta} grouplikes but {len(self.chi)} characters")
        if self.q is not None and (len(self.q) != theta or any(len(r) != theta for r in self.q)):
            raise MalformedDatum("braiding matrix must be theta x theta")
        if self.cartan is not None and (len(self.cartan) != theta or any(len(r) != theta for r in self.cartan)):
            raise MalformedDatum("Cartan matrix must be theta x theta")
        for gi in self.g:
            if gi.group != self.group:
                raise MalformedDatum("grouplike does not belong to the datum's group")
        if self.chi is not None:
            for c in self.chi:
                if c.group != self.group:
                    raise MalformedDatum("character does not belong to the datum's group")
        if self.lifting is not None and len(self.lifting.taft_scalars) not in (0, theta):
            raise MalformedDatum("one taft scalar per generator is required")

    # -- basic derived data --------------------------------------------------

    @property
    def theta(self) -> int:
        return len(self.g)

    @cached_property
    def conductor(self) -> int:
        n = self.group.exponent
        for _, order in self.unit_symbols:
            n = math.lcm(n, order)
        for row in self.braiding:
            for v in row:
                n = math.lcm(n, v.conductor)
        return n

    @cached_property
    def braiding(self) -> tuple[tuple[CycloScalar, ...], ...]:
        theta = self.theta
        if self.q is not None:
            rows = self.q
        else:
            rows = tuple(tuple(self.chi[j](self.g[i]) for j in range(theta)) for i in range(theta))
        n = reduce(math.lcm, (v.conductor for r in rows for v in r), self.group.exponent)
        for _, order in self.unit_symbols:
            n = math.lcm(n, order)
        return tuple(tuple(v.lift(n).with_symbols(_layout(v, self.unit_symbols)) for v in r) for r in rows)

    def qij(self, i: int, j: int) -> CycloScalar:
        return self.braiding[i][j]

    def free_symbols(self) -> tuple[str, ...]:
        names = set()
        for r in self.braiding:
            for v in r:
                names.update(v.free_symbols())
        if self.lifting is not None:
            for c in self.lifting.taft_scalars:
                names.update(c.free_symbols())
            for _, c in self.lifting.linking_scalars:
                names.update(c.free_symbols())
        return tuple(sorted(names))

    def is_symbolic(self) -> bool:
        return bool(self.free_symbols())

    def generator_orders(self) -> list[int]:
        return [gi.order() for gi in self.g]

    def braiding_orders(self) -> list[int | None]:
        """n_i = ord(q_ii); None while q_ii still involves unit symbols."""
        cached = self.__dict__.get("_braiding_orders")
        if cached is None:
            cached = [self.braiding[i][i].multiplicative_order() for i in range(self.theta)]
            self.__dict__["_braiding_orders"] = cached
        return list(cached)

    def one(self) -> CycloScalar:
        return CycloScalar.one(self.conductor)

    # -- characters on the span of the grouplikes -------------------------------

    @cached_property
    def span_characters(self) -> dict[tuple[int, ...], tuple[CycloScalar, ...]]:
        """For every h in <g_1..g_theta>, the tuple (chi_1(h), ..., chi_theta(h)).

        For braiding-only data the characters are reconstructed from
        chi_j(g_i) = q_ij by walking the Cayley graph; an inconsistency means no
        family of characters realizes the braiding.
        """
        if self.is_symbolic():
            raise SymbolicDatum("instantiate the unit symbols first")
        theta = self.theta
        start = self.group.identity().exponents
        one = self.one()
        values = {start: tuple(one for _ in range(theta))}
        queue = deque([start])
        red = self.group.reduce
        while queue:
            h = queue.popleft()
            vh = values[h]
            for i, gi in enumerate(self.g):
                nxt = red(a + b for a, b in zip(h, gi.exponents))
                vn = tuple(vh[j] * self.braiding[i][j] for j in range(theta))
                prev = values.get(nxt)
                if prev is None:
                    values[nxt] = vn
                    queue.append(nxt)
                elif prev != vn:
                    raise MalformedDatum("the braiding matrix is not realized by characters of G")
        return values

    def character_value(self, j: int, h) -> CycloScalar:
        """chi_j(h) for h in the span of the grouplikes (or anywhere if chi is given)."""
        key = h.exponents if isinstance(h, GroupElement) else tuple(h)
        if self.chi is not None and not self.is_symbolic():
            return self.chi[j](GroupElement(self.group, key))
        return self.span_characters[key][j]

    # -- instantiation ---------------------------------------------------------

    def instantiate(self, assignment: dict) -> HopfDatum:
        """Substitute concrete roots of unity for unit symbols."""
        if not assignment:
            return self

        def sub(v: CycloScalar) -> CycloScalar:
            for name, val in assignment.items():
                if name in v.free_symbols():
                    v = v.substitute(name, val)
            return v.drop_unused_symbols()

        chi = q = None
        if self.chi is not None:
            chi = tuple(Character(c.group, tuple(sub(v) for v in c.values)) for c in self.chi)
        else:
            q = tuple(tuple(sub(v) for v in row) for row in self.q)
        lifting = None
        if self.lifting is not None:
            lifting = LiftingData(
                tuple(sub(c) for c in self.lifting.taft_scalars),
                tuple((k, sub(v)) for k, v in self.lifting.linking_scalars),
            )
        rest = tuple(s for s in self.unit_symbols if s[0] not in assignment)
        return HopfDatum(self.group, self.g, chi, q, self.cartan, lifting, rest, self.name)

    def is_consistent(self) -> bool:
        """Concrete data only: characters realize the braiding and have valid orders."""
        if self.chi is not None:
            for c in self.chi:
                for v, m in zip(c.values, self.group.factor_orders):
                    if v ** m != 1:
                        return False
            return True
        try:
            self.span_characters
        except MalformedDatum:
            return False
        return True

    def admissible_instantiations(self) -> list[dict]:
        """All assignments of roots of unity to the unit symbols that give consistent data.

        An assignment must make the braiding realizable by characters of G and
        keep every q_ii different from 1; with a Cartan matrix it must also
        satisfy q_ij q_ji = q_ii^{a_ij}.
        """
        names = [s for s in self.unit_symbols]
        out = []
        for combo in itertools.product(*(range(order) for _, order in names)):
            assignment = {name: CycloScalar.root(order, k) for (name, order), k in zip(names, combo)}
            d = self.instantiate(assignment)
            if not d.is_consistent():
                continue
            if any(d.braiding[i][i] == 1 for i in range(d.theta)):
                continue
            if d.cartan is not None and _eq21_failures(d):
                continue
            out.append(assignment)
        return out

    # -- rendering ---------------------------------------------------------------

    def describe(self) -> dict:
        out = {
            "group": self.group.render(),
            "g": [gi.render() for gi in self.g],
            "q": [[v.render() for v in row] for row in self.braiding],
        }
        if self.chi is not None:
            out["chi"] = [c.render() for c in self.chi]
        if self.cartan is not None:
            out["cartan"] = [list(r) for r in self.cartan]
        if self.unit_symbols:
            out["unit_symbols"] = {n: o for n, o in self.unit_symbols}
        if self.lifting is not None:
            out["taft_scalars"] = [c.render() for c in self.lifting.taft_scalars]
            out["linking_scalars"] = {f"{i + 1},{j + 1}": v.render() for (i, j), v in self.lifting.linking_scalars}
        return out


def _layout(v: CycloScalar, symbols):
    return tuple(sorted(set(v.symbols) | set(symbols)))


def _eq21_failures(d: HopfDatum, cartan=None) -> list[tuple[int, int]]:
    A = cartan if cartan is not None else d.cartan
    bad = []
    for i in range(d.theta):
        for j in range(d.theta):
            if i != j and d.braiding[i][j] * d.braiding[j][i] != d.braiding[i][i] ** A[i][j]:
                bad.append((i, j))
    return bad


# -- validation ------------------------------------------------------------------


@dataclass
class ValidationReport:
    braiding: list[list[str]]
    orders: list[int | None]
    generator_orders: list[int]
    order_divides_generator: list[bool | None]
    eq21: bool | None
    eq22: bool | None
    cartan_type: str | None
    admissible: list[dict]
    conductor: int
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.eq21 is not False and bool(self.admissible)

    def to_json(self) -> dict:
        return {
            "braiding": self.braiding,
            "n": self.orders,
            "generator_orders": self.generator_orders,
            "n_divides_ord_g": self.order_divides_generator,
            "eq21": self.eq21,
            "eq22": self.eq22,
            "cartan_type": self.cartan_type,
            "admissible_instantiations": [
                {k: v.render() for k, v in a.items()} for a in self.admissible
            ],
            "conductor": self.conductor,
            "warnings": self.warnings,
        }


def _concrete_views(d: HopfDatum):
    if not d.unit_symbols:
        return [({}, d)]
    return [(a, d.instantiate(a)) for a in d.admissible_instantiations()]


def validate(d: HopfDatum) -> ValidationReport:
    theta = d.theta
    warnings = []
    views = _concrete_views(d)
    if not views:
        raise MalformedDatum("no admissible values for the unit symbols")
    if not d.unit_symbols and not d.is_consistent():
        raise MalformedDatum("characters do not realize the braiding / have wrong orders")
    for _, v in views:
        for i in range(theta):
            if v.braiding[i][i] == 1:
                raise MalformedDatum(f"q_{i + 1}{i + 1} = 1")
    orders = views[0][1].braiding_orders()
    if any(v.braiding_orders() != orders for _, v in views[1:]):
        warnings.append("n_i depends on the instantiation of the unit symbols; first one reported")
    gorders = d.generator_orders()
    divides = [None if n is None else go % n == 0 for n, go in zip(orders, gorders)]

    eq21 = eq22 = None
    ctype = None
    if d.cartan is not None:
        symbolic_ok = not _eq21_failures(d)
        eq21 = symbolic_ok or all(not _eq21_failures(v) for _, v in views)
        if not eq21:
            raise CartanIncompatible("q_ij q_ji = q_ii^{a_ij} fails for the supplied Cartan matrix")
        tag = classify_cartan(d.cartan)
        ctype = tag.label()
        eq22 = conditions_eq22(d.cartan, orders)
        if eq22 is False:
            warnings.append("q_ii of even order (or divisible by 3 on a G2 component)")
    if d.lifting is not None:
        for (i, j), lam in d.lifting.linking_scalars:
            if not lam.is_zero() and (d.g[i] * d.g[j]).is_identity():
                raise MalformedDatum(f"linking scalar lambda_{i + 1}{j + 1} must vanish since g_i g_j = 1")
    return ValidationReport(
        braiding=[[v.render() for v in row] for row in d.braiding],
        orders=orders,
        generator_orders=gorders,
        order_divides_generator=divides,
        eq21=eq21,
        eq22=eq22,
        cartan_type=ctype,
        admissible=[a for a, _ in views],
        conductor=d.conductor,
        warnings=warnings,
    )


def conditions_eq22(cartan, orders) -> bool | None:
    """q_ii of odd order, and prime to 3 on components of type G2."""
    if any(n is None for n in orders):
        return None
    tag = classify_cartan(cartan)
    for comp in tag.components:
        for v in comp.nodes:
            n = orders[v]
            if n % 2 == 0:
                return False
            if comp.letter == "G" and n % 3 == 0:
                return False
    return True


# -- Cartan inference ------------------------------------------------------------

_BONDS = [(-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1)]


def infer_cartan_matrix(d: HopfDatum) -> CartanTypeTag:
    """Smallest finite-type Cartan matrix compatible with the braiding."""
    if d.is_symbolic():
        raise SymbolicDatum("instantiate the unit symbols before inferring a Cartan matrix")
    theta = d.theta
    Q = d.braiding
    for i in range(theta):
        if Q[i][i] == 1:
            raise MalformedDatum(f"q_{i + 1}{i + 1} = 1")
    forced = []
    options = {}
    for i in range(theta):
        for j in range(i + 1, theta):
            prod = Q[i][j] * Q[j][i]
            if prod == 1:
                continue
            opts = [(a, b) for a, b in _BONDS if Q[i][i] ** a == prod and Q[j][j] ** b == prod]
            if not opts:
                raise NotFiniteCartanType(f"q_{i + 1}{j + 1} q_{j + 1}{i + 1} is not a suitable power of q_ii and q_jj")
            forced.append((i, j))
            options[(i, j)] = opts
    if len(forced) > theta - 1:
        raise NotFiniteCartanType("too many edges for a finite Dynkin diagram")
    best = None
    for choice in itertools.product(*(options[p] for p in forced)):
        A = [[2 if i == j else 0 for j in range(theta)] for i in range(theta)]
        for (i, j), (a, b) in zip(forced, choice):
            A[i][j], A[j][i] = a, b
        try:
            tag = classify_cartan(A)
        except NotFiniteCartanType:
            continue
        key = (sum(abs(x) for row in A for x in row), [x for row in A for x in row])
        if best is None or key < best[0]:
            best = (key, tag)
    if best is None:
        raise NotFiniteCartanType("no finite-type Cartan matrix fits the braiding")
    tag = best[1]
    assert not _eq21_failures(d, tag.matrix)
    orders = d.braiding_orders()
    comps = tuple(
        CartanComponent(c.letter, c.rank, c.nodes, orders[c.nodes[0]]) for c in tag.components
    )
    return CartanTypeTag(tag.matrix, comps)


def cartan_tag(d: HopfDatum) -> CartanTypeTag:
    """The supplied Cartan matrix's type, or the inferred one."""
    cached = d.__dict__.get("_cartan_tag")
    if cached is None:
        cached = _cartan_tag(d)
        d.__dict__["_cartan_tag"] = cached
    return cached


def _cartan_tag(d: HopfDatum) -> CartanTypeTag:
    if d.cartan is not None:
        tag = classify_cartan(d.cartan)
        orders = d.braiding_orders()
        return CartanTypeTag(
            tag.matrix,
            tuple(CartanComponent(c.letter, c.rank, c.nodes, orders[c.nodes[0]]) for c in tag.components),
        )
    return infer_cartan_matrix(d)


def with_cartan(d: HopfDatum, cartan) -> HopfDatum:
    return HopfDatum(d.group, d.g, d.chi, d.q, cartan, d.lifting, d.unit_symbols, d.name)


# -- minimal datum ---------------------------------------------------------------


def minimal_datum(d: HopfDatum) -> HopfDatum:
    """Restrict to the subgroup generated by the g_i."""
    sub, emb = subgroup_generated(d.group, d.g)
    if sub.order == d.group.order:
        return d
    chi = None
    if d.chi is not None:
        chi = tuple(emb.restrict(c) for c in d.chi)
    return HopfDatum(sub, emb.coordinates, chi, d.q, d.cartan, d.lifting, d.unit_symbols, d.name)
