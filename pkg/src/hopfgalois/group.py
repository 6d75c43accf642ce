"""Finite abelian groups as products of cyclic groups, with characters."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

from .cyclotomic import CycloScalar

__all__ = [
    "Character",
    "FiniteAbelianGroup",
    "GroupElement",
    "SubgroupEmbedding",
    "element_order",
    "evaluate_character",
    "smith_normal_form",
    "subgroup_generated",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factor_orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factor_orders", tuple(int(m) for m in self.factor_orders))
        if any(m < 1 for m in self.factor_orders):
            raise ValueError("cyclic factor orders must be positive")

    @classmethod
    def cyclic(cls, n: int) -> FiniteAbelianGroup:
        return cls((n,))

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    @property
    def order(self) -> int:
        return math.prod(self.factor_orders)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factor_orders, 1)

    def reduce(self, exps) -> tuple[int, ...]:
        return tuple(e % m for e, m in zip(exps, self.factor_orders))

    def element(self, *exps) -> GroupElement:
        if len(exps) == 1 and isinstance(exps[0], (tuple, list)):
            exps = tuple(exps[0])
        if len(exps) != self.rank:
            raise ValueError(f"expected {self.rank} exponents, got {len(exps)}")
        return GroupElement(self, self.reduce(exps))

    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list[GroupElement]:
        out = []
        for j in range(self.rank):
            e = [0] * self.rank
            e[j] = 1
            out.append(self.element(e))
        return out

    def elements(self):
        for exps in itertools.product(*(range(m) for m in self.factor_orders)):
            yield GroupElement(self, exps)

    def render(self) -> str:
        if not self.factor_orders:
            return "Z1"
        return " x ".join(f"Z{m}" for m in self.factor_orders)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    exponents: tuple[int, ...]

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.group, self.group.reduce(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> GroupElement:
        return GroupElement(self.group, self.group.reduce(e * k for e in self.exponents))

    def inverse(self) -> GroupElement:
        return self ** -1

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int:
        return element_order(self)

    def render(self) -> str:
        return "(" + ",".join(str(e) for e in self.exponents) + ")"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class Character:
    """A character given by its values on the cyclic generators of its group."""

    group: FiniteAbelianGroup
    values: tuple[CycloScalar, ...]

    def __post_init__(self):
        if len(self.values) != self.group.rank:
            raise ValueError("one character value per cyclic factor is required")

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup, conductor: int = 1) -> Character:
        return cls(group, tuple(CycloScalar.one(conductor) for _ in group.factor_orders))

    def __call__(self, g: GroupElement) -> CycloScalar:
        return evaluate_character(self, g)

    def __mul__(self, other: Character) -> Character:
        return Character(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def __pow__(self, k: int) -> Character:
        return Character(self.group, tuple(v ** k for v in self.values))

    def render(self) -> str:
        return "[" + ", ".join(v.render() for v in self.values) + "]"


def element_order(g: GroupElement) -> int:
    return reduce(
        math.lcm,
        (m // math.gcd(e, m) for e, m in zip(g.exponents, g.group.factor_orders)),
        1,
    )


def evaluate_character(chi: Character, g: GroupElement) -> CycloScalar:
    out = None
    for v, e in zip(chi.values, g.exponents):
        if e:
            term = v ** e
            out = term if out is None else out * term
    if out is None:
        conductor = chi.values[0].conductor if chi.values else 1
        return CycloScalar.one(conductor)
    return out


# -- Smith normal form -------------------------------------------------------


def smith_normal_form(matrix):
    """Return (D, U, V, V_inv) with U * A * V = D diagonal, d_1 | d_2 | ...

    Entries of D are nonnegative; U and V are unimodular integer matrices.
    """
    A = [list(map(int, row)) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]
    Vi = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def add_row(dst, src, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(dst, src, c):
        for M in (A, V):
            for row in M:
                row[dst] += c * row[src]
        Vi[src] = [a - c * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            if A[t][t] < 0:
                A[t] = [-a for a in A[t]]
                U[t] = [-a for a in U[t]]
            p = A[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
    return A, U, V, Vi


@dataclass(frozen=True)
class SubgroupEmbedding:
    """The subgroup <gens> in its own cyclic coordinates.

    ``generator_images[t]`` is the element of the ambient group that the t-th
    cyclic generator of ``subgroup`` maps to; ``coordinates[i]`` expresses the
    i-th original generator in subgroup coordinates.
    """

    ambient: FiniteAbelianGroup
    subgroup: FiniteAbelianGroup
    generator_images: tuple[GroupElement, ...]
    coordinates: tuple[GroupElement, ...]

    def to_ambient(self, h: GroupElement) -> GroupElement:
        out = self.ambient.identity()
        for img, e in zip(self.generator_images, h.exponents):
            out = out * img ** e
        return out

    def restrict(self, chi: Character) -> Character:
        return Character(self.subgroup, tuple(chi(img) for img in self.generator_images))


def subgroup_generated(G: FiniteAbelianGroup, gens) -> tuple[FiniteAbelianGroup, SubgroupEmbedding]:
    gens = list(gens)
    k, r = len(gens), G.rank
    if k == 0:
        trivial = FiniteAbelianGroup(())
        return trivial, SubgroupEmbedding(G, trivial, (), ())
    # Relations among the generators: integer row vectors c with sum c_i gens_i = 0.
    B = [list(g.exponents) for g in gens]
    for j, m in enumerate(G.factor_orders):
        row = [0] * r
        row[j] = m
        B.append(row)
    if r == 0:
        relations = [[1 if i == t else 0 for i in range(k)] for t in range(k)]
    else:
        D, U, _, _ = smith_normal_form(B)
        rank = sum(1 for t in range(min(len(D), r)) if D[t][t])
        relations = [U[i][:k] for i in range(rank, len(B))]
    relations = [row for row in relations if any(row)] or [[0] * k]
    D, _, V, Vi = smith_normal_form(relations)
    diag = [D[t][t] if t < len(D) else 0 for t in range(k)]
    if any(d == 0 for d in diag):
        raise AssertionError("subgroup of a finite group must be finite")
    keep = [t for t in range(k) if diag[t] != 1]
    sub = FiniteAbelianGroup(tuple(diag[t] for t in keep))
    images = []
    for t in keep:
        img = G.identity()
        for i in range(k):
            img = img * gens[i] ** Vi[t][i]
        images.append(img)
    coords = tuple(sub.element([V[i][t] for t in keep]) for i in range(k))
    return sub, SubgroupEmbedding(G, sub, tuple(images), coords)
