"""The group algebra kG of a finite abelian group over Q(zeta_N)."""

from __future__ import annotations

from .cyclotomic import CycloScalar
from .group import Character, FiniteAbelianGroup, GroupElement

__all__ = ["GroupAlgebraElement", "ga_arithmetic", "ga_is_zero"]


def _key(g):
    return g.exponents if isinstance(g, GroupElement) else tuple(g)


class GroupAlgebraElement:
    """Sparse linear combination of group elements (exponent tuples as keys)."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FiniteAbelianGroup, terms=None):
        self.group = group
        self.terms: dict[tuple[int, ...], CycloScalar] = {}
        for g, c in (terms or {}).items():
            k = group.reduce(_key(g))
            c = c if isinstance(c, CycloScalar) else CycloScalar.rational(c)
            prev = self.terms.get(k)
            c = c if prev is None else prev + c
            if c.is_zero():
                self.terms.pop(k, None)
            else:
                self.terms[k] = c

    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def one(cls, group, conductor: int = 1):
        return cls(group, {group.identity(): CycloScalar.one(conductor)})

    @classmethod
    def basis(cls, g: GroupElement, coeff=None):
        c = CycloScalar.one() if coeff is None else coeff
        return cls(g.group, {g: c})

    @classmethod
    def one_minus(cls, g: GroupElement, lam=None):
        """The factor 1 - lam*g."""
        G = g.group
        lam = CycloScalar.one() if lam is None else lam
        return cls(G, {G.identity(): CycloScalar.one(lam.conductor)}) - cls(G, {g: lam})

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return False
        if other.group != self.group:
            raise ValueError("group algebra elements over different groups")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = GroupAlgebraElement(self.group)
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.terms.get(k)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.terms.pop(k, None)
            else:
                out.terms[k] = s
        return out

    def __neg__(self):
        out = GroupAlgebraElement(self.group)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> GroupAlgebraElement:
        if not isinstance(c, CycloScalar):
            c = CycloScalar.rational(c)
        out = GroupAlgebraElement(self.group)
        for k, v in self.terms.items():
            p = v * c
            if not p.is_zero():
                out.terms[k] = p
        return out

    def __mul__(self, other):
        if isinstance(other, (int, CycloScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        if not self._check(other):
            return NotImplemented
        acc: dict = {}
        red = self.group.reduce
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = red(a + b for a, b in zip(ka, kb))
                p = ca * cb
                prev = acc.get(k)
                acc[k] = p if prev is None else prev + p
        out = GroupAlgebraElement(self.group)
        out.terms = {k: c for k, c in acc.items() if not c.is_zero()}
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = GroupAlgebraElement.one(self.group)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and (self - other).is_zero()

    def __hash__(self):
        return hash((self.group, frozenset(self.terms)))

    # -- maps -----------------------------------------------------------------

    def twist(self, chi: Character) -> GroupAlgebraElement:
        """Apply the algebra automorphism h -> chi(h) h."""
        out = GroupAlgebraElement(self.group)
        out.terms = {k: c * chi(GroupElement(self.group, k)) for k, c in self.terms.items()}
        return out

    def evaluate(self, chi: Character) -> CycloScalar:
        """The algebra map kG -> k induced by a character."""
        total = CycloScalar.zero()
        for k, c in self.terms.items():
            total = total + c * chi(GroupElement(self.group, k))
        return total

    def substitute(self, symbol: str, value: CycloScalar) -> GroupAlgebraElement:
        out = GroupAlgebraElement(self.group)
        for k, c in self.terms.items():
            if symbol in c.free_symbols():
                c = c.substitute(symbol, value)
            if not c.is_zero():
                out.terms[k] = c
        return out

    def map_coefficients(self, fn) -> GroupAlgebraElement:
        out = GroupAlgebraElement(self.group)
        for k, c in self.terms.items():
            c = fn(c)
            if not c.is_zero():
                out.terms[k] = c
        return out

    def free_symbols(self) -> tuple[str, ...]:
        names = set()
        for c in self.terms.values():
            names.update(c.free_symbols())
        return tuple(sorted(names))

    # -- rendering ------------------------------------------------------------

    def render(self, name: str = "g") -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if not any(k):
                elem = "1"
            else:
                elem = f"{name}^(" + ",".join(map(str, k)) + ")"
            parts.append(f"({c.render()})*{elem}")
        return " + ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"GroupAlgebraElement({self.render()!r})"


def ga_arithmetic(a: GroupAlgebraElement, b, op: str) -> GroupAlgebraElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def ga_is_zero(a: GroupAlgebraElement) -> bool:
    return a.is_zero()
