"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis {1, zeta, ..., zeta^(phi(N)-1)} reduced
modulo the N-th cyclotomic polynomial, so equality and zero tests are exact.
An element may also carry Laurent monomials in finitely many formal unit
symbols (e.g. ``lambda``), each of a declared finite order; exponents of a
symbol are reduced modulo its order.  The coefficient ring is then
Q(zeta_N)[lambda]/(lambda^order - 1), which is what the symbolic checks with
an unspecified root of unity need.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DivisionByZero, NonUnitDivisor, OrderMismatch, UnknownSymbol

__all__ = [
    "CycloScalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "field_arithmetic",
    "is_zero",
    "substitute_unit",
]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _poly_divmod(num, den):
    """Exact division of integer polynomials (low-to-high lists); den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    rem = num[: len(den) - 1]
    return out, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Computed as (x^n - 1) divided by the product of Phi_d over proper divisors d.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reductions of x^k mod Phi_n for 0 <= k < n."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    cur = [0] * deg
    cur[0] = 1
    table = []
    for _ in range(n):
        table.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by x and reduce the overflowing top coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi_poly[i]
    return tuple(table)


def _reduce(n: int, raw: dict) -> dict:
    """Reduce {exponent: coeff} (any integer exponents) into canonical form."""
    deg = euler_phi(n)
    table = _power_table(n)
    out: dict = {}
    for e, c in raw.items():
        if not c:
            continue
        e %= n
        if e < deg:
            out[e] = out.get(e, 0) + c
        else:
            for t, tc in table[e]:
                out[t] = out.get(t, 0) + c * tc
    return {e: _norm(c) for e, c in out.items() if c}


def _merge_symbols(a, b):
    if a == b:
        return a
    merged = dict(a)
    for name, order in b:
        if merged.get(name, order) != order:
            raise OrderMismatch(f"unit symbol {name} declared with orders {merged[name]} and {order}")
        merged[name] = order
    return tuple(sorted(merged.items()))


def _poly_ext_inverse(n: int, vec: dict) -> dict:
    """Inverse of a nonzero element of Q[x]/(Phi_n) by the extended Euclidean algorithm."""
    mod = [Fraction(c) for c in cyclotomic_polynomial(n)]
    deg = len(mod) - 1
    a = [Fraction(0)] * deg
    for e, c in vec.items():
        a[e] = Fraction(c)

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def sub_mul(p, q, c, shift):
        p = p + [Fraction(0)] * max(0, len(q) + shift - len(p))
        for i, qc in enumerate(q):
            p[i + shift] -= c * qc
        return trim(p)

    def mul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, pc in enumerate(p):
            if pc:
                for j, qc in enumerate(q):
                    out[i + j] += pc * qc
        return trim(out)

    r0, r1 = trim(list(mod)), trim(a)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q = []
        r = list(r0)
        while len(r) >= len(r1) and r:
            c = r[-1] / r1[-1]
            shift = len(r) - len(r1)
            q = q + [Fraction(0)] * max(0, shift + 1 - len(q))
            q[shift] += c
            r = sub_mul(r, r1, c, shift)
        r0, r1 = r1, r
        s0, s1 = s1, trim(_poly_sub(s0, mul(q, s1)))
    if not r1:
        raise DivisionByZero("element is not invertible")
    inv = [c / r1[0] for c in s1]
    raw = {i: c for i, c in enumerate(inv) if c}
    return _reduce(n, raw)


def _poly_sub(p, q):
    out = list(p) + [Fraction(0)] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] -= c
    return out


class CycloScalar:
    """Immutable element of Q(zeta_N), optionally with unit-symbol monomials.

    ``_terms`` maps a tuple of symbol exponents (aligned with ``symbols``) to a
    sparse canonical coefficient vector ``{power: rational}`` with powers below
    phi(N).
    """

    __slots__ = ("conductor", "symbols", "_terms", "_hash")

    def __init__(self, conductor: int, terms=None, symbols=()):
        self.conductor = conductor
        self.symbols = tuple(symbols)
        self._terms = terms or {}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _from_raw(cls, n, symbols, raw):
        terms = {}
        orders = [o for _, o in symbols]
        for key, vec in raw.items():
            key = tuple(e % o for e, o in zip(key, orders))
            red = _reduce(n, vec)
            if not red:
                continue
            if key in terms:
                acc = dict(terms[key])
                for e, c in red.items():
                    acc[e] = acc.get(e, 0) + c
                red = {e: _norm(c) for e, c in acc.items() if c}
                if not red:
                    del terms[key]
                    continue
            terms[key] = red
        return cls(n, terms, symbols)

    @classmethod
    def zero(cls, n: int = 1) -> CycloScalar:
        return cls(n)

    @classmethod
    def one(cls, n: int = 1) -> CycloScalar:
        return cls(n, {(): {0: 1}})

    @classmethod
    def rational(cls, value, n: int = 1) -> CycloScalar:
        value = _norm(Fraction(value))
        if not value:
            return cls(n)
        return cls(n, {(): {0: value}})

    @classmethod
    def root(cls, n: int, k: int = 1) -> CycloScalar:
        """zeta_n ** k."""
        return cls._from_raw(n, (), {(): {k: 1}})

    @classmethod
    def symbol(cls, name: str, order: int, n: int = 1, exponent: int = 1) -> CycloScalar:
        return cls._from_raw(n, ((name, order),), {(exponent,): {0: 1}})

    @classmethod
    def from_power_coefficients(cls, n: int, coeffs) -> CycloScalar:
        """Element sum_k coeffs[k] * zeta_n^k (any length; reduced)."""
        raw = {k: Fraction(c) for k, c in enumerate(coeffs) if c}
        return cls._from_raw(n, (), {(): raw})

    # -- coercion and alignment ---------------------------------------------

    @staticmethod
    def _coerce(other, n):
        if isinstance(other, CycloScalar):
            return other
        if isinstance(other, (int, Rational)):
            return CycloScalar.rational(other, n)
        return NotImplemented

    def lift(self, m: int) -> CycloScalar:
        """Re-express in Q(zeta_m); m must be a multiple of the conductor."""
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {m}")
        k = m // self.conductor
        raw = {key: {e * k: c for e, c in vec.items()} for key, vec in self._terms.items()}
        return CycloScalar._from_raw(m, self.symbols, raw)

    def lower(self, m: int) -> CycloScalar:
        """Re-express in the subfield Q(zeta_m); fails if the element is not in it."""
        n = self.conductor
        if m == n:
            return self
        if n % m:
            raise ValueError(f"Q(zeta_{m}) is not a subfield of Q(zeta_{n})")
        d = euler_phi(m)
        basis = [CycloScalar.root(m, i).lift(n) for i in range(d)]
        out = {}
        for key, vec in self._terms.items():
            sol = _solve_in_span(n, [b._terms.get((), {}) for b in basis], vec)
            if sol is None:
                raise ValueError(f"element does not lie in Q(zeta_{m})")
            out[key] = {i: c for i, c in enumerate(sol) if c}
        return CycloScalar._from_raw(m, self.symbols, out)

    def with_symbols(self, symbols) -> CycloScalar:
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        merged = _merge_symbols(self.symbols, symbols)
        if merged != symbols:
            raise OrderMismatch("target symbol layout does not contain all symbols")
        pos = {name: i for i, (name, _) in enumerate(symbols)}
        terms = {}
        for key, vec in self._terms.items():
            new = [0] * len(symbols)
            for (name, _), e in zip(self.symbols, key):
                new[pos[name]] = e
            terms[tuple(new)] = vec
        return CycloScalar(self.conductor, terms, symbols)

    def _align(self, other):
        n = self.conductor
        if other.conductor != n:
            n = math.lcm(n, other.conductor)
        a, b = self.lift(n), other.lift(n)
        if a.symbols != b.symbols:
            merged = _merge_symbols(a.symbols, b.symbols)
            a, b = a.with_symbols(merged), b.with_symbols(merged)
        return a, b

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other, self.conductor)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        if not b._terms:
            return a
        if not a._terms:
            return b
        terms = dict(a._terms)
        for key, vec in b._terms.items():
            if key not in terms:
                terms[key] = vec
                continue
            acc = dict(terms[key])
            for e, c in vec.items():
                acc[e] = acc.get(e, 0) + c
            acc = {e: _norm(c) for e, c in acc.items() if c}
            if acc:
                terms[key] = acc
            else:
                del terms[key]
        return CycloScalar(a.conductor, terms, a.symbols)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(
            self.conductor,
            {k: {e: -c for e, c in v.items()} for k, v in self._terms.items()},
            self.symbols,
        )

    def __sub__(self, other):
        other = self._coerce(other, self.conductor)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloScalar):
            c = _norm(Fraction(other))
            if not c:
                return CycloScalar(self.conductor, {}, self.symbols)
            if c == 1:
                return self
            return CycloScalar(
                self.conductor,
                {k: {e: _norm(x * c) for e, x in v.items()} for k, v in self._terms.items()},
                self.symbols,
            )
        if not isinstance(other, CycloScalar):
            return NotImplemented
        a, b = self._align(other)
        if not a._terms or not b._terms:
            return CycloScalar(a.conductor, {}, a.symbols)
        orders = [o for _, o in a.symbols]
        raw: dict = {}
        for ka, va in a._terms.items():
            for kb, vb in b._terms.items():
                key = tuple((x + y) % o for x, y, o in zip(ka, kb, orders))
                acc = raw.setdefault(key, {})
                for ea, ca in va.items():
                    for eb, cb in vb.items():
                        e = ea + eb
                        acc[e] = acc.get(e, 0) + ca * cb
        return CycloScalar._from_raw(a.conductor, a.symbols, raw)

    __rmul__ = __mul__

    def inverse(self) -> CycloScalar:
        if not self._terms:
            raise DivisionByZero("division by zero in Q(zeta_N)")
        if len(self._terms) > 1:
            raise NonUnitDivisor("divisor has more than one unit-symbol term")
        (key, vec), = self._terms.items()
        inv_key = tuple(-e for e in key)
        if len(vec) == 1:
            (e, c), = vec.items()
            inv = _reduce(self.conductor, {-e: Fraction(1) / c})
        else:
            hit = _root_vectors(self.conductor).get(frozenset(vec.items()))
            if hit is not None:
                sign, e = hit
                inv = _reduce(self.conductor, {-e: sign})
            else:
                inv = _poly_ext_inverse(self.conductor, vec)
        return CycloScalar._from_raw(self.conductor, self.symbols, {inv_key: inv})

    def __truediv__(self, other):
        other = self._coerce(other, self.conductor)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        if len(base._terms) == 1:
            (key, vec), = base._terms.items()
            if len(vec) == 1:
                (e, c), = vec.items()
                orders = [o for _, o in base.symbols]
                return CycloScalar._from_raw(
                    base.conductor,
                    base.symbols,
                    {tuple(x * k % o for x, o in zip(key, orders)): {e * k: Fraction(c) ** k}},
                )
        result = CycloScalar.one(base.conductor).with_symbols(base.symbols)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates and comparisons ------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self) -> bool:
        if not self._terms:
            return True
        if set(self._terms) != {tuple(0 for _ in self.symbols)}:
            return False
        vec = next(iter(self._terms.values()))
        return set(vec) == {0}

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        if not self._terms:
            return Fraction(0)
        return Fraction(next(iter(self._terms.values()))[0])

    def free_symbols(self) -> tuple[str, ...]:
        used = set()
        for key in self._terms:
            for (name, _), e in zip(self.symbols, key):
                if e:
                    used.add(name)
        return tuple(sorted(used))

    def drop_unused_symbols(self) -> CycloScalar:
        used = self.free_symbols()
        if len(used) == len(self.symbols):
            return self
        keep = [i for i, (name, _) in enumerate(self.symbols) if name in used]
        terms = {tuple(k[i] for i in keep): v for k, v in self._terms.items()}
        return CycloScalar(self.conductor, terms, tuple(self.symbols[i] for i in keep))

    def __eq__(self, other):
        other = self._coerce(other, self.conductor)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        return a._terms == b._terms

    def __hash__(self):
        if self._hash is None:
            s = self.drop_unused_symbols()
            if s.is_rational():
                self._hash = hash(s.as_rational())
            else:
                self._hash = hash(
                    (s.conductor, s.symbols, frozenset((k, frozenset(v.items())) for k, v in s._terms.items()))
                )
        return self._hash

    def multiplicative_order(self):
        """Order of a root of unity, or None if the element is not one."""
        if self.free_symbols() or not self._terms:
            return None
        n = self.conductor
        p = self.drop_unused_symbols()
        hit = _root_orders(n).get(p)
        if hit is not None:
            return hit
        limit = n if n % 2 == 0 else 2 * n
        one = CycloScalar.one(n)
        cur = p
        for k in range(1, limit + 1):
            if cur == one:
                return k
            cur = cur * p
        return None

    def substitute(self, name: str, value: CycloScalar) -> CycloScalar:
        names = [s for s, _ in self.symbols]
        if name not in names:
            raise UnknownSymbol(name)
        idx = names.index(name)
        order = self.symbols[idx][1]
        value = self._coerce(value, self.conductor)
        if value.free_symbols():
            raise OrderMismatch("substituted value must be a concrete root of unity")
        if value ** order != 1:
            raise OrderMismatch(f"value's order does not divide the declared order {order} of {name}")
        rest = tuple(s for s in self.symbols if s[0] != name)
        out = CycloScalar.zero(self.conductor).with_symbols(rest) if rest else CycloScalar.zero(self.conductor)
        powers = {}
        for key, vec in self._terms.items():
            e = key[idx]
            if e not in powers:
                powers[e] = value ** e
            new_key = key[:idx] + key[idx + 1 :]
            piece = CycloScalar(self.conductor, {new_key: vec}, rest)
            out = out + piece * powers[e]
        return out

    # -- rendering ----------------------------------------------------------

    def monomials(self):
        """Yield (zeta_power, symbol_exponents, coefficient) in canonical order."""
        items = []
        for key, vec in self._terms.items():
            for e, c in vec.items():
                items.append((e, key, c))
        items.sort(key=lambda t: (t[0], t[1]))
        return items

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, key, c in self.monomials():
            factors = []
            if e:
                factors.append(f"zeta{self.conductor}^{e}")
            for (name, _), x in zip(self.symbols, key):
                if x:
                    factors.append(f"{name}^{x}")
            c = Fraction(c)
            if not factors:
                text = str(c)
            elif c == 1:
                text = "*".join(factors)
            elif c == -1:
                text = "-" + "*".join(factors)
            else:
                text = f"{c}*" + "*".join(factors)
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"CycloScalar({self.render()!r}, N={self.conductor})"


@lru_cache(maxsize=None)
def _root_vectors(n: int) -> dict:
    """Power-basis vectors of +-zeta_n^e, mapped to (sign, e)."""
    out = {}
    for e in range(n):
        for sign in (1, -1):
            out.setdefault(frozenset(_reduce(n, {e: sign}).items()), (sign, e))
    return out


@lru_cache(maxsize=None)
def _root_orders(n: int) -> dict:
    """Every root of unity expressible with conductor n, mapped to its order."""
    out = {}
    for e in range(n):
        z = CycloScalar.root(n, e)
        k = n // math.gcd(e, n)
        out[z] = k
        if k % 2:
            neg = 2 * k
        elif k % 4 == 2:
            neg = k // 2
        else:
            neg = k
        out.setdefault(-z, neg)
    return out


def _solve_in_span(n, basis_vecs, target):
    """Solve sum_i x_i * basis_i = target over Q (sparse dict vectors)."""
    deg = euler_phi(n)
    cols = len(basis_vecs)
    rows = [[Fraction(basis_vecs[j].get(r, 0)) for j in range(cols)] + [Fraction(target.get(r, 0))] for r in range(deg)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, deg) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(deg):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][-1] for i in range(r, deg)):
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def field_arithmetic(a: CycloScalar, b: CycloScalar, op: str) -> CycloScalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: CycloScalar) -> bool:
    return a.is_zero()


def substitute_unit(a: CycloScalar, symbol: str, value: CycloScalar) -> CycloScalar:
    return a.substitute(symbol, value)
