"""Expression grammar shared by datum files and the command line.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT | "^" "(" ["-"] INT ")")?
    atom   := INT | NAME | NAME "(" args ")" | "(" expr ")"

Names: ``zeta<N>`` (a primitive N-th root of unity), declared unit symbols and
``let`` constants, ``z<k>`` (Laurent variables, action blocks only) and
``x<k>`` (free-algebra letters, relations only).  Relations may also use
``q(i,j)`` for braiding entries, ``ad(i, P)`` for the braided adjoint and
``pow(P, n)`` (top level only) for an n-th power relation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cyclotomic import CycloScalar
from .errors import DatumSemanticError, DatumSyntaxError, DivisionByZero, HopfGaloisError
from .relations import NcPolynomial, adjoint

__all__ = ["Env", "PowerRelation", "parse_expression", "parse_relation", "parse_scalar"]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))")


@dataclass
class Env:
    """What names mean while parsing."""

    constants: dict[str, CycloScalar] = field(default_factory=dict)
    symbols: dict[str, int] = field(default_factory=dict)  # unit symbol -> order
    nvars: int = 0  # z1..z_nvars allowed when positive
    datum: object = None  # enables x<k>, q(i,j), ad(...)
    line: int | None = None
    offset: int = 0  # column of the expression within its line

    def scalar(self, name: str) -> CycloScalar | None:
        if name in self.constants:
            return self.constants[name]
        if name in self.symbols:
            return CycloScalar.symbol(name, self.symbols[name])
        m = re.fullmatch(r"zeta(\d+)", name)
        if m and int(m.group(1)) > 0:
            return CycloScalar.root(int(m.group(1)))
        return None


@dataclass(frozen=True)
class PowerRelation:
    base: NcPolynomial
    exponent: int


def _tokenize(text: str, env: Env):
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise DatumSyntaxError(f"unexpected character {text[col - 1]!r}", env.line, env.offset + col)
        kind = m.lastgroup
        start = m.start(kind) + 1
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


# -- arithmetic over the value kinds: scalar, Laurent polynomial, free-algebra element


def _promote(a, b):
    from .field_action import LaurentPoly

    if isinstance(a, CycloScalar) and isinstance(b, LaurentPoly):
        return LaurentPoly.constant(b.nvars, a), b
    if isinstance(b, CycloScalar) and isinstance(a, LaurentPoly):
        return a, LaurentPoly.constant(a.nvars, b)
    if isinstance(a, CycloScalar) and isinstance(b, NcPolynomial):
        return NcPolynomial.constant(a), b
    if isinstance(b, CycloScalar) and isinstance(a, NcPolynomial):
        return a, NcPolynomial.constant(b)
    if type(a) is not type(b):
        raise TypeError("cannot combine Laurent variables with free-algebra letters")
    return a, b


def _mul(a, b):
    if isinstance(a, CycloScalar) and not isinstance(b, CycloScalar):
        return b.scale(a)
    if isinstance(b, CycloScalar) and not isinstance(a, CycloScalar):
        return a.scale(b)
    a, b = _promote(a, b)
    return a * b


def _power(v, k: int):
    from .field_action import LaurentPoly

    if isinstance(v, CycloScalar):
        return v ** k
    if k >= 0:
        out = v
        if k == 0:
            return LaurentPoly.constant(v.nvars, CycloScalar.one()) if isinstance(v, LaurentPoly) else NcPolynomial.constant(CycloScalar.one())
        for _ in range(k - 1):
            out = out * v
        return out
    if isinstance(v, LaurentPoly) and len(v.terms) == 1:
        (a, c), = v.terms.items()
        return LaurentPoly(v.nvars, {tuple(e * k for e in a): c ** k})
    raise TypeError("negative powers need a scalar or a single Laurent monomial")


class _Parser:
    def __init__(self, text: str, env: Env):
        self.env = env
        self.toks = _tokenize(text, env)
        self.i = 0

    # -- token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None, semantic=False):
        tok = tok or self.peek()
        cls = DatumSemanticError if semantic else DatumSyntaxError
        return cls(msg, self.env.line, self.env.offset + tok[2])

    def expect(self, value):
        t = self.peek()
        if t[1] != value or t[0] not in ("op",):
            raise self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}")
        return self.take()

    def integer(self) -> int:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        t = self.peek()
        if t[0] != "int":
            raise self.error("expected an integer")
        self.take()
        return sign * int(t[1])

    # -- grammar
    def parse(self, allow_pow: bool = False):
        if allow_pow and self.peek()[1] == "pow" and self.peek(1)[1] == "(":
            tok = self.take()
            self.take()
            base = self.expr()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            if not isinstance(base, NcPolynomial) or n < 1:
                raise self.error("pow needs a relation and a positive exponent", tok, semantic=True)
            out = PowerRelation(base, n)
        else:
            out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            w = self.term()
            a, b = _promote(v, w) if type(v) is not type(w) else (v, w)
            v = a + b if op == "+" else a - b
        return v

    def term(self):
        v = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            tok = self.take()
            w = self.unary()
            if tok[1] == "*":
                v = self._guard(lambda: _mul(v, w), tok)
            else:
                if not isinstance(w, CycloScalar):
                    raise self.error("can only divide by a scalar", tok, semantic=True)
                v = self._guard(lambda: _mul(v, w.inverse()), tok)
        return v

    def unary(self):
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+" and self.peek()[0] == "op":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[1] == "^":
            tok = self.take()
            if self.peek()[1] == "(":
                self.take()
                k = self.integer()
                self.expect(")")
            else:
                k = self.integer()
            v = self._guard(lambda: _power(v, k), tok)
        return v

    def _guard(self, fn, tok):
        try:
            return fn()
        except (DivisionByZero, ZeroDivisionError):
            raise self.error("division by zero", tok, semantic=True) from None
        except (TypeError, ValueError, HopfGaloisError) as exc:
            if isinstance(exc, DatumSyntaxError):
                raise
            raise self.error(str(exc), tok, semantic=True) from None

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return CycloScalar.rational(int(tok[1]))
        if tok[1] == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        if tok[0] != "name":
            raise self.error(f"unexpected {tok[1] or 'end of input'!r}")
        self.take()
        name = tok[1]
        if self.peek()[1] == "(":
            return self.call(name, tok)
        v = self.env.scalar(name)
        if v is not None:
            return v
        m = re.fullmatch(r"([zx])(\d+)", name)
        if m:
            k = int(m.group(2))
            if m.group(1) == "z" and 1 <= k <= self.env.nvars:
                from .field_action import LaurentPoly

                return LaurentPoly.monomial([1 if j == k - 1 else 0 for j in range(self.env.nvars)])
            if m.group(1) == "x" and self.env.datum is not None and 1 <= k <= self.env.datum.theta:
                return NcPolynomial.letter(k - 1)
            raise self.error(f"{name} is out of range here", tok, semantic=True)
        raise self.error(f"unknown name {name!r}", tok, semantic=True)

    def call(self, name, tok):
        d = self.env.datum
        if d is None or name not in ("q", "ad"):
            raise self.error(f"unknown function {name!r}", tok, semantic=name != "pow")
        self.take()
        i = self.integer()
        if not 1 <= i <= d.theta:
            raise self.error(f"index {i} out of range", tok, semantic=True)
        self.expect(",")
        if name == "q":
            j = self.integer()
            if not 1 <= j <= d.theta:
                raise self.error(f"index {j} out of range", tok, semantic=True)
            self.expect(")")
            return d.qij(i - 1, j - 1)
        P = self.expr()
        self.expect(")")
        if isinstance(P, CycloScalar):
            P = NcPolynomial.constant(P)
        if not isinstance(P, NcPolynomial):
            raise self.error("ad needs a free-algebra element", tok, semantic=True)
        return self._guard(lambda: adjoint(d, i - 1, P), tok)


def parse_expression(text: str, env: Env | None = None):
    """Parse and evaluate; the result is a scalar, Laurent polynomial or relation."""
    return _Parser(text, env or Env()).parse()


def parse_scalar(text: str, env: Env | None = None) -> CycloScalar:
    env = env or Env()
    v = parse_expression(text, env)
    if not isinstance(v, CycloScalar):
        raise DatumSemanticError("expected a scalar", env.line, env.offset + 1)
    return v


def parse_relation(text: str, datum, env: Env | None = None):
    """A relation in x1..x_theta; returns an NcPolynomial or a PowerRelation."""
    env = env or Env()
    env.datum = datum
    for name, order in datum.unit_symbols:
        env.symbols.setdefault(name, order)
    v = _Parser(text, env).parse(allow_pow=True)
    if isinstance(v, CycloScalar):
        v = NcPolynomial.constant(v)
    if not isinstance(v, (NcPolynomial, PowerRelation)):
        raise DatumSemanticError("a relation must be written in x1..x_theta", env.line, env.offset + 1)
    return v
