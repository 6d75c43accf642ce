"""Line-oriented datum files.

One ``key = value`` entry per line; ``#`` starts a comment.  Keys::

    name = free text
    group = Z5 x Z5
    unit lambda order 5
    let q = zeta5^2
    g[1] = (3,0)
    chi[1] = [zeta5^-1, lambda]      # or, braiding only: q[1][2] = ...
    cartan = [[2,-2],[-1,2]]
    alpha[1] = 0
    lambda[1][2] = zeta5^2
    relation = q^2*x1*x2 - x2*x1     # repeatable; replaces the automatic list
    action.vars = 1
    action.g[1] = [q^-2]
    action.w[1] = (1-q^-2)^-1 * z1^-1
    option expansion_cap = 100000
    option degree_bound = 10
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .cyclotomic import CycloScalar
from .errors import DatumSemanticError, DatumSyntaxError, HopfGaloisError
from .expr import Env, PowerRelation, parse_expression, parse_relation, parse_scalar
from .field_action import ActionSpec, LaurentPoly
from .group import Character, FiniteAbelianGroup
from .hopf_datum import HopfDatum, LiftingData
from .relations import NcPolynomial

__all__ = ["DatumFile", "parse_datum_file", "render_datum"]

_OPTIONS = {"expansion_cap", "degree_bound"}

_LINE = re.compile(
    r"""^\s*(?:
        (?P<unit>unit)\s+(?P<uname>[A-Za-z_]\w*)\s+order\s+(?P<uorder>\d+)\s*$
      | (?P<let>let)\s+(?P<lname>[A-Za-z_]\w*)\s*=(?P<lval>.*)$
      | (?P<option>option)\s+(?P<oname>\w+)\s*=\s*(?P<oval>.*?)\s*$
      | (?P<key>[A-Za-z_][\w.]*)(?P<idx>(?:\[\s*-?\d+\s*\])*)\s*=(?P<val>.*)$
    )""",
    re.VERBOSE,
)


@dataclass
class DatumFile:
    datum: HopfDatum
    action: ActionSpec | None = None
    relations: list[tuple[str, object]] = field(default_factory=list)
    options: dict[str, int] = field(default_factory=dict)
    constants: dict[str, CycloScalar] = field(default_factory=dict)  # ``let`` names

    def relation_items(self) -> list[tuple]:
        """Explicit relations in the form ``check_graded`` accepts."""
        out = []
        for label, rel in self.relations:
            if isinstance(rel, PowerRelation):
                out.append((label, rel.base, rel.exponent, True))
            else:
                out.append((label, rel))
        return out


@dataclass
class _Entry:
    key: str
    idx: tuple[int, ...]
    value: str
    line: int
    col: int  # 0-based offset of the value within its line
    key_col: int = 0


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _split_list(text: str, offset: int, line: int, open_: str, close: str) -> list[tuple[str, int]]:
    """Top-level comma-separated items of ``open_ ... close``, with offsets."""
    s = text.rstrip()
    lead = len(s) - len(s.lstrip())
    s = s.strip()
    if not (s.startswith(open_) and s.endswith(close)):
        raise DatumSyntaxError(f"expected {open_}...{close}", line, offset + lead + 1)
    body_start = offset + lead + 1
    body = s[1:-1]
    items, depth, start = [], 0, 0
    for k, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append((body[start:k], body_start + start))
            start = k + 1
    if body.strip():
        items.append((body[start:], body_start + start))
    for piece, col in items:
        if not piece.strip():
            raise DatumSyntaxError("empty list item", line, col + 1)
    return items


def _parse_group(entry: _Entry) -> FiniteAbelianGroup:
    parts = [p.strip() for p in entry.value.split(" x ")]
    orders = []
    for p in parts:
        m = re.fullmatch(r"Z(\d+)", p)
        if not m or int(m.group(1)) < 1:
            raise DatumSyntaxError(f"bad cyclic factor {p!r} (write Z<n>)", entry.line, entry.col + 1)
        orders.append(int(m.group(1)))
    if orders == [1]:
        orders = []
    return FiniteAbelianGroup(tuple(orders))


def _scalar(text: str, col: int, line: int, env: Env) -> CycloScalar:
    env.line, env.offset = line, col
    return parse_scalar(text, env)


def _collect(text: str):
    entries: dict[tuple[str, tuple[int, ...]], _Entry] = {}
    units, lets, options, relations = [], [], {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _LINE.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise DatumSyntaxError("cannot parse line", lineno, col)
        if m.group("unit"):
            units.append((m.group("uname"), int(m.group("uorder")), lineno))
        elif m.group("let"):
            lets.append((m.group("lname"), m.group("lval"), lineno, m.start("lval")))
        elif m.group("option"):
            name = m.group("oname")
            if name not in _OPTIONS:
                raise DatumSyntaxError(f"unknown option {name!r}", lineno, m.start("oname") + 1)
            if not re.fullmatch(r"\d+", m.group("oval")):
                raise DatumSyntaxError("option values are positive integers", lineno, m.start("oval") + 1)
            options[name] = int(m.group("oval"))
        else:
            key = m.group("key")
            idx = tuple(int(x) for x in re.findall(r"-?\d+", m.group("idx")))
            e = _Entry(key, idx, m.group("val"), lineno, m.start("val"), m.start("key"))
            if key == "relation" and not idx:
                relations.append(e)
                continue
            if (key, idx) in entries:
                raise DatumSyntaxError(f"duplicate entry {key}{m.group('idx')}", lineno, m.start("key") + 1)
            entries[(key, idx)] = e
    return entries, units, lets, options, relations


_SHAPES = {
    "name": 0, "group": 0, "cartan": 0, "g": 1, "chi": 1, "q": 2, "alpha": 1, "lambda": 2,
    "action.vars": 0, "action.g": 1, "action.w": 1,
}


def _indexed(entries, key) -> dict[tuple[int, ...], _Entry]:
    return {idx: e for (k, idx), e in entries.items() if k == key}


def parse_datum_file(text: str) -> DatumFile:
    """Parse a datum file; errors carry the offending line and column."""
    entries, units, lets, options, relation_entries = _collect(text)
    for (key, idx), e in entries.items():
        if key not in _SHAPES:
            raise DatumSyntaxError(f"unknown key {key!r}", e.line, e.key_col + 1)
        if len(idx) != _SHAPES[key]:
            raise DatumSyntaxError(f"{key} takes {_SHAPES[key]} index(es)", e.line, e.key_col + 1)
        if any(i < 1 for i in idx):
            raise DatumSyntaxError("indices start at 1", e.line, e.key_col + 1)

    if ("group", ()) not in entries:
        raise DatumSyntaxError("missing 'group' entry", 1, 1)
    G = _parse_group(entries[("group", ())])

    env = Env()
    for name, order, lineno in units:
        if order < 1:
            raise DatumSemanticError("unit order must be positive", lineno, 1)
        if name in env.symbols or re.fullmatch(r"zeta\d+|[zx]\d+", name):
            raise DatumSemanticError(f"unit name {name!r} is reserved or repeated", lineno, 1)
        env.symbols[name] = order
    for name, value, lineno, col in lets:
        if env.scalar(name) is not None:
            raise DatumSemanticError(f"name {name!r} is already defined", lineno, 1)
        env.constants[name] = _scalar(value, col, lineno, env)

    gs = _indexed(entries, "g")
    chis = _indexed(entries, "chi")
    qs = _indexed(entries, "q")
    alphas = _indexed(entries, "alpha")
    lambdas = _indexed(entries, "lambda")
    ws = _indexed(entries, "action.w")
    theta = max(
        [i[0] for i in list(gs) + list(chis) + list(alphas) + list(ws)]
        + [max(i) for i in list(qs) + list(lambdas)]
        + [0]
    )
    if theta == 0:
        raise DatumSyntaxError("no generators: give g[1], g[2], ...", 1, 1)
    for i in range(1, theta + 1):
        if (i,) not in gs:
            ref = min((e for (k, idx), e in entries.items() if i in idx and k != "action.g"), key=lambda e: e.line)
            raise DatumSyntaxError(f"missing g[{i}] (theta is {theta})", ref.line, ref.key_col + 1)

    g = []
    for i in range(1, theta + 1):
        e = gs[(i,)]
        items = _split_list(e.value, e.col, e.line, "(", ")") if e.value.strip() != "()" else []
        if len(items) != G.rank:
            raise DatumSemanticError(f"g[{i}] needs {G.rank} exponent(s)", e.line, e.col + 1)
        exps = []
        for piece, col in items:
            if not re.fullmatch(r"\s*-?\d+\s*", piece):
                raise DatumSyntaxError("group exponents are integers", e.line, col + 1)
            exps.append(int(piece))
        g.append(G.element(tuple(exps)))

    chi = q = None
    if chis and qs:
        e = next(iter(qs.values()))
        raise DatumSemanticError("give characters chi[i] or braiding q[i][j], not both", e.line, 1)
    if chis:
        chi = []
        for i in range(1, theta + 1):
            if (i,) not in chis:
                raise DatumSyntaxError(f"missing chi[{i}]", gs[(i,)].line, 1)
            e = chis[(i,)]
            items = _split_list(e.value, e.col, e.line, "[", "]")
            if len(items) != G.rank:
                raise DatumSemanticError(f"chi[{i}] needs {G.rank} value(s)", e.line, e.col + 1)
            vals = []
            for (piece, col), m in zip(items, G.factor_orders):
                v = _scalar(piece, col, e.line, env)
                if v ** m != 1:
                    raise DatumSemanticError(
                        f"value {v.render()} is not a root of unity of order dividing {m}", e.line, col + 1
                    )
                vals.append(v)
            chi.append(Character(G, tuple(vals)))
    elif qs:
        rows = []
        for i in range(1, theta + 1):
            row = []
            for j in range(1, theta + 1):
                if (i, j) not in qs:
                    raise DatumSyntaxError(f"missing q[{i}][{j}]", max(e.line for e in qs.values()), 1)
                e = qs[(i, j)]
                row.append(_scalar(e.value, e.col, e.line, env))
            rows.append(tuple(row))
        q = tuple(rows)
    else:
        raise DatumSyntaxError("give characters chi[i] or a braiding matrix q[i][j]", 1, 1)

    cartan = None
    if ("cartan", ()) in entries:
        e = entries[("cartan", ())]
        try:
            cartan = json.loads(e.value)
            ok = isinstance(cartan, list) and all(
                isinstance(r, list) and len(r) == theta and all(isinstance(a, int) for a in r) for r in cartan
            )
        except json.JSONDecodeError:
            ok = False
        if not ok or len(cartan) != theta:
            raise DatumSyntaxError(f"cartan must be a {theta}x{theta} integer matrix", e.line, e.col + 1)

    lifting = None
    if alphas or lambdas:
        taft = []
        for i in range(1, theta + 1):
            e = alphas.get((i,))
            taft.append(_scalar(e.value, e.col, e.line, env) if e else CycloScalar.zero())
        linking = []
        for (i, j), e in sorted(lambdas.items()):
            if not i < j:
                raise DatumSemanticError("linking scalars are given for i < j only", e.line, 1)
            linking.append(((i - 1, j - 1), _scalar(e.value, e.col, e.line, env)))
        lifting = LiftingData(tuple(taft), tuple(linking))

    name = entries[("name", ())].value.strip() if ("name", ()) in entries else ""
    try:
        datum = HopfDatum(
            G, tuple(g), None if chi is None else tuple(chi), q, cartan, lifting,
            tuple(env.symbols.items()), name,
        )
    except HopfGaloisError as exc:
        raise DatumSemanticError(str(exc), 1, 1) from None

    action = _parse_action(entries, datum, env, theta)

    relations = []
    for e in relation_entries:
        renv = Env(dict(env.constants), dict(env.symbols), line=e.line, offset=e.col)
        relations.append((e.value.strip(), parse_relation(e.value, datum, renv)))
    return DatumFile(datum, action, relations, options, dict(env.constants))


def _parse_action(entries, datum: HopfDatum, env: Env, theta: int) -> ActionSpec | None:
    ag = _indexed(entries, "action.g")
    ws = _indexed(entries, "action.w")
    nv = entries.get(("action.vars", ()))
    if not (ag or ws or nv):
        return None
    if nv is None:
        e = next(iter((ag or ws).values()))
        raise DatumSyntaxError("action block needs action.vars", e.line, 1)
    if not re.fullmatch(r"\s*\d+\s*", nv.value) or int(nv.value) < 1:
        raise DatumSyntaxError("action.vars is a positive integer", nv.line, nv.col + 1)
    nvars = int(nv.value)
    G = datum.group
    rows = []
    for k in range(1, G.rank + 1):
        e = ag.get((k,))
        if e is None:
            raise DatumSyntaxError(f"missing action.g[{k}]", nv.line, 1)
        items = _split_list(e.value, e.col, e.line, "[", "]")
        if len(items) != nvars:
            raise DatumSemanticError(f"action.g[{k}] needs {nvars} value(s)", e.line, e.col + 1)
        rows.append(tuple(_scalar(p, c, e.line, env) for p, c in items))
    w = []
    wenv = Env(dict(env.constants), dict(env.symbols), nvars=nvars)
    for i in range(1, theta + 1):
        e = ws.get((i,))
        if e is None:
            raise DatumSyntaxError(f"missing action.w[{i}]", nv.line, 1)
        wenv.line, wenv.offset = e.line, e.col
        v = parse_expression(e.value, wenv)
        if isinstance(v, CycloScalar):
            v = LaurentPoly.constant(nvars, v)
        if not isinstance(v, LaurentPoly):
            raise DatumSemanticError("w[i] must be a Laurent polynomial in z1..", e.line, e.col + 1)
        w.append(v)
    return ActionSpec(datum, nvars, tuple(rows), tuple(w))


# -- rendering --------------------------------------------------------------------------------


def _laurent_text(f: LaurentPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for a in sorted(f.terms):
        mono = "".join(f"*z{j + 1}^({e})" for j, e in enumerate(a) if e)
        parts.append(f"({f.terms[a].render()}){mono}")
    return " + ".join(parts)


def _relation_text(rel) -> str:
    if isinstance(rel, PowerRelation):
        return f"pow({rel.base.render()}, {rel.exponent})"
    return rel.render()


def render_datum(df: DatumFile | HopfDatum) -> str:
    """Text that parses back to an equal datum (and action, relations, options)."""
    if isinstance(df, HopfDatum):
        df = DatumFile(df)
    d = df.datum
    out = []
    if d.name:
        out.append(f"name = {d.name}")
    out.append(f"group = {d.group.render()}")
    for name, order in d.unit_symbols:
        out.append(f"unit {name} order {order}")
    for i, gi in enumerate(d.g, start=1):
        out.append(f"g[{i}] = ({','.join(str(e) for e in gi.exponents)})")
    if d.chi is not None:
        for i, c in enumerate(d.chi, start=1):
            out.append(f"chi[{i}] = [{', '.join(v.render() for v in c.values)}]")
    else:
        for i, row in enumerate(d.q, start=1):
            for j, v in enumerate(row, start=1):
                out.append(f"q[{i}][{j}] = {v.render()}")
    if d.cartan is not None:
        out.append("cartan = " + json.dumps([list(r) for r in d.cartan], separators=(",", ",")))
    if d.lifting is not None:
        for i in range(d.theta):
            out.append(f"alpha[{i + 1}] = {d.lifting.taft(i).render()}")
        for (i, j), v in d.lifting.linking_scalars:
            out.append(f"lambda[{i + 1}][{j + 1}] = {v.render()}")
    for label, rel in df.relations:
        out.append(f"relation = {_relation_text(rel)}")
    if df.action is not None:
        a = df.action
        out.append(f"action.vars = {a.nvars}")
        for k, row in enumerate(a.g_matrix, start=1):
            out.append(f"action.g[{k}] = [{', '.join(v.render() for v in row)}]")
        for i, w in enumerate(a.w, start=1):
            out.append(f"action.w[{i}] = {_laurent_text(w)}")
    for name in sorted(df.options):
        out.append(f"option {name} = {df.options[name]}")
    return "\n".join(out) + "\n"
