"""Command-line front end.

Every command writes one JSON report to standard output (or a short text
summary with ``--format text``); diagnostics go to standard error.  Exit codes:
0 Galois-theoretical / success, 1 not Galois-theoretical / failed check,
2 out of scope, 3 error, 64 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .atlas import atlas_report, render_table
from .classifier import Verdict, auto_relations, check_graded, classify, count_twists
from .datumfile import DatumFile, parse_datum_file
from .errors import DatumSyntaxError, HopfGaloisError
from .expr import Env, PowerRelation, parse_relation
from .field_action import build_action, check_linear_independence, sl2_demo, verify_relations_on_basis
from .relations import NcPolynomial, QResult, expansion_cap, monomial_factors, power_relation_Q, relation_Q

__all__ = ["main", "run_command"]

REPORT_SCHEMA = "hopfgalois.report/1"
EXIT_OK, EXIT_NOT, EXIT_OOS, EXIT_ERROR, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfgalois", description="Decide the Galois-theoretical property of pointed Hopf algebras.")
    p.add_argument("--version", action="version", version=f"hopfgalois {__version__}")
    p.add_argument("--format", choices=("json", "text"), default="json", help="report format on stdout")
    p.add_argument("--trace", action="store_true", help="include per-monomial Q factors")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", help="compute Q for every defining relation")
    c.add_argument("file")
    c = sub.add_parser("classify", help="structural classification (lifted if the file has lifting data)")
    c.add_argument("file")
    c = sub.add_parser("qshow", help="print one Q element canonically")
    c.add_argument("file")
    c.add_argument("--relation", required=True, help="e.g. 'x1*x2 - q(2,1)*x2*x1' or 'pow(ad(1,x2),5)'")
    c.add_argument("--method", choices=("auto", "lemma", "characters", "twisted", "expand"), default="auto")
    c = sub.add_parser("demo", help="built-in demonstrations")
    c.add_argument("which", choices=("sl2",))
    c.add_argument("--order", type=int, default=3, help="order m of q (odd, >= 3)")
    c.add_argument("--degree-bound", type=int, default=10)
    c = sub.add_parser("twists", help="count Reshetikhin twists of a small quantum group")
    c.add_argument("--type", dest="letter", required=True)
    c.add_argument("--rank", type=int, required=True)
    c.add_argument("--part", choices=("borel", "full"), required=True)
    sub.add_parser("atlas", help="run the built-in catalog of worked examples")
    return p


# -- helpers ----------------------------------------------------------------------------


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _trace(d, P: NcPolynomial) -> list[dict]:
    out = []
    for w in sorted(P.terms, key=lambda w: (len(w), w)):
        out.append({
            "word": "*".join(f"x{j + 1}" for j in w),
            "coefficient": P.terms[w].render(),
            "factors": [f"(1 - ({lam.render()})*g{j + 1})" for lam, j in monomial_factors(d, w)],
        })
    return out


def _load(path: str) -> tuple[DatumFile, bytes]:
    data = Path(path).read_bytes()
    return parse_datum_file(data.decode("utf-8")), data


def _verdict_result(v: Verdict, d, trace: bool, bases=None) -> dict:
    out = v.to_json(include_results=True)
    if trace and bases:
        for r in out["relations"]:
            base = bases.get(r["relation_id"])
            if base is not None:
                r["trace"] = _trace(d, base)
    return out


def _bases(items) -> dict:
    return {it[0]: it[1] for it in items}


# -- commands ------------------------------------------------------------------------------


def _cmd_check(args):
    df, data = _load(args.file)
    d = df.datum
    if df.relations:
        items = df.relation_items()
        v = check_graded(d, items)
    else:
        v = check_graded(d)
        items = []
        if args.trace:
            concrete = d.instantiate(d.admissible_instantiations()[0]) if d.unit_symbols else d
            items = list(auto_relations(concrete))
    result = _verdict_result(v, d, args.trace, _bases(items))
    if df.action is not None:
        result["field_action"] = _action_check(df)
    return v.status.exit_code, result, data


def _action_check(df: DatumFile) -> dict:
    action = build_action(df.action)
    bound = df.options.get("degree_bound", 10)
    rels = [(lbl, r.base.power(r.exponent) if isinstance(r, PowerRelation) else r) for lbl, r in df.relations]
    report = verify_relations_on_basis(action, rels, bound) if rels else None
    return {
        "degree_bound": bound,
        "relations": report.to_json() if report else None,
        "linear_independence": check_linear_independence(action),
    }


def _cmd_classify(args):
    df, data = _load(args.file)
    v = classify(df.datum)
    return v.status.exit_code, _verdict_result(v, df.datum, False), data


def _cmd_qshow(args):
    df, data = _load(args.file)
    d = df.datum
    rel = parse_relation(args.relation, d, Env(dict(df.constants), dict(d.unit_symbols)))
    if isinstance(rel, PowerRelation):
        # the environment variable beats the file option, which beats the default
        cap = expansion_cap()
        if "HOPF_GALOIS_EXPANSION_CAP" not in os.environ and "expansion_cap" in df.options:
            cap = df.options["expansion_cap"]
        r: QResult = power_relation_Q(d, rel.base, rel.exponent, args.relation, args.method, cap=cap)
        base = rel.base
    else:
        r = relation_Q(d, rel, args.relation)
        base = rel
    result = {"relation": r.to_json()}
    if args.trace:
        result["trace"] = _trace(d, base)
    data += b"\0" + args.relation.encode() + b"\0" + args.method.encode()
    return (EXIT_OK if r.is_zero else EXIT_NOT), result, data


def _cmd_demo(args):
    demo = sl2_demo(args.order)
    report = verify_relations_on_basis(demo.action, demo.relations, args.degree_bound)
    images, expected = demo.generator_images(), demo.expected_images()
    result = {
        "demo": "sl2",
        "order": args.order,
        "generator_images": {k: v.render() for k, v in images.items()},
        "images_match": all(images[k] == expected[k] for k in expected),
        "verification": report.to_json(),
        "linear_independence": check_linear_independence(demo.action),
    }
    ok = result["images_match"] and report.passed
    return (EXIT_OK if ok else EXIT_NOT), result, f"demo sl2 {args.order} {args.degree_bound}".encode()


def _cmd_twists(args):
    t = count_twists(args.letter.upper(), args.rank, args.part)
    result = {"type": args.letter.upper(), "rank": args.rank, "part": args.part, **t.to_json()}
    return EXIT_OK, result, f"twists {args.letter.upper()} {args.rank} {args.part}".encode()


def _cmd_atlas(args):
    rows = atlas_report()
    ok = all(r.passed for r in rows)
    result = {"rows": [r.to_json() for r in rows], "all_pass": ok}
    return (EXIT_OK if ok else EXIT_NOT), result, b"atlas"


_COMMANDS = {
    "check": _cmd_check,
    "classify": _cmd_classify,
    "qshow": _cmd_qshow,
    "demo": _cmd_demo,
    "twists": _cmd_twists,
    "atlas": _cmd_atlas,
}


def _text_summary(command: str, code: int, result: dict) -> str:
    if command == "atlas":
        from .atlas import AtlasRow

        rows = [AtlasRow(r["id"], r["label"], r["expected"], r["actual"]) for r in result["rows"]]
        return render_table(rows)
    if "error" in result:
        return f"error: {result['error']['message']}"
    if "status" in result:
        lines = [f"{result['status']}: {result['case']}"]
        for w in result["witnesses"]:
            lines.append(f"  Q[{w['relation_id'] or w['relation']}] = {w['q_element_canonical']}")
        if result.get("obstruction"):
            lines.append(f"  obstruction: {result['obstruction']}")
        return "\n".join(lines)
    if "relation" in result:
        return result["relation"]["q_element_canonical"]
    if "count" in result:
        return str(result["count"])
    return json.dumps(result, sort_keys=True)


def run_command(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code and writes the report to ``stdout``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    start = time.perf_counter()
    try:
        code, result, data = _COMMANDS[args.command](args)
    except (HopfGaloisError, ValueError, OSError, UnicodeDecodeError) as exc:
        code = EXIT_ERROR
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, DatumSyntaxError):
            err["line"], err["column"] = exc.line, exc.column
        result = {"error": err}
        data = b""
        if getattr(args, "file", None):
            try:
                data = Path(args.file).read_bytes()
            except OSError:
                pass
        print(f"hopfgalois: {type(exc).__name__}: {exc}", file=stderr)
    elapsed = time.perf_counter() - start

    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "command": args.command,
        "input_digest": _digest(data),
        "exit_code": code,
        "result": result,
        "timing": {"seconds": round(elapsed, 6)},
    }
    if args.format == "json":
        stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(_text_summary(args.command, code, result) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
