import io
import json
import subprocess
import sys

import pytest

from hopfgalois import __version__
from hopfgalois.atlas import atlas_data
from hopfgalois.cli import run_command
from hopfgalois.datumfile import render_datum

from conftest import DATA


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    text = out.getvalue()
    report = json.loads(text) if text.startswith("{") else text
    return code, report, err.getvalue()


def strip_timing(report):
    report = dict(report)
    report.pop("timing")
    return report


def test_check_h55():
    code, rep, _ = run("check", str(DATA / "h55.datum"))
    assert code == 0
    assert rep["schema"] == "hopfgalois.report/1"
    assert rep["tool_version"] == __version__
    assert rep["input_digest"].startswith("sha256:")
    assert rep["result"]["status"] == "GALOIS_THEORETICAL"
    assert all(r["is_zero"] for r in rep["result"]["relations"])


def test_check_graded_uqsl2():
    code, rep, _ = run("check", str(DATA / "gr-uqsl2.datum"))
    assert code == 1
    (w,) = rep["result"]["witnesses"]
    assert w["q_element_canonical"] == "(-1 + zeta5^2)*1 + (1 - zeta5^2)*g^(2)"


def test_trace_lists_factors():
    code, rep, _ = run("--trace", "check", str(DATA / "h55.datum"))
    assert code == 0
    traced = [r for r in rep["result"]["relations"] if "trace" in r]
    assert traced
    assert all(t["factors"] for r in traced for t in r["trace"])


def test_twists():
    code, rep, _ = run("twists", "--type", "A", "--rank", "3", "--part", "full")
    assert code == 0 and rep["result"]["count"] == 2
    code, text, _ = run("--format", "text", "twists", "--type", "D", "--rank", "4", "--part", "full")
    assert text.strip() == "0"


def test_qshow():
    code, rep, _ = run("qshow", str(DATA / "gr-uqsl2.datum"), "--relation", "q^2*x1*x2 - x2*x1")
    assert code == 1
    assert rep["result"]["relation"]["q_element_canonical"] == "(-1 + zeta5^2)*1 + (1 - zeta5^2)*g^(2)"
    code, rep, _ = run("qshow", str(DATA / "taft5.datum"), "--relation", "pow(x1, 5)", "--method", "expand")
    assert code == 0


def test_expansion_cap_precedence(tmp_path, monkeypatch):
    text = "group = Z3\ng[1] = (1)\ng[2] = (1)\nchi[1] = [zeta3]\nchi[2] = [zeta3]\n"
    f = tmp_path / "capped.datum"
    f.write_text(text + "option expansion_cap = 5\n")
    args = ("qshow", str(f), "--relation", "pow(ad(1, x2), 3)", "--method", "expand")
    code, rep, _ = run(*args)
    assert code == 3 and rep["result"]["error"]["type"] == "ExpansionCapExceeded"
    monkeypatch.setenv("HOPF_GALOIS_EXPANSION_CAP", "1000000")
    code, rep, _ = run(*args)
    assert code == 0
    monkeypatch.setenv("HOPF_GALOIS_EXPANSION_CAP", "5")
    f.write_text(text)
    code, rep, _ = run(*args)
    assert code == 3


def test_demo_sl2():
    code, rep, _ = run("demo", "sl2", "--order", "5")
    assert code == 0
    res = rep["result"]
    assert res["images_match"] and res["verification"]["passed"]


def test_atlas():
    code, rep, _ = run("atlas")
    assert code == 0 and rep["result"]["all_pass"]
    ids = {r["id"] for r in rep["result"]["rows"]}
    assert {"h55", "gr-uqsl2", "twists-D4-full"} <= ids


def test_usage_errors():
    assert run("bogus")[0] == 64
    assert run("twists", "--type", "A")[0] == 64
    assert run()[0] == 64


def test_error_exit_code(tmp_path):
    code, rep, err = run("check", str(tmp_path / "missing.datum"))
    assert code == 3 and "error" in rep["result"]
    bad = tmp_path / "bad.datum"
    bad.write_text("group = Z5\ng[1] = (1)\nchi[1] = [zeta4]\n")
    code, rep, err = run("check", str(bad))
    assert code == 3
    assert rep["result"]["error"]["line"] == 3
    assert "DatumSemanticError" in err


def test_reports_are_deterministic():
    a = run("check", str(DATA / "h77.datum"))[1]
    b = run("check", str(DATA / "h77.datum"))[1]
    assert strip_timing(a) == strip_timing(b)
    a = json.dumps(strip_timing(run("atlas")[1]), sort_keys=True)
    b = json.dumps(strip_timing(run("atlas")[1]), sort_keys=True)
    assert a == b


@pytest.mark.parametrize("row", atlas_data(), ids=lambda r: r[0])
def test_exit_code_contract_over_atlas(row, tmp_path):
    rid, _, item, expected = row
    f = tmp_path / f"{rid}.datum"
    f.write_text(render_datum(item))
    cmd = "check" if getattr(item, "relations", None) else "classify"
    code, rep, _ = run(cmd, str(f))
    assert code == expected.exit_code
    assert rep["exit_code"] == code
    assert rep["result"]["status"] == expected.value


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfgalois.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
