import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from nccurves.cli import md_fraction, real12, run

GOLDEN = Path(__file__).parent / "golden"


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_table_matches_golden():
    code, out, _ = invoke("table", "--format", "markdown")
    assert code == 0
    assert out == (GOLDEN / "table.md").read_text(encoding="utf-8")


def test_table_json():
    code, out, _ = invoke("table")
    rows = json.loads(out)["rows"]
    assert [r["category"] for r in rows][0] == "mod(k)"
    assert rows[3]["ddim"] == "1 or 2"


def test_global_flags_before_or_after():
    assert invoke("--format", "markdown", "table") == invoke("table", "--format", "markdown")


def test_curve_report():
    code, out, _ = invoke("curve-report", '{"genus":0,"orders":[2,3,5]}')
    data = json.loads(out)
    assert code == 0
    assert data["omega_degree"] == "-1/30"
    assert data["family"] == "(2,3,5)"
    assert data["report"] == {"hdim": 1, "rdim": 1, "ddim": 1, "sdim": "1", "gldim": "1"}


def test_curve_report_markdown():
    code, out, _ = invoke("curve-report", '{"genus":0,"orders":[2,3,7]}', "--format", "markdown")
    assert code == 0 and "¹⁄₄₂" in out and "| 1 | 1 | 2 | 1 | 1 |" in out


def test_file_operand(tmp_path):
    path = tmp_path / "sig.json"
    path.write_text('{"genus": 1, "orders": []}')
    assert invoke("curve-report", f"@{path}") == invoke("curve-report", '{"genus": 1, "orders": []}')


def test_missing_file():
    code, _, err = invoke("curve-report", "@/nonexistent/sig.json")
    assert code == 2 and "cannot read" in json.loads(err)["error"]["message"]


@pytest.mark.parametrize(
    "argv",
    [
        ("curve-report", "{not json"),
        ("curve-report", '{"genus": -1, "orders": []}'),
        ("quiver-report", '{"vertices": 2, "arrows": [[0, 1], [1, 0]]}'),
        ("k-op", "add", '{"rank": 1, "degree": "0"}'),
        ("k-op", "chorb", '{"rank": 1, "degree": "1/2", "locals": [[0, 0]]}'),
        ("k-op", "slope", '{"rank": 0, "degree": "0"}'),
        ("gldim-h", '{"genus": 2, "orders": []}', "--eps", "3/2"),
        ("gldim-h", '{"genus": 2, "orders": []}', "--eps", "abc"),
        ("hn-normalize", '{"pieces": [{"rank": -1, "degree": "0"}]}'),
        ("triple-scan", "--bound", "1"),
        ("stab-check", '{"genus": 1, "orders": []}', "--bound", "0"),
    ],
)
def test_validation_errors_exit_2(argv):
    code, out, err = invoke(*argv)
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_error_names_bound():
    code, _, err = invoke("gldim-h", '{"genus": 2, "orders": []}', "--eps", "1")
    assert code == 2 and json.loads(err)["error"]["bound"] == "0 < eps < 1"


def test_quiver_report():
    code, out, _ = invoke("quiver-report", '{"vertices": 3, "arrows": [[0, 1], [1, 2]]}')
    data = json.loads(out)
    assert data["classification"]["type"] == "A3"
    assert data["report"]["sdim"] == "1/2"


def test_k_ops():
    Op = '{"rank": 1, "degree": "1/3", "locals": [[1, 0]]}'
    _, out, _ = invoke("k-op", "tensor", Op, Op)
    assert json.loads(out)["result"] == {"rank": 1, "degree": "2/3", "locals": [[0, 1]]}
    _, out, _ = invoke("k-op", "dual", Op)
    assert json.loads(out)["result"] == {"rank": 1, "degree": "-1/3", "locals": [[0, 1]]}
    _, out, _ = invoke("k-op", "add", Op, Op)
    assert json.loads(out)["result"]["rank"] == 2
    _, out, _ = invoke("k-op", "chorb", '{"rank": 1, "degree": "7/3", "locals": [[1, 0]]}',
                       "--sig", '{"genus": 0, "orders": [3]}')
    assert json.loads(out)["result"] == {"rank": 1, "coarse_degree": 2, "locals": [[1, 0]]}
    _, out, _ = invoke("k-op", "slope", '{"rank": 0, "degree": "3/2"}')
    assert json.loads(out)["result"] == "inf"


def test_chorb_signature_mismatch():
    code, _, err = invoke("k-op", "chorb", '{"rank": 1, "degree": "0", "locals": [[0]]}',
                          "--sig", '{"genus": 0, "orders": [3]}')
    assert code == 2 and json.loads(err)["error"]["type"] == "signature_mismatch"


def test_stab_check():
    code, out, _ = invoke("stab-check", '{"genus": 0, "orders": [2]}', "--bound", "2")
    assert code == 0 and json.loads(out) == {"checked": 26, "min_ratio": "1/4", "ok": True}


def test_gldim_h():
    code, out, _ = invoke("gldim-h", '{"genus":2,"orders":[]}', "--eps", "1/2", "--format", "markdown")
    assert code == 0 and out == "H = 1.000000000000\n"
    _, out, _ = invoke("gldim-h", '{"genus":0,"orders":[2,3,7]}', "--eps", "1/4")
    data = json.loads(out)
    assert data["h"] == "0.028740637647"
    assert float(data["sampled_sup_gap"]) < 0.25


def test_gldim_h_flat():
    _, out, _ = invoke("gldim-h", '{"genus":1,"orders":[]}', "--eps", "1/3")
    assert json.loads(out)["h"] == "0.000000000000"


def test_hn_normalize():
    pieces = '[{"rank":1,"degree":"2"},{"rank":1,"degree":"5"},{"rank":2,"degree":"4"},{"rank":0,"degree":"1"}]'
    code, out, _ = invoke("hn-normalize", pieces)
    data = json.loads(out)
    assert code == 0 and data["slopes"] == ["inf", "5", "2"]
    assert data["pieces"][2] == {"rank": 3, "degree": "6", "locals": []}


def test_triple_scan():
    _, out, _ = invoke("triple-scan", "--bound", "3")
    data = json.loads(out)
    assert data["count"] == 9
    assert {"triple": [2, 3, 3], "family": "(2,3,3)"} in data["triples"]


def test_order_one_points_warned_and_dropped():
    with pytest.warns(UserWarning):
        code, out, _ = invoke("curve-report", '{"genus": 0, "orders": [1, 2]}')
    assert json.loads(out)["signature"] == {"genus": 0, "orders": [2]}


def test_formatting_helpers():
    assert md_fraction(Fraction(-1, 30)) == "-¹⁄₃₀"
    assert md_fraction(Fraction(4)) == "4"
    assert md_fraction(float("inf")) == "∞"
    assert real12(1 / 3) == "0.333333333333"


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--format", "markdown"],
        ["curve-report", '{"genus":0,"orders":[2,3,5]}'],
        ["gldim-h", '{"genus":0,"orders":[2,3,7]}', "--eps", "1/4", "--seed", "7"],
        ["stab-check", '{"genus":0,"orders":[2,3]}', "--bound", "2"],
    ],
)
def test_subprocess_deterministic(argv):
    cmd = [sys.executable, "-m", "nccurves", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.stdout


def test_subprocess_exit_code():
    proc = subprocess.run([sys.executable, "-m", "nccurves", "curve-report", "{"], capture_output=True)
    assert proc.returncode == 2 and proc.stdout == b""
