import json
from fractions import Fraction

import pytest

from biweier import cli, report
from biweier.bipoly import Point
from biweier.report import (
    AnalysisReport,
    analyze_rational,
    decode_point,
    decode_scalar,
    encode_point,
    encode_scalar,
    factored_text,
    point_text,
)
from biweier.wronskian import FormulaCheck
from helpers import CURVE32_F, curve32, golden_param, sqrt6_field

P32 = "-s*t+t^2; s^2; t^3; s^3"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def rep32():
    return analyze_rational(curve32())


# --- encoding -------------------------------------------------------------------


def test_scalar_roundtrip():
    for x in (Fraction(-3, 7), golden_param(), sqrt6_field() * 5 - 2):
        assert decode_scalar(json.loads(json.dumps(encode_scalar(x)))) == x


def test_algebraic_scalar_fields():
    e = encode_scalar(golden_param())
    assert e["min_poly"] == "z^2 - 8/5*z + 2/5"
    assert e["value"] == "4/5 + 1/5*sqrt(6)"
    assert e["approx"].startswith("1.289")


def test_point_encoding():
    p = Point.of(Fraction(-1, 4), 1, Fraction(1, 8), 1)
    assert point_text(p) == "(-1:4;1:8)"
    assert decode_point(encode_point(p)).same_as(p)
    q = curve32()(Fraction(1), golden_param())
    assert decode_point(json.loads(json.dumps(encode_point(q)))).same_as(q)


def test_factored_text():
    assert factored_text(curve32_xi11()) == "-77760*s^4*t^2*(2*s^2 - 8*s*t + 5*t^2)"


def curve32_xi11():
    from biweier.wronskian import xi

    return xi(curve32(), (1, 1))


# --- reports --------------------------------------------------------------------------


def test_report_roundtrip(rep32):
    back = AnalysisReport.from_json(rep32.to_json())
    assert back == rep32
    assert back.to_json() == rep32.to_json()


def test_report_matches_table(rep32):
    rows = {r["point"]["text"]: (r["count"], r["delta"], tuple(r["weights"].values())) for r in rep32.points}
    assert rows["(1:0;1:0)"] == (1, 1, (1, 2, 4))
    assert rows["(-1:4;1:8)"] == (1, 0, (1, 0, 0))
    assert rows["(0:1;0:1)"] == (1, 0, (0, 2, 2))
    assert rows["(-1:1;-1:1)"] == (1, 1, (0, 0, 0))
    (alg,) = [v for k, v in rows.items() if "sqrt" in k]
    assert alg == (2, 0, (0, 0, 1))
    assert not rep32.failed
    assert rep32.systems["1,1"]["factored"] == "-77760*s^4*t^2*(2*s^2 - 8*s*t + 5*t^2)"


# --- CLI ----------------------------------------------------------------------------------


def test_cli_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--param", P32)
    assert code == 0
    data = json.loads(out)
    assert data["curve"]["implicit"] == CURVE32_F
    assert all(c["ok"] for c in data["checks"])


def test_cli_analyze_table(capsys):
    code, out, _ = run(capsys, "analyze", "--param", P32, "--table")
    assert code == 0 and "xi(1,1) = -77760*s^4*t^2*(2*s^2 - 8*s*t + 5*t^2)" in out


def test_cli_analyze_extra_system(capsys):
    code, out, _ = run(capsys, "analyze", "--param", "s^3;t^3;s^2;t^2", "--system", "1,1", "--system", "2,1")
    data = json.loads(out)
    assert code == 0
    assert data["systems"]["1,1"]["factored"] == "388800*s^4*t^4"
    assert data["systems"]["2,1"]["degree"] == 18


def test_cli_analyze_implicit_without_data(capsys):
    code, out, _ = run(capsys, "analyze", "--implicit", "x0^2*y1^3 - x1^2*y0^3", "--type", "2,3")
    data = json.loads(out)
    assert code == 0
    assert data["hessians"]["mixed"] == "x0*x1*y0^2*y1^2"
    assert any("singularity data required" in w for w in data["warnings"])


def test_cli_analyze_implicit_with_data(capsys, tmp_path):
    sing = {
        "points": [
            {"point": ["1", "0", "1", "0"], "delta": 1, "branches": [{"m": 2, "tangent_fiber": "y", "l": 3, "c": None}]},
            {"point": ["-1", "1", "-1", "1"], "delta": 1, "branches": [{"m": 1, "tangent_fiber": None, "l": 1, "c": 3}] * 2},
        ]
    }
    path = tmp_path / "sing.json"
    path.write_text(json.dumps(sing))
    code, out, _ = run(capsys, "analyze", "--implicit", CURVE32_F, "--type", "3,2", "--singularities", str(path))
    data = json.loads(out)
    assert code == 0
    assert data["curve"]["genus"] == 0
    assert data["systems"]["1,0"]["count_smooth"] == 1
    assert data["systems"]["0,1"]["count_smooth"] == 2
    # the smooth tangent-fiber point (0:1;0:1) carries weight 2 and is not subtracted here
    assert data["systems"]["1,1"]["count_smooth"] == 4


def test_cli_exit_code_two_on_failed_check(capsys, monkeypatch):
    real = report.formula_checks
    monkeypatch.setattr(report, "formula_checks", lambda C, t: real(C, t) + [FormulaCheck("forced", 1, 2)])
    code, out, _ = run(capsys, "analyze", "--param", P32, "--table")
    assert code == 2 and "[FAIL] forced" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("analyze", "--implicit", "x0*y0 +", "--type", "1,1"),
        ("analyze", "--implicit", "(x0*y1 - x1*y0)^2", "--type", "2,2"),
        ("analyze", "--param", "s; t; s"),
        ("analyze", "--param", "s*t; s*t; s; t"),
        ("analyze", "--implicit", "x0*y0", "--type", "x"),
        ("analyze",),
        ("analyze", "--bogus"),
        ("osculate", "--param", P32),
        ("osculate", "--param", P32, "--at", "0:1"),
        ("plot", "--param", P32, "--chart", "2,1", "--out", "/dev/null"),
    ],
)
def test_cli_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "biweier: error:" in err


def test_cli_osculate_refusal_cites_convention(capsys):
    _, _, err = run(capsys, "osculate", "--param", P32, "--at", "0:1")
    assert "Weierstrass point by convention" in err


def test_cli_osculate_golden(capsys):
    code, out, _ = run(capsys, "osculate", "--param", P32, "--at", "1 : 4/5+sqrt(6)/5", "--system", "1,1")
    data = json.loads(out)
    assert code == 0
    assert data["contact"] == 4 and data["weierstrass"] and data["r"] == 3
    r6 = sqrt6_field()
    gold = [Fraction(3125), r6 * 21000 + 51500, -(r6 * 7500 + 17500), r6 * 7344 + 17996]
    got = [decode_scalar(data["coefficients"][k]) for k in ("x0*y0", "x0*y1", "x1*y0", "x1*y1")]
    assert all(g * gold[0] == w for g, w in zip(got, gold))


def test_cli_osculate_fiber(capsys):
    code, out, _ = run(capsys, "osculate", "--param", P32, "--at", "2:1", "--system", "1,0")
    data = json.loads(out)
    assert code == 0 and data["curve"] == "x0 + 1/4*x1" and data["contact"] == 2


def test_cli_osculate_implicit(capsys):
    code, out, _ = run(capsys, "osculate", "--implicit", CURVE32_F, "--type", "3,2", "--at", "-1:4;1:8", "--system", "1,1")
    data = json.loads(out)
    assert code == 0 and data["contact"] == 3 and not data["weierstrass"]


def test_cli_hessian(capsys):
    code, out, _ = run(capsys, "hessian", "--param", P32, "--which", "1,0")
    assert code == 0
    assert json.loads(out)["1,0"] == "4*x0^3*x1^3 + 9*x0^2*x1^4 + 6*x0*x1^5 + x1^6"


def test_cli_check_conjectures(capsys):
    code, out, _ = run(capsys, "check-conjectures", "--param", P32)
    data = json.loads(out)
    assert code == 0
    assert data["mixed Hessian attribution"]["total"] == 14
    assert data["mixed Hessian attribution"]["evidence"] == "consistent"


def test_cli_plot(capsys, tmp_path):
    out_file = tmp_path / "c.svg"
    code, _, _ = run(capsys, "plot", "--param", P32, "--chart", "1,1", "--out", str(out_file))
    svg = out_file.read_text()
    assert code == 0 and svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") >= 1
    assert "(-1:4;1:8)" in svg and "delta=1" in svg


def test_cli_plot_family_marks_only_cusps(capsys, tmp_path):
    out_file = tmp_path / "f.svg"
    code, _, _ = run(capsys, "plot", "--param", "s^3;t^3;s^2;t^2", "--out", str(out_file))
    svg = out_file.read_text()
    assert code == 0
    assert svg.count("delta=") == 2
    assert "circle" not in svg and "polygon" not in svg
