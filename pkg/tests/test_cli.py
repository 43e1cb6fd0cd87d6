import json
import subprocess
import sys

import pytest

from pseudoiso.cli import CURVE_COLUMNS, main, parse_grid, parse_range
from pseudoiso.mesh import read_obj
from pseudoiso.revolution import Profile, make_revolution


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_range_and_grid_parsing():
    assert parse_range("-1:2.5") == (-1.0, 2.5)
    assert parse_grid("50x40") == (50, 40)
    for bad in ("1:1", "2:1", "x"):
        with pytest.raises(ValueError):
            parse_range(bad)
    with pytest.raises(ValueError):
        parse_grid("1x5")


def test_classify_timelike(capsys):
    code, out, _ = run(capsys, "classify", "--curve", "cosh(s),sinh(s),s", "--range", "-1:1", "-n", "64")
    assert (code, out) == (0, "timelike, admissible, arc-length\n")


def test_classify_vector(capsys):
    assert run(capsys, "classify", "--vector", "0,0,1")[:2] == (0, "isotropic\n")
    assert run(capsys, "classify", "--vector", "-1,0,0")[:2] == (0, "spacelike\n")


def test_classify_lightlike(capsys):
    code, out, _ = run(capsys, "classify", "--curve", "s,s,s^3", "--range", "-1:1")
    assert (code, out) == (0, "lightlike, plane x-y=0\n")


def test_classify_mixed(capsys):
    code, _, err = run(capsys, "classify", "--curve", "s,s^2,0", "--range", "0:1")
    assert code == 2 and "MixedCausality" in err


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "classify", "--curve", "s,s,s*-", "--range", "0:1")
    assert code == 1 and "offset 2" in err
    code, _, err = run(capsys, "parse", "u^2/2 + c", "--vars", "u")
    assert code == 1 and "UnknownIdentifier" in err


def test_parse_dump(capsys):
    code, out, _ = run(capsys, "parse", "cosh(s)")
    assert code == 0
    assert out.splitlines() == ["Unary cosh", "  Variable s", "= cosh(s)"]


def _csv(out):
    lines = out.splitlines()
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]


def test_curve_constant_torsion(capsys):
    z = "3*s + 0.2*exp(s) - 0.7*exp(-s) + 1"
    code, out, _ = run(capsys, "curve", "--curve", f"cosh(s),sinh(s),{z}", "--range", "-1:1", "-n", "21")
    head, rows = _csv(out)
    assert code == 0 and tuple(head) == CURVE_COLUMNS and len(rows) == 21
    assert all(abs(float(r[5]) - 3) < 1e-9 for r in rows)


def test_curve_spacelike(capsys):
    code, out, _ = run(capsys, "curve", "--curve", "sinh(s),cosh(s),0", "-n", "5")
    _, rows = _csv(out)
    assert code == 0
    assert all(abs(float(r[4]) - 1) < 1e-12 and abs(float(r[5])) < 1e-12 for r in rows)


def test_curve_not_arclength(capsys):
    code, out, err = run(capsys, "curve", "--curve", "2*s,s,0", "-n", "5")
    assert code == 2 and out == "" and "NotArcLength" in err


def test_curve_zero_curvature_is_partial(capsys):
    code, out, _ = run(capsys, "curve", "--curve", "s,0,s^2", "-n", "3")
    _, rows = _csv(out)
    assert code == 3 and all(r[5] == "" for r in rows)


def test_curve_figure(capsys, tmp_path):
    png = tmp_path / "c.png"
    code, _, _ = run(capsys, "curve", "--curve", "cosh(s),sinh(s),s", "--out", str(tmp_path / "c.csv"),
                     "--figure", str(png))
    assert code == 0 and png.stat().st_size > 0
    assert (tmp_path / "c.csv").read_text().startswith("s,x,y,z")


def test_surface_csv(capsys):
    code, out, err = run(capsys, "surface", "--surface", "u,v,u^2-v^2", "--range", "-1:1", "--range", "-1:1",
                         "--grid", "3x3")
    head, rows = _csv(out)
    assert code == 0 and "parameter order: (u, v)" in err
    assert len(rows) == 9
    assert all((r[head.index("K")], r[head.index("H")]) == ("4", "2") for r in rows)


def test_surface_degenerate_is_partial(capsys):
    code, out, _ = run(capsys, "surface", "--surface", "u,u*v,v", "--range", "-1:1", "--range", "0:1",
                       "--grid", "3x2")
    assert code == 3
    assert out.splitlines()[3].endswith(",,")  # the u = 0 row


def test_revolve_flat(capsys, tmp_path):
    obj = tmp_path / "flat.obj"
    code, out, _ = run(capsys, "revolve", "--family", "flat", "--range", "1:2", "--range", "0:1",
                       "--grid", "6x5", "--out", str(obj))
    s = json.loads(out)
    assert code == 0
    assert list(s)[:3] == ["family", "params", "profile"]
    for key in ("grid", "K_stats", "H_stats", "max_abs_K_minus_K0", "max_abs_H_minus_H0", "max_abs_H2_minus_K"):
        assert key in s
    assert max(abs(s["K_stats"]["min"]), abs(s["K_stats"]["max"])) < 1e-9
    mesh = read_obj(obj)
    srf = make_revolution(Profile.from_expr("u", (1.0, 2.0)), (0.0, 1.0))
    assert len(mesh.vertices) == 30 and len(mesh.quads) == 20
    assert mesh.vertices[7] == srf.point(1.2, 0.5)


def test_revolve_cmc_profile(capsys):
    code, out, _ = run(capsys, "revolve", "--profile", "ln(u) + u^2", "--H0", "2", "--grid", "10x10")
    s = json.loads(out)
    assert code == 0 and s["max_abs_H_minus_H0"] < 1e-9


def test_revolve_parabolic_sphere(capsys, tmp_path):
    png = tmp_path / "p.png"
    summ = tmp_path / "p.json"
    code, out, _ = run(capsys, "revolve", "--family", "parabolic_sphere", "--c1", "2", "--summary", str(summ),
                       "--figure", str(png), "--grid", "12x12")
    s = json.loads(summ.read_text())
    assert code == 0 and out == ""
    assert s["max_abs_H2_minus_K"] < 1e-10 and png.stat().st_size > 0


def test_revolve_errors(capsys):
    assert run(capsys, "revolve", "--family", "constant_K", "--K0", "1", "--c1", "-4")[0] == 2
    assert run(capsys, "revolve", "--family", "constant_K")[0] == 2
    assert run(capsys, "revolve", "--family", "flat", "--range", "0:1")[0] == 2
    assert run(capsys, "revolve", "--family", "constant_K", "--K0", "0")[0] == 2


@pytest.mark.parametrize("fmt_name", ["obj", "csv", "json"])
def test_revolve_output_is_deterministic(capsys, tmp_path, fmt_name):
    outs = []
    for i in range(2):
        path = tmp_path / f"m{i}.{fmt_name}"
        run(capsys, "revolve", "--family", "constant_K", "--K0", "-1", "--c1", "4", "--range", "0.5:1.9",
            "--grid", "7x5", "--format", fmt_name, "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "parabolic_sphere_negative_control" in out


def test_verify_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "expr")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert set(rep["checks"][0]) == {"name", "criterion", "paper_ref", "measured", "tolerance", "comparison", "pass"}
    assert err.count("PASS") == len(rep["checks"])


def test_verify_impossible_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "expr", "--tol", "1e-30")
    assert code == 4 and not json.loads(out)["passed"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pseudoiso", "classify", "--vector", "1,1,0"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "lightlike\n"
