import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest
from goldens import FIXTURE_MASK, MASK_M3, MASK_M4

from dualsubdiv.cli import main
from dualsubdiv.formats import data_path, laurent_from_json
from dualsubdiv.laurent import Laurent

SIX = str(data_path("six_point_samples.json"))
FIX = str(data_path("fixture_samples.json"))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def mask_file(tmp_path, symbol, m, d, name="mask.json"):
    path = tmp_path / name
    coeffs = [{"exp": k, "value": f"{symbol[k].numerator}/{symbol[k].denominator}"}
              for k in range(symbol.low, symbol.high + 1)]
    path.write_text(json.dumps({"arity": m, "d": d, "coefficients": coeffs}))
    return str(path)


def read_symbol(text):
    return laurent_from_json(json.loads(text)["coefficients"])


def test_construct_odd(tmp_path, capsys):
    out = tmp_path / "m3.json"
    code, _, _ = run(["construct", "-m", "3", "-d", "6", "-s", SIX, "-o", str(out)], capsys)
    assert code == 0
    obj = json.loads(out.read_text())
    assert len(obj["coefficients"]) == 24
    assert obj["sigma"] == "1/2" and obj["parity"] == "odd"
    code, report, _ = run(["verify", "--mask", str(out), "-s", SIX], capsys)
    assert code == 0 and json.loads(report)["all_pass"]


def test_construct_is_deterministic(capsys):
    args = ["construct", "-m", "4", "-d", "6", "-s", SIX]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b


def test_construct_with_published_homotopy(capsys):
    _, out, _ = run(["construct", "-m", "3", "-d", "6", "-s", SIX,
                     "--homotopy", str(data_path("ternary_homotopy.json"))], capsys)
    assert read_symbol(out) == MASK_M3
    _, out, _ = run(["construct", "-m", "4", "-d", "6", "-s", SIX,
                     "--homotopy", str(data_path("quaternary_homotopy.json"))], capsys)
    assert read_symbol(out) == MASK_M4
    assert len(json.loads(out)["coefficients"]) == 34


def test_bare_homotopy_list(tmp_path, capsys):
    h = tmp_path / "h.json"
    h.write_text(json.dumps([[0, "0"]]))
    code, out, _ = run(["construct", "-m", "3", "-d", "2", "-s", FIX, "--homotopy", str(h)], capsys)
    assert code == 0 and read_symbol(out) == FIXTURE_MASK


def test_fixture_construct(capsys):
    code, out, _ = run(["construct", "-m", "3", "-d", "2", "-s", FIX], capsys)
    assert code == 0 and read_symbol(out) == FIXTURE_MASK


A2_SAMPLES = [(-1, "1/4"), (0, "1/4"), (2, "1/4"), (3, "1/4")]  # phi_0 = phi_1 = (1 + z)/4
A3_SAMPLES = [(-1, "1/3"), (0, "2/3")]


@pytest.mark.parametrize("m,d,values,code", [
    (2, 6, None, 13),
    (3, 7, None, 10),
    (3, 1, A2_SAMPLES, 11),
    (4, 1, A3_SAMPLES, 12),
])
def test_exit_codes(tmp_path, capsys, m, d, values, code):
    samples = SIX
    if values is not None:
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"samples": [{"l": l, "value": v} for l, v in values]}))
        samples = str(p)
    got, _, err = run(["construct", "-m", str(m), "-d", str(d), "-s", samples], capsys)
    assert got == code
    assert "assumption" in err or "cannot converge" in err


def test_arity_two_message(capsys):
    code, _, err = run(["construct", "-m", "2", "-d", "6", "-s", SIX], capsys)
    assert code == 13
    assert "cannot converge" in err


def test_io_errors(tmp_path, capsys):
    assert run(["construct", "-m", "3", "-d", "6", "-s", str(tmp_path / "missing.json")], capsys)[0] == 30
    bad = tmp_path / "bad.json"
    bad.write_text('{"samples": [{"l": 0, "value": 0.5}]}')
    assert run(["construct", "-m", "3", "-d", "1", "-s", str(bad)], capsys)[0] == 30
    bad.write_text("not json")
    assert run(["construct", "-m", "3", "-d", "1", "-s", str(bad)], capsys)[0] == 30


@pytest.mark.parametrize("symbol,m", [(MASK_M3, 3), (MASK_M4, 4)])
def test_verify_published(tmp_path, capsys, symbol, m):
    code, out, _ = run(["verify", "--mask", mask_file(tmp_path, symbol, m, 6), "-s", SIX], capsys)
    report = json.loads(out)
    assert code == 0 and report["all_pass"]
    assert report["checks"]["reproduction"]["degree"] == 5
    assert report["convergence"]["certified"]


def test_verify_perturbed(tmp_path, capsys):
    bad = MASK_M3 + Laurent({3: F(1, 1000000)})
    code, out, _ = run(["verify", "--mask", mask_file(tmp_path, bad, 3, 6), "-s", SIX], capsys)
    report = json.loads(out)
    assert code == 1
    assert report["first_failure"] == "interpolation_system"


def test_blf_csv(tmp_path, capsys):
    path = mask_file(tmp_path, MASK_M3, 3, 6)
    code, out, _ = run(["blf", "--mask", path, "--levels", "2"], capsys)
    rows = out.strip().split("\n")
    assert code == 0 and rows[0] == "t,x,value"
    assert len(rows) == 1 + 23 * 4 + 1
    code, out, _ = run(["blf", "--mask", path, "--levels", "6", "--mode", "float", "--stride", "10"], capsys)
    assert code == 0 and float(out.split("\n")[1].split(",")[2]) == pytest.approx(0, abs=1e-12)


def test_refine_and_render(tmp_path, capsys):
    path = mask_file(tmp_path, MASK_M3, 3, 6)
    square = str(data_path("square.json"))
    code, out, _ = run(["refine", "--mask", path, "--polygon", square], capsys)
    assert code == 0 and len(out.strip().split("\n")) == 1 + 12
    svg = tmp_path / "c.svg"
    code, _, _ = run(["render", "--mask", path, "--polygon", square, "-o", str(svg)], capsys)
    root = ET.parse(svg).getroot()
    paths = root.findall("{http://www.w3.org/2000/svg}path")
    assert code == 0 and len(paths) == 2
    assert "stroke-dasharray" in paths[0].attrib


def test_render_rejects_1d_polygon(tmp_path, capsys):
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"points": [[0], [1], [2]], "closed": True}))
    code, _, _ = run(["render", "--mask", mask_file(tmp_path, MASK_M3, 3, 6), "--polygon", str(poly)], capsys)
    assert code == 30


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", "-m", "3", "-d", "2", "-s", FIX, "--window", "-3", "4", "--symmetric"], capsys)
    assert code == 0 and laurent_from_json(json.loads(out)["particular"]) == FIXTURE_MASK
    code, _, _ = run(["oracle", "-m", "3", "-d", "6", "-s", SIX, "--window", "-3", "4"], capsys)
    assert code == 20
