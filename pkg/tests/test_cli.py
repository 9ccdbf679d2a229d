import json
import shutil
import subprocess
import sys

import pytest

from polyharmonic.cli import main
from polyharmonic.radii import Family, RadiusProblem, radius


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_example1(capsys):
    code, out, _ = run(capsys, "classify", "--builtin", "EXAMPLE1")
    assert code == 0
    assert "HC margin 0.000000; max starlike order 0.285714" in out


def test_classify_identity(capsys):
    code, out, _ = run(capsys, "classify", "--builtin", "identity")
    assert code == 0
    assert "max starlike order 1.000000; max convex order 1.000000" in out


def test_classify_not_normalized(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"p": 1, "layers": [{"h": [[1, 0]], "g": [[0.5, 0]]}]}))
    code, _, err = run(capsys, "classify", "--map", str(path))
    assert code == 3 and "H_p^0" in err


def test_classify_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"p": 1,\n "layers": [')
    code, _, err = run(capsys, "classify", "--map", str(path))
    assert code == 2 and "line 2" in err


def test_missing_map_file(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", "--map", str(tmp_path / "missing.json"))
    assert code == 4


@pytest.mark.parametrize(
    "family,extra,expected",
    [
        ("starlike-koebe", [], 0.11290),
        ("convex-bounded", ["--C", "1"], 0.16488),
        ("starlike-bounded", ["--C", "1"], 0.2928932),
    ],
)
def test_radius(capsys, family, extra, expected):
    code, out, _ = run(capsys, "radius", "--family", family, "--order", "0", "--p", "1", *extra)
    assert code == 0
    line = next(s for s in out.splitlines() if s.startswith("radius "))
    assert float(line.split()[1]) == pytest.approx(expected, abs=1e-4 if expected != 0.2928932 else 1e-7)
    lo, hi = (float(x) for x in out.splitlines()[-1].strip("bracket []").split(","))
    assert 0 < hi - lo <= 1e-12


def test_radius_csv_and_table(capsys):
    code, out, _ = run(capsys, "radius", "--family", "convex-koebe", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "family,order,p,C,radius,lo,hi"
    code, out, _ = run(capsys, "radius", "--family", "convex-koebe", "--orders", "0,0.5,0.9")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert code == 0 and len(rows) == 3
    assert [float(r) for _, r in rows] == sorted((float(r) for _, r in rows), reverse=True)


@pytest.mark.parametrize(
    "argv",
    [
        ["radius", "--family", "starlike-koebe", "--order", "1.0"],
        ["radius", "--family", "convex-bounded", "--C", "-1"],
        ["radius", "--family", "convex-bounded", "--orders", "0.5,0.2"],
        ["verify", "--builtin", "F0", "--mode", "starlike", "--r", "1.2"],
        ["verify", "--builtin", "F0", "--mode", "starlike", "--r", "0.1", "--grid", "4by4"],
        ["render", "--builtin", "F0", "--r", "0.1", "--n", "8", "--out", "x.csv"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["radius", "--family", "nope"])
    assert info.value.code == 2


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "F0", "--mode", "starlike", "--r", "0.11", "--grid", "16x128")
    assert code == 0 and out.strip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--builtin", "F3", "--mode", "convex", "--r", "0.17", "--grid", "16x128")
    assert code == 1 and out.strip().endswith("FAIL")
    for mode in ("starlike", "convex"):
        for method in ("geometric", "convolution"):
            code, _, _ = run(
                capsys, "verify", "--builtin", "IDENTITY", "--mode", mode, "--order", "0.9",
                "--r", "0.95", "--grid", "8x32", "--method", method,
            )
            assert code == 0


def test_verify_convolution_witness(capsys):
    r0 = radius(RadiusProblem(Family.STARLIKE_KOEBE_BOUND, 0.0)).root
    code, out, _ = run(
        capsys, "verify", "--builtin", "F0", "--mode", "starlike", "--r", str(1.05 * r0),
        "--grid", "16x128", "--method", "convolution",
    )
    assert code == 1 and "theta=0" in out


def test_render_csv(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, _, _ = run(capsys, "render", "--builtin", "EXAMPLE1", "--r", "0.999", "--n", "64", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "theta,re,im" and len(lines) == 65
    theta, re, im = (float(x) for x in lines[1].split(","))
    assert theta == 0 and re == pytest.approx(0.8333, abs=1e-3) and im == 0


def test_render_identity_circle(capsys, tmp_path):
    out = tmp_path / "c.csv"
    run(capsys, "render", "--builtin", "IDENTITY", "--r", "0.5", "--n", "32", "--out", str(out))
    for line in out.read_text().splitlines()[1:]:
        _, re, im = (float(x) for x in line.split(","))
        assert abs(complex(re, im)) == pytest.approx(0.5, abs=1e-6)


def test_render_svg(capsys, tmp_path):
    hc = tmp_path / "a.svg"
    not_hc = tmp_path / "b.svg"
    run(capsys, "render", "--builtin", "EXAMPLE1", "--r", "0.99", "--n", "64", "--out", str(hc), "--format", "svg")
    run(capsys, "render", "--builtin", "F0", "--r", "0.11", "--n", "64", "--out", str(not_hc), "--format", "svg")
    a, b = hc.read_text(), not_hc.read_text()
    assert a.count("<path") == 1 and "<circle" in a and 'r="0.5"' in a
    assert b.count("<path") == 1 and "<circle" not in b


def test_render_unwritable(capsys, tmp_path):
    code, _, _ = run(
        capsys, "render", "--builtin", "IDENTITY", "--r", "0.5", "--n", "16",
        "--out", str(tmp_path / "no" / "such" / "dir" / "x.csv"),
    )
    assert code == 4


def test_deterministic_output(capsys, tmp_path):
    outputs = []
    for i in range(2):
        path = tmp_path / f"{i}.svg"
        run(capsys, "render", "--builtin", "F0", "--r", "0.1129", "--n", "256", "--out", str(path), "--format", "svg")
        _, out, _ = run(capsys, "verify", "--builtin", "F1", "--mode", "starlike", "--r", "0.1", "--grid", "8x64")
        _, out2, _ = run(capsys, "classify", "--builtin", "F2", "--C", "0.3")
        outputs.append((path.read_bytes(), out, out2))
    assert outputs[0] == outputs[1]


def test_console_script():
    exe = shutil.which("polyharmonic")
    cmd = [exe] if exe else [sys.executable, "-m", "polyharmonic.cli"]
    proc = subprocess.run(cmd + ["radius", "--family", "starlike-bounded"], capture_output=True, text=True)
    assert proc.returncode == 0 and "radius 0.292893218813" in proc.stdout
