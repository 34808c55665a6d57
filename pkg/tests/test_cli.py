import json
import shutil
import subprocess
import sys

import pytest

from painleve6 import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_params(capsys):
    code, out, _ = run(["params", "--theta", "0", "0", "0", "4"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["alpha"][0] == 4.5 and obj["delta"][0] == 0.5


def test_fricke(capsys):
    code, out, _ = run(["fricke", "--p", "2,2,2,2,2,2,2"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["onCubic"] and obj["abs"] == format(0.0, ".15e")


def test_symmetry_point(capsys):
    code, out, _ = run(["symmetry", "--op", "swapxy", "--point", "0.5", "0.2"], capsys)
    obj = json.loads(out)
    assert code == 0 and abs(obj["y"][0] - 2.5) < 1e-15


def test_expand_then_eval(tmp_path, capsys):
    f = tmp_path / "b.json"
    code, _, _ = run(["expand", "--class", "taylor6", "--const", "a=2", "--order", "8", "--out", str(f)], capsys)
    assert code == 0 and json.loads(f.read_text())["classTag"] == "TaylorRow3"
    code, out, _ = run(["eval", "--coeffs", str(f), "--x", "0.01,0"], capsys)
    assert code == 0 and abs(json.loads(out)["value"][0] - 0.02) < 1e-3


def test_domain_csv(capsys):
    code, out, _ = run(["domain", "--sigma", "0.2,0.7", "--a", "1.3", "--samples", "5"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[1].startswith("ln_abs_x") and len(lines) == 7


def test_classify(capsys):
    code, out, _ = run(["classify", "--slope", "0", "--sigma", "0,0.8"], capsys)
    assert code == 0 and json.loads(out)["tag"] == "oscillatory"


def test_elliptic_and_halfperiods(capsys):
    code, out, _ = run(["halfperiods", "--x", "0.5"], capsys)
    obj = json.loads(out)
    assert code == 0 and abs(obj["omega2"][1] - obj["omega1"][0]) < 1e-14
    code, out, _ = run(["elliptic", "--nu1", "0.3,0.1", "--nu2", "0.6", "--theta", "0.3", "0.2", "0.4", "1.7",
                        "--x", "L:-10,0.5", "--no-domain-check", "--csv"], capsys)
    assert code == 0 and out.startswith("x,re_u")


def test_poles_cp2(capsys):
    code, out, _ = run(["poles", "--preset", "cp2", "--k-max", "1"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("# nu = 0.306")
    assert sum(1 for l in lines if not l.startswith("#")) == 5


def test_poles_jobs_equal(capsys):
    argv = ["poles", "--preset", "cp2", "--k-max", "2", "--order", "6"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv + ["--jobs", "2"], capsys)
    assert a == b


def test_integrate(capsys):
    code, out, _ = run(["integrate", "--theta", "0.3", "0.2", "0.4", "1.7", "--x0", "0.3+0.05j",
                        "--y0", "0.4+0.1j", "--dy0", "0.2-0.1j", "--path", "0.45+0.2j;0.6+0.1j"], capsys)
    assert code == 0 and out.splitlines()[0] == "re_x,im_x,re_y,im_y,chart"


def test_check_suite(capsys):
    code, out, _ = run(["check", "--suite", "poles-oracle"], capsys)
    assert code == 0 and "FAIL=0" in out


@pytest.mark.parametrize("argv", [
    ["expand", "--class", "PowerGeneric", "--const", "sigma=0.3", "--const", "a=1", "--theta", "0.3", "0.2", "0.4",
     "1.7", "--order", "4"],
    ["poles", "--preset", "cp2", "--order", "5"],
])
def test_deterministic_output(argv, capsys):
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_digits_env(monkeypatch, capsys):
    argv = ["expand", "--class", "TaylorRow3", "--const", "a=2", "--order", "3"]
    _, plain, _ = run(argv, capsys)
    monkeypatch.setenv("PAINLEVE6_DIGITS", "40")
    _, ext, _ = run(argv, capsys)
    assert json.loads(plain)["coefficients"].keys() == json.loads(ext)["coefficients"].keys()


@pytest.mark.parametrize("argv,code", [
    (["expand", "--class", "Nope"], 2),
    (["symmetry", "--op", "swapxy", "--point", "0.5", "0"], 2),
    (["integrate", "--theta", "0", "0", "0", "1", "--x0", "0.5", "--y0", "0.3", "--dy0", "0", "--path", "1"], 2),
    (["fricke"], 2),
    (["nosuch"], 2),
])
def test_exit_codes(argv, code, capsys):
    got, _, err = run(argv, capsys)
    assert got == code and err


def test_console_script():
    exe = shutil.which("painleve6")
    cmd = [exe] if exe else [sys.executable, "-m", "painleve6.cli"]
    r = subprocess.run(cmd + ["params", "--coefficients", "4.5", "0", "0", "0.5"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["thetaInf"][0] == pytest.approx(4)
