import io
import json
import subprocess
import sys

import pytest

from og10 import cli, linalg
from og10.presets import PRESETS

OG10_ZERO = ",".join(["0"] * 24)
MINUS_42 = ",".join(map(str, [3, -6] + [0] * 20 + [1, 2]))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_matches_and_is_stable(name):
    code, out, _ = run("preset", name)
    assert code == 0
    assert json.loads(out)["match"] is True
    assert run("preset", name)[1] == out


def test_preset_stable_across_processes():
    outs = [subprocess.run([sys.executable, "-m", "og10.cli", "preset", "fig1", "--format", "svg"],
                           capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].startswith(b"<svg")


def test_unknown_preset_exit_2():
    code, out, err = run("preset", "nope")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "UnknownPreset"


def test_zero_vector_exit_2():
    code, _, err = run("div", "--lattice", "og10", "--class", OG10_ZERO)
    assert code == 2
    assert json.loads(err) == {"error": "ZeroVector", "detail": json.loads(err)["detail"]}


def test_minus_42_not_a_wall():
    code, out, _ = run("wall-check", "--lattice", "og10", "--class", MINUS_42)
    assert code == 0
    data = json.loads(out)
    assert (data["square"], data["divisibility"], data["verdict"]) == (-42, 3, "NotAWall")


def test_pex_check():
    code, out, _ = run("pex-check", "--lattice", "og10", "--class", ",".join(["1", "-1"] + ["0"] * 22))
    assert code == 0 and json.loads(out)["verdict"] == "NegTwoDivOne"


def test_core_error_exit_1():
    code, _, err = run("reflection", "--lattice", "U", "--class", "1,-2")
    assert code == 1 and json.loads(err)["error"] == "NotIntegral"


def test_bad_arguments_exit_2():
    code, _, err = run("div", "--lattice")
    assert code == 2 and "error" in json.loads(err)
    code, _, _ = run("frobnicate")
    assert code == 2
    code, _, err = run("div", "--lattice", "og10", "--class", "1,x")
    assert code == 2


def test_not_og10_ambient():
    code, _, err = run("wall-check", "--lattice", "0,1;1,0", "--class", "1,-1")
    assert code == 2 and json.loads(err)["error"] == "NotOG10Ambient"


def test_lattice_info_and_file(tmp_path):
    code, out, _ = run("lattice-info", "--lattice", "og10")
    data = json.loads(out)
    assert data["rank"] == 24 and data["signature"] == [3, 21] and data["determinant"] == -3
    f = tmp_path / "pv.json"
    f.write_text(json.dumps({"gram": [[-2, 1], [1, 0]], "label": "P_V",
                             "og10_images": [[1, -1] + [0] * 22, [0, 1] + [0] * 22]}))
    code, out, _ = run("wall-check", "--lattice", str(f), "--class", "1,-1")
    assert code == 0 and json.loads(out)["verdict"] == "NegFourDivOne"
    code, out, _ = run("cone", "--lattice", str(f), "--hint", "1,4", "--format", "csv")
    assert code == 0 and out == run("cone", "--context", "ij", "--format", "csv")[1]


def test_orbit_equiv():
    a = ",".join(["1", "-1"] + ["0"] * 22)
    b = ",".join(["0"] * 6 + ["1"] + ["0"] * 17)
    code, out, _ = run("orbit-equiv", "--lattice", "og10", "--class", a, "--class", b)
    assert code == 0 and json.loads(out)["equivalent"] is True


def test_moduli_commands():
    code, out, _ = run("curve-class", "--pic", "2", "--mukai", "0,2,2", "--vperp", "2,1,0;0,0,1",
                       "--pairings", "1,0,0:2;0,1,0:1;0,0,1:1")
    assert code == 0
    wall = json.loads(out)["wall"]
    assert (wall["square"], wall["divisibility"]) == (-24, 3)
    code, out, _ = run("mz-classify", "--pic", "0,1;1,0", "--mukai", "2,0,0,-2", "--h0", "1,2")
    assert code == 0 and json.loads(out)["kind"] == "SmallContraction"
    code, out, _ = run("moduli-picard", "--pic", "2", "--mukai", "2,0,-2")
    # frame Gram diag(2, -2, -6) has determinant 24; the half class gives index 2
    assert code == 0 and linalg.determinant(json.loads(out)["gram"]) == 6


def test_unique_compactification_cli():
    code, out, _ = run("unique-compactification", "--gram", "3,4;4,10")
    assert code == 0 and json.loads(out)["unique"] is True
    code, _, err = run("unique-compactification", "--gram", "2,0;0,2")
    assert code == 2 and json.loads(err)["error"] == "NotCubicGram"


def test_out_file(tmp_path):
    p = tmp_path / "fig.svg"
    code, out, _ = run("cone", "--context", "ij", "--format", "svg", "--out", str(p))
    assert code == 0 and out == "" and p.read_text().startswith("<svg")
