import subprocess
import sys

import pytest

from supercartan.cli import main
from supercartan.config import ChartConfig
from supercartan.errors import ConfigError
from supercartan.scalars import ScalarFn, ScalarMatrix

GOOD_CONFIG = """
# two base coordinates, two odd generators
n = 2
m = 2

transition R {
  z1, 0
  0, 1
}

transition S {
  1, z2
  0, 1     # unit upper triangular
}

connection G {
  1, 0
  0, 1
  0, z2
  1, 0
}
"""


def write_config(tmp_path, text):
    path = tmp_path / "chart.cfg"
    path.write_text(text)
    return str(path)


def test_config_loads_objects(tmp_path):
    config = ChartConfig.load(write_config(tmp_path, GOOD_CONFIG))
    assert config.chart.n == 2 and config.chart.m == 2
    assert set(config.transitions) == {"R", "S"}
    assert set(config.connections) == {"G"}
    z1 = ScalarFn.coordinate(2, 1)
    assert config.transitions["R"].matrix == ScalarMatrix(
        [[z1, ScalarFn.zero(2)], [ScalarFn.zero(2), ScalarFn.one(2)]])
    assert config.connections["G"].gamma[1][0, 1] == ScalarFn.coordinate(2, 2)


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        ChartConfig.load(str(tmp_path / "missing.cfg"))
    with pytest.raises(ConfigError):
        ChartConfig.loads("m = 2")                      # n missing
    with pytest.raises(ConfigError):
        ChartConfig.loads("n = 2\nm = 2\ntransition R {\n z1, 0\n")
    with pytest.raises(ConfigError):                    # singular at load
        ChartConfig.loads("n = 1\nm = 1\ntransition R {\n 0\n}")
    with pytest.raises(ConfigError):                    # non-scalar entry
        ChartConfig.loads("n = 1\nm = 1\ntransition R {\n c1\n}")
    with pytest.raises(ConfigError):                    # wrong row count
        ChartConfig.loads("n = 2\nm = 2\ntransition R {\n 1, 0\n}")


def test_custom_names_flow_through(tmp_path, capsys):
    text = "n = 1\nm = 1\nbase_names = x\nfiber_names = eta\n"
    path = write_config(tmp_path, text)
    assert main(["eval", "--config", path, "D(x*eta)"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "eta*dx + x*deta"


def test_eval_exit_codes(tmp_path, capsys):
    path = write_config(tmp_path, GOOD_CONFIG)

    assert main(["eval", "--config", path, "D(D(c1*c2))"]) == 0
    assert capsys.readouterr().out.strip() == "0"

    assert main(["eval", "--config", path, "Transform(c1; rho=R)"]) == 0
    assert capsys.readouterr().out.strip() == "(1/z1)*c1'"

    assert main(["eval", "c9"]) == 2
    err = capsys.readouterr().err.strip()
    assert err == "UnknownSymbol c9"

    assert main(["eval", "c1**"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("SyntaxError") and "col 4" in err

    assert main(["eval", "Lie(dc1; d/dc1)"]) == 2
    assert capsys.readouterr().err.startswith("TypeMismatch")

    assert main(["eval", "1/(z1 - z1)"]) == 3
    assert capsys.readouterr().err.startswith("DivisionByZero")

    bad = write_config(tmp_path, "n = 1\nm = 1\ntransition R {\n 0\n}")
    assert main(["eval", "--config", bad, "z1"]) == 1
    assert capsys.readouterr().err.startswith("ConfigError")


def test_eval_split_pair(tmp_path, capsys):
    path = write_config(tmp_path, GOOD_CONFIG)
    assert main(["eval", "--config", path, "Split(d/dz1; conn=G)"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "(d/dz1 + c1*d/dc1 + c2*d/dc2; -c1*d/dc1 - c2*d/dc2)"


def test_check_exit_and_report(capsys):
    assert main(["check", "--suite", "derivation", "--seed", "5", "--cases", "4"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "derivation/leibniz: PASS"
    assert all(line.endswith(": PASS") for line in lines)

    assert main(["check", "--suite", "nope"]) == 1
    assert "unknown suite" in capsys.readouterr().err


def test_check_byte_deterministic():
    command = [sys.executable, "-m", "supercartan", "check",
               "--suite", "wedge", "--seed", "11", "--cases", "4"]
    first = subprocess.run(command, capture_output=True)
    second = subprocess.run(command, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.decode().count("PASS") == 3
