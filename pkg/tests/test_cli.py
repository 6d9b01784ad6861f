import io
import json
import subprocess
import sys

import pytest

from psindex.cli import main
from psindex.generate import winding_symbol
from psindex.symbol_io import write_symbol

GENERATOR = "order 0\ndepth 4\ncomponent 0\nplus: exp(i*1*x)\nminus: 1\n"
ORDER_MINUS_TWO = "order -2\ndepth 4\ncomponent 0\nplus: 1\nminus: 1\n"
Q_GENERAL = "order 1\ndepth 5\ncomponent 0\nplus: 2 + cos(1*x)\nminus: 2 + cos(1*x)\n"


def run(argv):
    buf = io.StringIO()
    code = main(argv, stream=buf)
    return code, buf.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line
                and not line.startswith("#"))


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [("winding1", GENERATOR), ("order_minus2", ORDER_MINUS_TWO),
                       ("q", Q_GENERAL)]:
        p = tmp_path / f"{name}.sym"
        p.write_text(text)
        paths[name] = str(p)
    p = tmp_path / "mix.sym"
    write_symbol(p, winding_symbol(-2, "minus"))
    paths["minus2"] = str(p)
    return paths


def test_index_generator(files):
    code, out = run(["index", files["winding1"], "--method", "all"])
    vals = kv(out)
    assert code == 0
    assert (vals["analytic"], vals["topological"], vals["oracle"], vals["agree"]) == \
        ("-1", "-1", "-1", "true")


def test_index_general_q(files):
    code, out = run(["index", files["minus2"], "--q", files["q"], "--format", "kv"])
    assert code == 0
    assert not any(line.startswith("#") for line in out.splitlines())
    assert kv(out)["analytic"] == "-2"


def test_residue(files):
    code, out = run(["residue", files["order_minus2"]])
    assert code == 0 and kv(out)["wres"] == "0,0"


def test_radul_and_parametrix(files):
    code, out = run(["radul", files["winding1"], files["winding1"]])
    assert code == 0 and kv(out)["c"] == "0,0"
    code, out = run(["parametrix", files["winding1"]])
    vals = kv(out)
    assert code == 0 and float(vals["residual_left"]) <= 1e-11


def test_star(files):
    code, out = run(["star", files["winding1"], files["winding1"]])
    assert code == 0 and "# plus: exp(i*2*x)" in out


def test_oracle(files):
    code, out = run(["oracle", files["winding1"], "--modes", "8,12,16,20"])
    vals = kv(out)
    assert code == 0 and vals["oracle"] == "-1" and vals["d_20"] == "-1"
    code, out = run(["oracle", files["winding1"], "--exact"])
    assert kv(out)["method"] == "exact"


def test_check_cocycle_deterministic():
    a = run(["check", "--suite", "cocycle", "--trials", "6", "--seed", "7", "--format", "kv"])
    b = run(["check", "--suite", "cocycle", "--trials", "6", "--seed", "7", "--format", "kv"])
    assert a == b
    assert a[0] == 0 and kv(a[1])["pass"] == "true"


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("PSINDEX_SEED", "7")
    env = run(["check", "--suite", "trace", "--trials", "5", "--format", "kv"])
    flag = run(["check", "--suite", "trace", "--trials", "5", "--seed", "7", "--format", "kv"])
    assert env == flag


def test_verify_todd():
    code, out = run(["verify-todd", "--dim", "1", "--order", "4", "--trials", "2", "--seed", "1"])
    vals = kv(out)
    assert code == 0 and vals["pass"] == "true" and "trial_1_iden" in vals


def test_usage_errors(files, capsys):
    assert run([])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["oracle", files["winding1"], "--modes", "a,b"])[0] == 2
    assert "symbol file grammar" in capsys.readouterr().err


def test_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.sym"
    p.write_text("order 0\ndepth 4\ncomponent zero\n")
    assert run(["residue", str(p)])[0] == 2
    assert "ParseError at line 3" in capsys.readouterr().err


def test_config_error(tmp_path, files):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"nope": 1}))
    assert run(["--config", str(cfg), "residue", files["winding1"]])[0] == 2


def test_computational_error(tmp_path):
    p = tmp_path / "flat.sym"
    p.write_text("order 0\ndepth 4\ncomponent 0\nplus: cos(1*x)\nminus: 1\n")
    code, out = run(["parametrix", str(p)])
    assert code == 1 and "error=NotElliptic" in out
    code, out = run(["index", str(p), "--method", "analytic"])
    assert code == 1 and "agree=false" in out


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "psindex", "residue", files["order_minus2"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "wres=0,0" in proc.stdout
