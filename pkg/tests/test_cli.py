import json
import subprocess
import sys

import numpy as np
import pytest

from qhalab import qhaop
from qhalab.cli import main


def test_props_pass_and_output_file(tmp_path, capsys):
    out = tmp_path / "props.csv"
    assert main(["props", "--repeats", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "name,instances,max_deviation,tolerance,passed"
    assert all(line.endswith("True") for line in lines[1:])


def test_props_negative_control_exits_nonzero(capsys):
    assert main(["props", "--repeats", "2", "--break-convention"]) == 1
    assert "convolution_theorem" in capsys.readouterr().err


def test_json_format_and_seed_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"L": 8, "repeats": 2, "seed": 1}))
    assert main(["props", "--config", str(cfg), "--seed", "4", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["metadata"]["config"]["seed"] == 4 and doc["metadata"]["config"]["L"] == 8


def test_config_errors_exit_2(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"L": 10, "lattice": [3, 3]}))
    assert main(["plateau", "--config", str(cfg)]) == 2
    assert main(["props", "--config", str(tmp_path / "missing.toml")]) == 2
    assert main(["props", "--threads", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_assertion_failure_exits_1(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("L = 32\nradii = [4]\nratio_window = [0.99, 1.01]\n")
    assert main(["plateau", "--config", str(cfg)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("L,a,b,R,delta,count_above,target,ratio,lemma_lhs,lemma_bound\n")


def test_save_and_load(tmp_path, capsys):
    arr = np.arange(4.0).reshape(2, 2) + 1j
    src, dst, back = tmp_path / "a.npy", tmp_path / "a.qhaop", tmp_path / "b.npy"
    np.save(src, arr)
    assert main(["save", str(src), str(dst)]) == 0
    assert qhaop.load(dst)[0] == "operator"
    assert main(["load", str(dst), "--npy", str(back)]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "operator"
    assert np.array_equal(np.load(back), arr)
    dst.write_text("garbage\n")
    assert main(["load", str(dst)]) == 2
    assert main(["save", str(tmp_path / "none.npy"), str(dst)]) == 2


def test_console_script_determinism():
    cmd = [sys.executable, "-m", "qhalab.cli", "props", "--seed", "7", "--repeats", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"name,")


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
