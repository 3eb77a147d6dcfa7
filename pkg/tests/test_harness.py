"""Configuration, serialization, CLI exit codes, determinism."""

import json
import os

import pytest

from realquad.cli import main
from realquad.fqpoly import Poly
from realquad.harness import (ConfigError, RunConfig, build_field, emit,
                              make_target, parse_config, run_command)


# -- parse_config -----------------------------------------------------------------


def test_parse_config_defaults():
    cfg = parse_config("unit", {"q": 3, "d": "1,0,1"})
    assert cfg.q == 3 and cfg.d == Poly.parse(3, "1,0,1")
    assert cfg.fmt == "csv" and cfg.seed == 1
    assert cfg.scale_cap == 1_000_000


def test_parse_config_rejections():
    with pytest.raises(ConfigError):
        parse_config("unit", {"q": 4})               # not an odd prime
    with pytest.raises(ConfigError):
        parse_config("unit", {"q": 3, "d": "1,1"})   # odd degree
    with pytest.raises(ConfigError):
        parse_config("unit", {"q": 3, "bogus": 1})   # unknown key
    with pytest.raises(ConfigError):
        parse_config("scan", {"q": 3, "nmin": 3, "nmax": 2})
    with pytest.raises(ConfigError) as exc:
        parse_config("typesums", {"q": 3, "d": "1,0,1", "nmax": 2,
                                  "alpha": 9, "beta": 3})
    assert "alpha*beta < q^N" in str(exc.value)


def test_factor_accepts_any_poly():
    cfg = parse_config("factor", {"q": 3, "d": "1,1"})  # odd degree is fine here
    assert cfg.d.degree == 1


# -- make_target -------------------------------------------------------------------


def test_make_target_deterministic():
    cfg = parse_config("scan", {"q": 3, "d": "1,0,1", "seed": 42})
    field = build_field(cfg)
    t1 = make_target(cfg, field)
    t2 = make_target(cfg, field)
    assert t1.x1 == t2.x1 and t1.x2 == t2.x2


def test_make_target_rejects_equal_components():
    cfg = parse_config("scan", {"q": 3, "d": "1,0,1",
                                "x1": "0:1,2,0,1:-3", "x2": "0:1,2,0,1:-3"})
    field = build_field(cfg)
    with pytest.raises(ConfigError):
        make_target(cfg, field)


def test_make_target_explicit_requires_both():
    cfg = parse_config("scan", {"q": 3, "d": "1,0,1", "x1": "0:1:0"})
    with pytest.raises(ConfigError):
        make_target(cfg, build_field(cfg))


# -- emit --------------------------------------------------------------------------


def test_emit_csv_header_only():
    text = emit(["a", "b"], [], "csv", None)
    assert text == "a,b\n"


def test_emit_float_formatting():
    text = emit(["x"], [{"x": 1.0 / 3.0}], "csv", None)
    assert text.splitlines()[1] == "0.333333333333"  # 12 significant digits


def test_emit_json_roundtrip_integers(tmp_path):
    rows = [{"n": 12345678901234567, "s": "abc", "flag": True, "none": None}]
    cols = ["n", "s", "flag", "none"]
    path = str(tmp_path / "out.json")
    emit(cols, rows, "json", path)
    back = json.loads(open(path).read())
    assert back[0]["n"] == rows[0]["n"]
    assert back[0]["flag"] is True


def test_emit_rejects_ragged_rows():
    with pytest.raises(ValueError):
        emit(["a"], [{"a": 1, "b": 2}], "csv", None)


# -- CLI exit codes ------------------------------------------------------------------


def test_cli_config_error_exit_2(capsys):
    assert main(["unit", "--q", "3", "--d", "1,1"]) == 2


def test_cli_scale_cap_exit_3(capsys):
    assert main(["scan", "--q", "5", "--d", "2,0,1", "--nmin", "4",
                 "--nmax", "10", "--seed", "1"]) == 3


def test_cli_ok_exit_0(capsys):
    assert main(["pnt", "--q", "3", "--d", "1,0,1", "--nmax", "5"]) == 0
    out = capsys.readouterr().out
    assert "lambda_sum" in out and "pnt:" in out


def test_cli_config_file(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"q": 3, "d": "1,0,1", "nmax": 4}))
    assert main(["pnt", "--config", str(cfgfile)]) == 0


def test_cli_flag_overrides_config_file(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"q": 3, "d": "1,0,1", "nmax": 2}))
    assert main(["pnt", "--config", str(cfgfile), "--nmax", "3"]) == 0
    out = capsys.readouterr().out
    assert "3,26,27,-1" in out  # row for N = 3 present


# -- determinism ---------------------------------------------------------------------


@pytest.mark.parametrize("args", [
    ["scan", "--q", "3", "--d", "1,0,1", "--nmin", "1", "--nmax", "4",
     "--seed", "3"],
    ["dirichlet", "--q", "3", "--d", "1,0,1", "--seed", "3",
     "--max-norm-exp", "4"],
    ["typesums", "--q", "3", "--d", "1,0,1", "--nmax", "4", "--seed", "3"],
])
def test_byte_identical_artifacts(tmp_path, args, capsys):
    outs = []
    for i in (0, 1):
        p = str(tmp_path / f"o{i}.csv")
        assert main(args + ["--out", p]) == 0
        outs.append(open(p, "rb").read())
    assert outs[0] == outs[1] and outs[0]


def test_json_mirrors_csv(tmp_path, capsys):
    base = ["pnt", "--q", "3", "--d", "1,0,1", "--nmax", "4"]
    pc = str(tmp_path / "a.csv")
    pj = str(tmp_path / "a.json")
    assert main(base + ["--out", pc]) == 0
    assert main(base + ["--format", "json", "--out", pj]) == 0
    csv_lines = open(pc).read().splitlines()
    data = json.loads(open(pj).read())
    header = csv_lines[0].split(",")
    assert [str(data[0][h]) for h in header] == csv_lines[1].split(",")
