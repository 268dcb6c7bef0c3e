import io
import json
import subprocess
import sys
from types import SimpleNamespace

import pytest

from scottlo import cli


def run(*argv):
    return cli.main(list(argv))


@pytest.mark.parametrize("argv,code", [
    (("le", "sh(1,w)", "w*q", "3"), 0),
    (("le", "2", "3", "1"), 1),
    (("le", "q", "q", "9"), 0),
    (("le", "w+q", "w", "--alpha", "3", "--cuts", "1", "--params", "2"), 2),
    (("le", "w+", "w", "2"), 3),
    (("le", "w", "w"), 3),
])
def test_le_exit_codes(argv, code):
    assert run(*argv) == code


def test_le_json_round_trips(capsys):
    assert run("le", "w+q", "w", "3", "--json") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["outcome"] == "True"
    assert data["bounds"]["level"] == 3


def test_classify(capsys):
    assert run("classify", "q") == 0
    assert "Pi_2" in capsys.readouterr().out
    assert run("classify", "2*q+1+q", "--json") == 0
    assert json.loads(capsys.readouterr().out)["upper"] == "Sigma_4"


def test_fs(tmp_path, capsys):
    path = tmp_path / "graph.json"
    path.write_text(json.dumps({"universe": [0, 1], "vocabulary": [["E", 2]], "relations": {"E": [[0, 1]]}}))
    assert run("fs", str(path), "--depth", "2") == 0
    out = capsys.readouterr().out
    assert len([l for l in out.splitlines() if l.strip().startswith("(")]) == 7
    assert "order: 2 + sh(" in out
    assert "dSigma_1  ->  tree of tuples: Pi_4" in out
    assert run("fs", str(path), "--depth", "9") == 4
    assert run("fs", str(tmp_path / "missing.json")) == 5


def test_verify_suite_json_is_reproducible(capsys):
    assert run("verify-suite", "--suite", "oracle-cross", "--json") == 0
    first = json.loads(capsys.readouterr().out)
    assert run("verify-suite", "oracle-cross", "--json") == 0
    second = json.loads(capsys.readouterr().out)
    for doc in (first, second):
        for row in doc["results"]:
            row.pop("elapsed_s")
    assert first == second
    assert first["counts"] == {"pass": 1, "fail": 0, "inconclusive": 0}


def test_unknown_suite():
    with pytest.raises(SystemExit):
        run("verify-suite", "--suite", "nope")
    assert run("verify-suite", "nope") == 3


def test_game_session(tmp_path):
    transcript = tmp_path / "game.txt"
    args = cli.build_parser().parse_args(
        ["game", "w+q", "w", "3", "--role", "forall", "--transcript", str(transcript)])
    out = io.StringIO()
    code = cli.cmd_game(args, stdin=io.StringIO("q | w\n5 | w\n1\nresign\n"), out=out)
    assert code == 0
    text = out.getvalue()
    assert "illegal move" in text
    assert "engine answers: 5 | w + q" in text
    assert "you resign" in transcript.read_text()


def test_game_abandoned_on_closed_input():
    args = cli.build_parser().parse_args(["game", "w+q", "w", "3"])
    assert cli.cmd_game(args, stdin=io.StringIO(""), out=io.StringIO()) == 2


def test_config_file_overrides(tmp_path, capsys):
    cfg = tmp_path / "tight.cfg"
    cfg.write_text("cuts = 1\nparams = 2\n")
    assert run("le", "w+q", "w", "3", "--config", str(cfg)) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert run("le", "q", "q", "1", "--config", str(bad)) == 3


def test_packaged_defaults():
    cfg = cli.read_config()
    assert cfg["params"] == 40 and cfg["cuts"] is None


def test_cache_file_is_written(tmp_path):
    cache = tmp_path / "c.jsonl"
    assert run("le", "w+q", "w", "3", "--cache", str(cache)) == 0
    assert cache.exists() and cache.read_text().strip()


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "scottlo.cli", "le", "2", "3", "1"], capture_output=True, text=True)
    assert res.returncode == 1
    assert "False" in res.stdout
