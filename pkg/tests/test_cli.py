import json
from pathlib import Path

import pytest

from dpcrit import cli
from dpcrit.cover import dump_cover, identity_cover
from dpcrit.multigraph import cycle_graph

HERE = Path(__file__).parent
K4 = str(HERE / "data" / "k4.g6")
GOLDEN = HERE / "golden"

# keys whose values legitimately change between runs
VOLATILE = {"runtime", "runtimes", "witness", "atlas"}


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr()


def normalise(obj):
    if isinstance(obj, dict):
        return {k: (None if k in VOLATILE else normalise(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [normalise(x) for x in obj]
    return obj


GOLDEN_CASES = {
    "chidp": ["chidp", K4, "--json"],
    "scan4": ["scan", "--n", "4", "--jobs", "1", "--json"],
    "potential": ["potential", K4, "--h", "3", "--subset", "0,1,2", "--json"],
    "discharge": ["discharge", K4, "--h", "v0=2,v1=3,v2=3,v3=3", "--json"],
    "gen_ore7": ["gen-ore", "--max-vertices", "7", "--json"],
    "cycle_cover": ["check-lemma", "cycle-cover", "--max-length", "4", "--json"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_matches_golden(name, capsys, tmp_path):
    code, out = run(capsys, *GOLDEN_CASES[name], "--witness-dir", tmp_path)
    assert code == 0
    got = normalise(json.loads(out.out))
    want = json.loads((GOLDEN / f"{name}.json").read_text())
    assert got == want


def test_chidp_text(capsys):
    code, out = run(capsys, "chidp", K4)
    assert code == 0 and out.out.strip() == "4"


def test_solve_writes_replayable_witness(capsys, tmp_path):
    code, out = run(capsys, "solve", K4, "--h", "3", "--witness-dir", tmp_path)
    assert code == 1
    path = out.out.strip().split()[-1]
    assert Path(path).exists()
    code, _ = run(capsys, "replay", path, "--h", "3")
    assert code == 0
    code, out = run(capsys, "solve", "--cover", path)
    assert code == 1


def test_solve_colourable(capsys):
    code, _ = run(capsys, "solve", K4, "--h", "4")
    assert code == 0


def test_replay_rejects_colourable_cover(capsys, tmp_path):
    g = cycle_graph(5)
    path = tmp_path / "c5.dpcover"
    path.write_text(dump_cover(g, identity_cover(g, (3,) * 5)))
    code, _ = run(capsys, "replay", path)
    assert code == 1
    code, out = run(capsys, "solve", "--cover", path)
    assert code == 0 and out.out.startswith("colourable")


def test_stdin(capsys, monkeypatch):
    import io
    import sys
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"C~\nBw\n")))
    code, out = run(capsys, "chidp")
    assert code == 0 and out.out.split() == ["4", "3"]  # K4, triangle


@pytest.mark.parametrize("argv", [
    ["chidp", "/no/such/file"],
    ["potential", K4, "--h", "v0=2"],
    ["potential", K4, "--h", "x"],
    ["potential", K4, "--subset", "0,9"],
    ["solve", K4],
    ["scan"],
    ["check-lemma", "nonsense"],
    ["check-lemma", "ore-subsets", "--max-vertices", "16"],
])
def test_usage_errors(argv, capsys):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_bad_graph_text(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("xx\n")
    code, out = run(capsys, "chidp", bad)
    assert code == 2 and "error" in out.err


def test_lemma_commands(capsys, tmp_path):
    for argv in (["check-lemma", "ore-subsets", "--max-vertices", "10"],
                 ["check-lemma", "moser-extension"],
                 ["check-lemma", "submodularity", "--instances", "300", "--exhaustive-n", "3"],
                 ["check-lemma", "theorem51", "--max-vertices", "2"],
                 ["check-lemma", "theorem-bound", K4],
                 ["verify-critical", K4, "--k", "4"]):
        code, _ = run(capsys, *argv, "--witness-dir", tmp_path)
        assert code == 0, argv


def test_falsified_prints_witness_path(capsys, tmp_path):
    c5 = tmp_path / "c5.g6"
    c5.write_text("Dhc\n")
    code, out = run(capsys, "verify-critical", c5, "--k", "4", "--witness-dir", tmp_path)
    assert code == 1
    path = out.out.strip().splitlines()[-1].split()[-1]
    assert json.loads(Path(path).read_text())[0]["critical"] is False


def test_jobs_env(monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV, "3")
    assert cli.default_jobs() == 3
    monkeypatch.setenv(cli.JOBS_ENV, "lots")
    with pytest.raises(cli.UsageError):
        cli.default_jobs()


def test_parse_h():
    assert cli.parse_h("3", 2) == (3, 3)
    assert cli.parse_h("v0=2,v1=3", 2) == (2, 3)
    with pytest.raises(cli.UsageError):
        cli.parse_h("v0=2", 2)
