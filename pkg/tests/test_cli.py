"""Command-line interface behavior and exit codes."""

import io
import json

import pytest

from syncgames import parse_game, serialize_game, trivial_sync
from syncgames.cli import load_game, main
from syncgames.correlations import DeterministicStrategy, strategy_to_correlation


def run(argv, stdin_text=None, monkeypatch=None, capsys=None):
    if stdin_text is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(argv)
    out = capsys.readouterr().out if capsys else ""
    return code, out


def test_zoo_trivial_round_trips(capsys):
    code, out = run(["zoo", "trivial", "--n", "2", "--k", "3"], capsys=capsys)
    assert code == 0
    assert parse_game(out) == trivial_sync(2, 3)


def test_pipe_hom_through_bisync(monkeypatch, capsys):
    code, out = run(["zoo", "hom", "--g", "K5", "--h", "K4"], capsys=capsys)
    assert code == 0
    code, out = run(["transform", "bisync"], stdin_text=out, monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0
    g = parse_game(out)
    assert (g.n, g.k) == (20, 20)


def test_transform_files(tmp_path, capsys):
    src = tmp_path / "g.json"
    src.write_text(serialize_game(trivial_sync(1, 3)))
    out = tmp_path / "zr.json"
    spec = tmp_path / "spec.json"
    code, _ = run(
        ["transform", "zr", "--in", str(src), "--out", str(out), "--spec-out", str(spec)],
        capsys=capsys,
    )
    assert code == 0
    assert parse_game(out.read_text()).n == 7
    assert json.loads(spec.read_text())["Z"] == []


def test_verify_all_threeout_exits_zero(capsys):
    code, out = run(
        ["verify", "all", "--kind", "threeout", "--game", "trivial_sync(1,4)"], capsys=capsys
    )
    assert code == 0
    assert "all proven" in out


def test_verify_json_output(capsys):
    code, out = run(
        ["verify", "inverse", "--kind", "bisync", "--game", "trivial(1,2)", "--json"],
        capsys=capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["all_proven"] is True


def test_solve_counts(capsys):
    code, out = run(["solve", "--game", "hom(K5,K4)", "--json"], capsys=capsys)
    assert code == 0
    assert json.loads(out)["count"] == 0


def test_solve_prints_strategies(capsys):
    code, out = run(["solve", "--game", "trivial(1,2)", "--strategies"], capsys=capsys)
    assert code == 0
    assert "[0]" in out and "[1]" in out


def test_transport_round_trip_through_files(tmp_path, capsys):
    g = trivial_sync(1, 2)
    corr = strategy_to_correlation(DeterministicStrategy((0,)), g)
    corr_file = tmp_path / "p.json"
    corr_file.write_text(corr.to_json())
    fwd_out = tmp_path / "psi.json"
    code, _ = run(
        [
            "transport",
            "--corr", str(corr_file),
            "--game", "trivial(1,2)",
            "--map-kind", "bisync",
            "--direction", "forward",
            "--out", str(fwd_out),
        ],
        capsys=capsys,
    )
    assert code == 0
    back_out = tmp_path / "back.json"
    code, _ = run(
        [
            "transport",
            "--corr", str(fwd_out),
            "--game", "trivial(1,2)",
            "--map-kind", "bisync",
            "--direction", "backward",
            "--out", str(back_out),
        ],
        capsys=capsys,
    )
    assert code == 0
    from syncgames.correlations import Correlation

    assert Correlation.from_json(back_out.read_text()) == corr


def test_counterexample_exits_zero(capsys):
    code, out = run(["counterexample", "--json"], capsys=capsys)
    assert code == 0
    assert json.loads(out)["report"]["q_in_range"] is False


def test_usage_errors():
    assert main(["transform", "frobnicate"]) == 2
    assert main([]) == 2
    assert main(["solve", "--game", "no_such_file.json"]) == 2


def test_budget_error_is_reported_as_bad_input(monkeypatch, capsys):
    monkeypatch.setenv("SYNCGAME_BUDGET", "5")
    code, _ = run(["solve", "--game", "trivial(4,6)"], capsys=capsys)
    assert code == 2


def test_load_game_nested_shortcuts():
    g = load_game("threeout(hom(K5,K4))")
    assert (g.n, g.k) == (10, 3)
    assert load_game("sym(trivial(2,2))") == trivial_sync(2, 2).with_name("sym(trivial_sync(2,2))")


def test_load_game_rejects_unknown_shortcut():
    from syncgames.errors import SyncGamesError

    with pytest.raises(SyncGamesError):
        load_game("mystery(1,2)")
