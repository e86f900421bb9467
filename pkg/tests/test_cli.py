from __future__ import annotations

import pytest

from sgo import cli

from conftest import FIXTURES, fixture_text


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNew:
    def test_emits_an_empty_record(self, capsys):
        code, out, _ = run_cli(capsys, "new", "--size", "9")
        assert code == 0
        assert out == "sgo 1\nsize 9\n"

    def test_default_size(self, capsys):
        code, out, _ = run_cli(capsys, "new")
        assert code == 0
        assert "size 19" in out


class TestReplay:
    def test_prints_the_final_fixture(self, capsys):
        code, out, _ = run_cli(capsys, "replay", str(FIXTURES / "example1.sgo"))
        assert code == 0
        assert out.startswith(fixture_text("capture_resolves_red.txt"))
        assert "prisoners black 0 white 2" in out

    def test_finished_games_also_print_the_score(self, capsys):
        code, out, _ = run_cli(capsys, "replay", str(FIXTURES / "cascade_scored.sgo"))
        assert code == 0
        assert "outcome black-wins" in out

    def test_missing_file_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "replay", "no-such-file.sgo")
        assert code == 3
        assert err != ""

    def test_malformed_record_exits_4(self, capsys, tmp_path):
        bad = tmp_path / "bad.sgo"
        bad.write_text("sgo 1\nsize 7\n9. B ZZ W huh\n")
        code, _, err = run_cli(capsys, "replay", str(bad))
        assert code == 4
        assert err != ""

    def test_illegal_replayed_move_exits_5(self, capsys, tmp_path):
        bad = tmp_path / "illegal.sgo"
        bad.write_text("sgo 1\nsize 7\nsetup\nB C3\n1. B C3 W pass\n")
        code, _, err = run_cli(capsys, "replay", str(bad))
        assert code == 5
        assert err != ""


class TestScore:
    def test_scores_a_finished_record(self, capsys):
        code, out, _ = run_cli(capsys, "score", str(FIXTURES / "cascade_scored.sgo"))
        assert code == 0
        assert "black territory 37" in out
        assert "black prisoners 6" in out
        assert "outcome black-wins" in out

    def test_unfinished_record_exits_5(self, capsys):
        code, _, err = run_cli(capsys, "score", str(FIXTURES / "example1.sgo"))
        assert code == 5
        assert err != ""


class TestSelfplay:
    def test_csv_on_stdout(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "selfplay",
            "--size", "4",
            "--games", "3",
            "--seed", "5",
            "--max-turns", "30",
        )
        assert code == 0
        header = out.splitlines()[0]
        assert header.startswith("index,")

    def test_identical_invocations_are_byte_identical(self, capsys):
        argv = [
            "selfplay",
            "--size", "4",
            "--games", "4",
            "--seed", "11",
            "--max-turns", "30",
            "--policy", "random,greedy",
        ]
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    def test_unknown_policy_is_a_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "selfplay", "--policy", "chess")
        assert code == 2
        assert err != ""


class TestOracleCheck:
    def test_small_exhaustive_run(self, capsys):
        code, out, _ = run_cli(capsys, "oracle-check", "--size", "2", "--depth", "2")
        assert code == 0
        assert out.strip().endswith("0 mismatches")

    def test_random_budget_run(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "oracle-check",
            "--size", "5",
            "--budget", "150",
            "--seed", "42",
        )
        assert code == 0
        assert "checked 150 cases" in out


class TestUsage:
    def test_unknown_subcommand_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 2

    def test_no_arguments_exits_2(self, capsys):
        code, _, _ = run_cli(capsys)
        assert code == 2


class TestHotseat:
    def test_scripted_game(self, capsys, monkeypatch):
        moves = iter(["C3", "C3", "pass", "pass"])
        monkeypatch.setattr(cli, "_prompt_secret", lambda prompt: next(moves))
        code, out, _ = run_cli(capsys, "hotseat", "--size", "5")
        assert code == 0
        assert "R" in out  # the clash shows up on the printed board
        assert "outcome" in out

    def test_bad_input_reprompts(self, capsys, monkeypatch):
        moves = iter(["Z99", "C3", "D3", "pass", "pass"])
        monkeypatch.setattr(cli, "_prompt_secret", lambda prompt: next(moves))
        code, _, err = run_cli(capsys, "hotseat", "--size", "5")
        assert code == 0
        assert "invalid move" in err
