from __future__ import annotations

import pytest

from sgo.board import BLACK, WHITE, Point, make_board
from sgo.engine import PASS, TurnInput, is_valid_move
from sgo.game import GameConfig, new_game, step
from sgo.bots import (
    GreedyCapture,
    UniformRandom,
    game_salt,
    pick_move,
    play_one,
    selfplay,
)
from sgo.records import parse_diagram

from conftest import pt


def game_from(text: str, **kwargs):
    b = parse_diagram(text)
    setup = tuple((p, b.cell(p)) for p in b.points() if not b.is_empty(p))
    return new_game(GameConfig(size=b.size, setup=setup, **kwargs))


class TestDeterminism:
    def test_same_state_same_move(self):
        g = new_game(GameConfig(size=9))
        policy = UniformRandom(seed=11)
        first = pick_move(policy, g, BLACK, salt=5)
        assert all(
            pick_move(policy, g, BLACK, salt=5) == first for _ in range(20)
        )

    def test_seed_changes_the_stream(self):
        g = new_game(GameConfig(size=9))
        moves = {pick_move(UniformRandom(seed=s), g, BLACK) for s in range(30)}
        assert len(moves) > 1

    def test_color_and_turn_change_the_stream(self):
        g = new_game(GameConfig(size=9))
        policy = UniformRandom(seed=0)
        black = {pick_move(policy, g, BLACK, salt=s) for s in range(30)}
        white = {pick_move(policy, g, WHITE, salt=s) for s in range(30)}
        assert black != white

    def test_statelessness_no_hidden_rng(self):
        # interleaving calls in any order yields identical choices
        g = new_game(GameConfig(size=5))
        policy = GreedyCapture(seed=2)
        a = pick_move(policy, g, BLACK, salt=1)
        pick_move(policy, g, WHITE, salt=9)
        pick_move(policy, g, BLACK, salt=7)
        assert pick_move(policy, g, BLACK, salt=1) == a


class TestMoveChoice:
    def test_moves_are_legal(self):
        g = new_game(GameConfig(size=5))
        for salt in range(50):
            m = pick_move(UniformRandom(seed=1), g, BLACK, salt=salt)
            assert m is PASS or is_valid_move(g.board, m)

    def test_full_board_forces_a_pass(self):
        g = game_from("size 2\nB B\nW W\n")
        assert pick_move(UniformRandom(seed=0), g, BLACK) is PASS
        assert pick_move(GreedyCapture(seed=0), g, WHITE) is PASS

    def test_pass_prob_one_always_passes(self):
        g = new_game(GameConfig(size=9))
        policy = UniformRandom(seed=0, pass_prob=1.0)
        assert all(pick_move(policy, g, BLACK, salt=s) is PASS for s in range(10))

    def test_greedy_takes_the_one_liberty_kill(self):
        g = game_from("size 5\n. . . . .\n. B . . .\nB W B . .\n. . . . .\n. . . . .\n")
        # white B3 has a single liberty at B2; greedy black fills it
        for salt in range(10):
            assert pick_move(GreedyCapture(seed=3), g, BLACK, salt=salt) == pt("B2")

    def test_greedy_prefers_fewer_remaining_liberties(self):
        g = game_from("size 5\n. . . . .\n. . . . .\nW W . . .\n. . . W .\n. . . . .\n")
        # the lone stone on D2 has four liberties, the pair on A3-B3 five;
        # filling one of the lone stone's liberties leaves the lower count
        choice = pick_move(GreedyCapture(seed=3), g, BLACK)
        assert choice in {pt("D3"), pt("C2"), pt("E2"), pt("D1")}


class TestSelfPlay:
    def test_salts_are_spread_out(self):
        salts = {game_salt(42, i) for i in range(100)}
        assert len(salts) == 100
        assert game_salt(42, 0) != game_salt(43, 0)

    def test_play_one_terminates(self):
        state, final, reds, entangles = play_one(
            5, UniformRandom(seed=1), UniformRandom(seed=2), max_turns=60, salt=7
        )
        assert state.over
        assert reds >= 0 and entangles >= 0

    def test_stats_aggregate_and_rates_sum_to_one(self):
        stats = selfplay(
            5,
            UniformRandom(seed=1),
            UniformRandom(seed=2),
            games=8,
            max_turns=40,
            seed=9,
        )
        assert stats.games == 8
        assert len(stats.rows) == 8
        total = stats.win_rate_black + stats.win_rate_white + stats.tie_rate
        assert total == pytest.approx(1.0)
        assert stats.mean_game_length > 0

    def test_csv_is_reproducible(self):
        kwargs = dict(games=6, max_turns=40, seed=13)
        a = selfplay(5, UniformRandom(seed=1), GreedyCapture(seed=2), **kwargs)
        b = selfplay(5, UniformRandom(seed=1), GreedyCapture(seed=2), **kwargs)
        assert a.csv() == b.csv()

    def test_csv_has_a_row_per_game_and_a_summary(self):
        stats = selfplay(
            4, UniformRandom(seed=0), UniformRandom(seed=0), games=3, max_turns=30, seed=1
        )
        lines = stats.csv().splitlines()
        data = [ln for ln in lines if ln and not ln.startswith("#")]
        assert len(data) == 1 + 3  # header plus one row per game
        assert any(ln.startswith("#") for ln in lines)

    def test_rejects_empty_runs(self):
        with pytest.raises(ValueError):
            selfplay(5, UniformRandom(), UniformRandom(), games=0, max_turns=10, seed=0)
