from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from sgo.board import (
    BLACK,
    EBLACK,
    EWHITE,
    WHITE,
    color_flip,
    compute_groups,
    liberties,
    make_board,
)
from sgo.engine import PASS, TurnInput, apply_turn, replay_events, swap_moves
from sgo.game import GameConfig, new_game, step, territory
from sgo.oracle import oracle_apply_turn, outcome_digest
from sgo.records import (
    GameRecord,
    format_diagram,
    parse,
    parse_diagram,
    serialize,
)

SETTINGS = settings(max_examples=60, deadline=None, derandomize=True)


def random_position(size: int, seed: int, turns: int):
    """A reproducible position reached by random play from the empty board."""
    rng = random.Random(seed)
    b = make_board(size)
    for _ in range(turns):
        moves = [PASS] + b.empties()
        t = TurnInput(rng.choice(moves), rng.choice(moves))
        b = apply_turn(b, t).board
    return b


position_args = st.tuples(
    st.integers(min_value=2, max_value=5),
    st.integers(min_value=0, max_value=10_000),
    st.integers(min_value=0, max_value=12),
)


def random_input(b, seed: int) -> TurnInput:
    rng = random.Random(seed)
    moves = [PASS] + b.empties()
    return TurnInput(rng.choice(moves), rng.choice(moves))


@SETTINGS
@given(position_args, st.integers(min_value=0, max_value=10_000))
def test_color_symmetry(args, input_seed):
    b = random_position(*args)
    t = random_input(b, input_seed)
    out = apply_turn(b, t)
    flipped_out = apply_turn(color_flip(b), swap_moves(t))
    assert color_flip(out.board) == flipped_out.board
    assert (out.prisoners_black, out.prisoners_white) == (
        flipped_out.prisoners_white,
        flipped_out.prisoners_black,
    )


@SETTINGS
@given(position_args, st.integers(min_value=0, max_value=10_000))
def test_event_log_is_replay_sufficient(args, input_seed):
    b = random_position(*args)
    t = random_input(b, input_seed)
    out = apply_turn(b, t)
    replayed, by_black, by_white = replay_events(b, out.events)
    assert replayed == out.board
    assert (by_black, by_white) == (out.prisoners_black, out.prisoners_white)


@SETTINGS
@given(position_args, st.integers(min_value=0, max_value=10_000))
def test_resolution_postconditions(args, input_seed):
    b = random_position(*args)
    t = random_input(b, input_seed)
    out = apply_turn(b, t)
    out.board.check_registry()
    for g in compute_groups(out.board):
        if g.kind in (BLACK, WHITE):
            assert liberties(out.board, g), f"dead plain group survived: {g}"


@SETTINGS
@given(position_args, st.integers(min_value=0, max_value=10_000))
def test_engine_and_oracle_agree(args, input_seed):
    b = random_position(*args)
    t = random_input(b, input_seed)
    assert outcome_digest(b, apply_turn(b, t)) == outcome_digest(
        b, oracle_apply_turn(b, t)
    )


@SETTINGS
@given(position_args)
def test_fixture_round_trip(args):
    b = random_position(*args)
    assert parse_diagram(format_diagram(b)) == b


@SETTINGS
@given(position_args)
def test_flip_involution_on_reachable_positions(args):
    b = random_position(*args)
    assert color_flip(color_flip(b)) == b


@SETTINGS
@given(position_args)
def test_territory_is_color_symmetric(args):
    b = random_position(*args)
    black, white = territory(b)
    assert territory(color_flip(b)) == (white, black)


@SETTINGS
@given(
    st.integers(min_value=2, max_value=7),
    st.lists(st.integers(min_value=0, max_value=10_000), max_size=8),
)
def test_record_round_trip_on_played_games(size, move_seeds):
    g = new_game(GameConfig(size=size))
    for seed in move_seeds:
        if g.over:
            break
        rng = random.Random(seed)
        moves = [PASS] + g.board.empties()
        g = step(g, TurnInput(rng.choice(moves), rng.choice(moves)))
    from sgo.records import record_of, replay

    r = record_of(g)
    text = serialize(r)
    again = parse(text)
    assert serialize(again) == text
    replayed = replay(again)
    assert replayed.board == g.board
    assert replayed.turn == g.turn


@SETTINGS
@given(position_args)
def test_entangled_registry_matches_cells(args):
    b = random_position(*args)
    cells = {
        p
        for p in b.points()
        if b.cell(p) in (EBLACK, EWHITE)
    }
    registered = set()
    for black, white in b.pairs.values():
        registered |= black | white
    assert cells == registered
