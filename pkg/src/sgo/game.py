"""Game lifecycle: turn sequencing, prisoner tallies, termination, scoring.

A game ends when both players pass in the same turn, or when an optional
turn cap is reached (there is no repetition rule, so unattended play needs
a guard).  Scoring is territory plus prisoners with no komi; equal totals
are a tie.  The board is scored exactly as it stands: no dead-stone
negotiation, unresolved red stones count as walls for both colors, and
entangled stones count as their nominal colors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .board import (
    BLACK,
    DEFAULT_SIZE,
    EBLACK,
    EMPTY,
    EWHITE,
    RED,
    WHITE,
    Board,
    BoardError,
    Point,
    make_board,
    neighbors,
)
from .engine import TurnInput, TurnOutcome, apply_turn

BLACK_WINS = "black-wins"
WHITE_WINS = "white-wins"
TIE = "tie"


class GameError(ValueError):
    pass


class InvalidSetupError(GameError):
    pass


class GameOverError(GameError):
    pass


class GameNotOverError(GameError):
    pass


# A setup stone is (point, state) for plain and red stones, or
# (point, state, pair id) for entangled stones.
SetupStone = Union[tuple[Point, int], tuple[Point, int, int]]


@dataclass(frozen=True)
class GameConfig:
    size: int = DEFAULT_SIZE
    setup: tuple[SetupStone, ...] = ()
    max_turns: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "setup", tuple(tuple(s) for s in self.setup))
        if self.max_turns is not None and self.max_turns < 1:
            raise GameError("max_turns must be at least 1 when set")


def setup_board(cfg: GameConfig) -> Board:
    """Build the initial board from a config, validating the setup stones."""
    try:
        b = make_board(cfg.size)
    except BoardError as e:
        raise InvalidSetupError(str(e)) from e
    pairs: dict[int, tuple[set[Point], set[Point]]] = {}
    seen: set[Point] = set()
    for entry in cfg.setup:
        p, state = Point(*entry[0]), entry[1]
        pid = entry[2] if len(entry) > 2 else None
        if not b.in_bounds(p):
            raise InvalidSetupError(f"setup stone at {p} is out of bounds")
        if p in seen:
            raise InvalidSetupError(f"two setup stones on point {p}")
        seen.add(p)
        if state in (BLACK, WHITE, RED):
            b.set_cell(p, state)
        elif state in (EBLACK, EWHITE):
            if pid is None:
                raise InvalidSetupError(
                    f"entangled setup stone at {p} carries no pair id"
                )
            blacks, whites = pairs.setdefault(pid, (set(), set()))
            (blacks if state == EBLACK else whites).add(p)
        else:
            raise InvalidSetupError(f"setup stone at {p} has invalid state {state}")
    for pid in sorted(pairs):
        blacks, whites = pairs[pid]
        if not blacks or not whites:
            raise InvalidSetupError(f"pair {pid} is missing one of its sides")
        b.add_pair(blacks, whites, pid)
    b.check_registry()
    return b


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    board: Board
    turn: int = 0
    prisoners_black: int = 0  # stones captured by black
    prisoners_white: int = 0
    over: bool = False
    history: tuple[tuple[TurnInput, TurnOutcome], ...] = field(default=())


def new_game(cfg: GameConfig) -> GameState:
    return GameState(config=cfg, board=setup_board(cfg))


def step(g: GameState, t: TurnInput) -> GameState:
    """Resolve one turn into a successor state.

    Raises GameOverError once the game has ended; move validation errors
    from the turn engine pass through.
    """
    if g.over:
        raise GameOverError("the game is over")
    outcome = apply_turn(g.board, t)
    turn = g.turn + 1
    double_pass = t.black is None and t.white is None
    over = double_pass or (g.config.max_turns is not None and turn >= g.config.max_turns)
    return GameState(
        config=g.config,
        board=outcome.board,
        turn=turn,
        prisoners_black=g.prisoners_black + outcome.prisoners_black,
        prisoners_white=g.prisoners_white + outcome.prisoners_white,
        over=over,
        history=g.history + ((t, outcome),),
    )


def is_over(g: GameState) -> bool:
    return g.over


@dataclass(frozen=True)
class Score:
    black_territory: int
    white_territory: int
    black_prisoners: int
    white_prisoners: int

    @property
    def black_total(self) -> int:
        return self.black_territory + self.black_prisoners

    @property
    def white_total(self) -> int:
        return self.white_territory + self.white_prisoners

    @property
    def outcome(self) -> str:
        if self.black_total > self.white_total:
            return BLACK_WINS
        if self.white_total > self.black_total:
            return WHITE_WINS
        return TIE

    @property
    def winner(self) -> int | None:
        return {BLACK_WINS: BLACK, WHITE_WINS: WHITE, TIE: None}[self.outcome]


def territory(b: Board) -> tuple[int, int]:
    """(black, white) territory point counts.

    Each maximal empty region scores for a color iff all its plain and
    entangled walls are that color.  Red walls count for both colors at
    once, so they never tip a region either way; a region walled only by
    red stones, or by both colors, is neutral.
    """
    black = white = 0
    seen: set[Point] = set()
    for start in b.points():
        if start in seen or b.cell(start) != EMPTY:
            continue
        region: set[Point] = set()
        has_black = has_white = False
        stack = [start]
        while stack:
            p = stack.pop()
            if p in region:
                continue
            region.add(p)
            for n in neighbors(p, b.size):
                c = b.cell(n)
                if c == EMPTY:
                    if n not in region:
                        stack.append(n)
                elif c in (BLACK, EBLACK):
                    has_black = True
                elif c in (WHITE, EWHITE):
                    has_white = True
        seen |= region
        if has_black and not has_white:
            black += len(region)
        elif has_white and not has_black:
            white += len(region)
    return black, white


def score(g: GameState) -> Score:
    """Territory plus prisoners, no komi.  Only a finished game is scored."""
    if not g.over:
        raise GameNotOverError("cannot score a game in progress")
    bt, wt = territory(g.board)
    return Score(
        black_territory=bt,
        white_territory=wt,
        black_prisoners=g.prisoners_black,
        white_prisoners=g.prisoners_white,
    )
