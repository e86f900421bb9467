"""Baseline bots and a seeded self-play harness.

Policies are pure values: the move for a given game state is a
deterministic function of (policy, state, color, salt), derived by hashing
all of them into a per-call random stream.  Equal seeds and equal states
therefore always produce equal moves, no matter how many games ran in
between.

Self-play derives one salt per game from the master seed (salt i is the
SHA-256 of "master:i"), so batches are reproducible game by game and the
result of game i does not depend on how many games preceded it.
"""

from __future__ import annotations

import csv
import hashlib
import io
import random
from dataclasses import dataclass

from .board import BLACK, WHITE, Board, Point, compute_groups, liberties, opposite
from .engine import EntangleCreated, Move, RedCreated, TurnInput
from .game import GameConfig, GameState, Score, new_game, score, step
from .records import format_diagram


@dataclass(frozen=True)
class UniformRandom:
    """Pass with probability ``pass_prob``; otherwise play a uniformly
    random empty point.  Passes when the board is full."""

    seed: int = 0
    pass_prob: float = 0.01


@dataclass(frozen=True)
class GreedyCapture:
    """Play the empty point that minimizes the liberty count some enemy
    plain group would be left with; random placement when no enemy plain
    group is adjacent to any empty point."""

    seed: int = 0


BotPolicy = UniformRandom | GreedyCapture


def _call_rng(policy: BotPolicy, g: GameState, color: int, salt: int) -> random.Random:
    material = "|".join(
        [
            type(policy).__name__,
            str(policy.seed),
            str(salt),
            str(g.turn),
            "black" if color == BLACK else "white",
            format_diagram(g.board),
        ]
    )
    digest = hashlib.sha256(material.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _greedy_candidates(b: Board, color: int) -> dict[Point, int]:
    """empty point -> fewest liberties an adjacent enemy plain group would
    be left with after playing there."""
    enemy = opposite(color)
    out: dict[Point, int] = {}
    for g in compute_groups(b):
        if g.kind != enemy:
            continue
        libs = liberties(b, g)
        for p in libs:
            left = len(libs) - 1
            if p not in out or left < out[p]:
                out[p] = left
    return out


def pick_move(policy: BotPolicy, g: GameState, perspective: int, salt: int = 0) -> Move:
    """A valid move for ``perspective`` under the policy's distribution."""
    rng = _call_rng(policy, g, perspective, salt)
    empties = g.board.empties()
    if not empties:
        return None
    if isinstance(policy, UniformRandom):
        if rng.random() < policy.pass_prob:
            return None
        return rng.choice(empties)
    if isinstance(policy, GreedyCapture):
        targets = _greedy_candidates(g.board, perspective)
        if not targets:
            return rng.choice(empties)
        rng.shuffle(empties)
        return min((p for p in empties if p in targets), key=lambda p: targets[p])
    raise TypeError(f"unknown policy {policy!r}")


@dataclass(frozen=True)
class GameRow:
    index: int
    length: int
    winner: str  # "black" | "white" | "tie"
    prisoners_black: int
    prisoners_white: int
    red_created: int
    entanglements: int


@dataclass(frozen=True)
class SelfPlayStats:
    games: int
    rows: tuple[GameRow, ...]

    @property
    def mean_game_length(self) -> float:
        return sum(r.length for r in self.rows) / self.games

    @property
    def red_created_per_game(self) -> float:
        return sum(r.red_created for r in self.rows) / self.games

    @property
    def entanglements_per_game(self) -> float:
        return sum(r.entanglements for r in self.rows) / self.games

    @property
    def win_rate_black(self) -> float:
        return sum(1 for r in self.rows if r.winner == "black") / self.games

    @property
    def win_rate_white(self) -> float:
        return sum(1 for r in self.rows if r.winner == "white") / self.games

    @property
    def tie_rate(self) -> float:
        return sum(1 for r in self.rows if r.winner == "tie") / self.games

    def csv(self) -> str:
        """One CSV row per game plus a commented summary block."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            [
                "index",
                "length",
                "winner",
                "prisoners_black",
                "prisoners_white",
                "red_created",
                "entanglements",
            ]
        )
        for r in self.rows:
            writer.writerow(
                [
                    r.index,
                    r.length,
                    r.winner,
                    r.prisoners_black,
                    r.prisoners_white,
                    r.red_created,
                    r.entanglements,
                ]
            )
        buf.write(f"# games {self.games}\n")
        buf.write(f"# mean_game_length {self.mean_game_length:.4f}\n")
        buf.write(f"# red_created_per_game {self.red_created_per_game:.4f}\n")
        buf.write(f"# entanglements_per_game {self.entanglements_per_game:.4f}\n")
        buf.write(f"# win_rate_black {self.win_rate_black:.4f}\n")
        buf.write(f"# win_rate_white {self.win_rate_white:.4f}\n")
        buf.write(f"# tie_rate {self.tie_rate:.4f}\n")
        buf.write('# per-game salt: sha256("<seed>:<index>") of the master seed\n')
        return buf.getvalue()


def game_salt(master_seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{master_seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def play_one(
    size: int,
    policy_black: BotPolicy,
    policy_white: BotPolicy,
    max_turns: int,
    salt: int,
) -> tuple[GameState, Score, int, int]:
    """One complete bot game: (final state, score, reds created, entanglements)."""
    state = new_game(GameConfig(size=size, max_turns=max_turns))
    reds = entangles = 0
    while not state.over:
        t = TurnInput(
            pick_move(policy_black, state, BLACK, salt),
            pick_move(policy_white, state, WHITE, salt),
        )
        state = step(state, t)
        _, outcome = state.history[-1]
        reds += sum(1 for e in outcome.events if isinstance(e, RedCreated))
        entangles += sum(1 for e in outcome.events if isinstance(e, EntangleCreated))
    return state, score(state), reds, entangles


def selfplay(
    size: int,
    policy_black: BotPolicy,
    policy_white: BotPolicy,
    games: int,
    max_turns: int,
    seed: int,
) -> SelfPlayStats:
    """Run ``games`` independent seeded games and aggregate per-game rows."""
    if games < 1 or max_turns < 1:
        raise ValueError("games and max_turns must be at least 1")
    rows = []
    for i in range(games):
        salt = game_salt(seed, i)
        state, final, reds, entangles = play_one(
            size, policy_black, policy_white, max_turns, salt
        )
        winner = {None: "tie", BLACK: "black", WHITE: "white"}[final.winner]
        rows.append(
            GameRow(
                index=i,
                length=state.turn,
                winner=winner,
                prisoners_black=state.prisoners_black,
                prisoners_white=state.prisoners_white,
                red_created=reds,
                entanglements=entangles,
            )
        )
    return SelfPlayStats(games=games, rows=tuple(rows))
