"""Simultaneous-turn resolution.

Both players move at once.  The placement phase writes the two moves (one
red stone if they chose the same point), then the resolution fixpoint runs:

* plain groups at zero liberties are capture candidates;
* opposite-colored candidates that seal each other (directly adjacent, or
  through a single shared red stone, or through one entangled pair whose two
  sides would be claimed by both kills) become an entangled pair instead of
  dying;
* remaining candidates die; every red stone and every killer-colored
  entangled group adjacent to a dying group is "used" by that kill and
  resolves to the killer's color, except a red stone created this turn that
  completed a suicide, which is absorbed into the dying group and removed
  with it as a prisoner;
* conversions are applied before anything is removed, and newly sealed
  plain groups join the kill set; a group whose only missing liberties are
  cells already marked dead is not newly sealed, since removal will free
  them;
* dead stones come off the board all at once, one prisoner each for the
  opposing color; finally a red stone left with no liberties and walls of a
  single color is captured by that color and replaced by a plain stone.

There is no ko, no superko, and no repetition rule of any kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

from .board import (
    BLACK,
    EBLACK,
    EMPTY,
    EWHITE,
    RED,
    WHITE,
    Board,
    Group,
    Point,
    neighbors,
    opposite,
)

# A move is a Point or None for a pass.
Move = Union[Point, None]
PASS: Move = None


class TurnInput(NamedTuple):
    black: Move
    white: Move


def swap_moves(t: TurnInput) -> TurnInput:
    return TurnInput(black=t.white, white=t.black)


class MoveError(ValueError):
    """A single move rejected by validation."""


class OccupiedPointError(MoveError):
    pass


class MoveOutOfBoundsError(MoveError):
    pass


class InvalidTurnError(ValueError):
    """One or both submitted moves are invalid; names the offending colors."""

    def __init__(self, problems: dict[str, str]):
        self.problems = dict(problems)
        detail = "; ".join(f"{color}: {msg}" for color, msg in sorted(problems.items()))
        super().__init__(f"invalid move ({detail})")


# -- events -----------------------------------------------------------------


@dataclass(frozen=True)
class PlacedBlack:
    point: Point


@dataclass(frozen=True)
class PlacedWhite:
    point: Point


@dataclass(frozen=True)
class RedCreated:
    point: Point


@dataclass(frozen=True)
class EntangleCreated:
    pair_id: int
    black_stones: frozenset[Point]
    white_stones: frozenset[Point]


@dataclass(frozen=True)
class RedResolved:
    point: Point
    to_color: int


@dataclass(frozen=True)
class EResolved:
    pair_id: int
    resolved_color: int  # color of the side that was used in a kill


@dataclass(frozen=True)
class GroupCaptured:
    """Removal of a dead group, or capture of an enclosed red stone.

    ``color`` is the state of the captured stones.  For BLACK/WHITE the
    stones leave the board; for RED the single cell is replaced by a plain
    stone of ``captured_by``.  Either way ``captured_by`` is credited one
    prisoner per stone.
    """

    color: int
    stones: frozenset[Point]
    captured_by: int


@dataclass(frozen=True)
class SuicideAbsorbedRed:
    point: Point
    dying_color: int


Event = Union[
    PlacedBlack,
    PlacedWhite,
    RedCreated,
    EntangleCreated,
    RedResolved,
    EResolved,
    GroupCaptured,
    SuicideAbsorbedRed,
]


@dataclass(frozen=True)
class TurnOutcome:
    board: Board
    events: tuple[Event, ...]
    prisoners_black: int  # stones captured by black this turn
    prisoners_white: int


# -- validation ---------------------------------------------------------------


def validate_move(b: Board, m: Move) -> None:
    """Raise unless the move is legal: pass, or placement on an empty cell.

    Occupancy is the only placement rule; suicide cannot be forbidden here
    because a move's safety depends on the opponent's hidden simultaneous
    move.
    """
    if m is None:
        return
    if not b.in_bounds(m):
        raise MoveOutOfBoundsError(f"{m} is outside the {b.size}x{b.size} board")
    if b.cell(m) != EMPTY:
        raise OccupiedPointError(f"point {m} is occupied")


def is_valid_move(b: Board, m: Move) -> bool:
    try:
        validate_move(b, m)
    except MoveError:
        return False
    return True


# -- resolution ----------------------------------------------------------------


def _sealed_plain_groups(b: Board, dead: set[Point]) -> list[Group]:
    """Plain groups with zero liberties, with dead cells counted as empty.

    Dead stones are still physically on the board, but a group that would
    regain a liberty once they are removed is not a capture candidate; this
    is what lets the used side of a resolved pair survive while its former
    partner, walled in by live stones only, dies.
    """
    size = b.size
    grid = b._cells
    seen: set[Point] = set()
    out: list[Group] = []
    for p in b.points():
        if p in seen or p in dead:
            continue
        c = grid[p.row * size + p.col]
        if c != BLACK and c != WHITE:
            continue
        chain: set[Point] = set()
        libs = 0
        stack = [p]
        while stack:
            q = stack.pop()
            if q in chain:
                continue
            chain.add(q)
            for n in neighbors(q, size):
                state = grid[n.row * size + n.col]
                if n in dead or state == EMPTY:
                    libs += 1
                elif state == c and n not in chain:
                    stack.append(n)
        seen |= chain
        if libs == 0:
            out.append(Group(c, frozenset(chain)))
    out.sort(key=lambda g: min(g.stones))
    return out


def _adjacent_cells(b: Board, g: Group, dead: set[Point]) -> list[Point]:
    pts = set()
    for p in g.stones:
        for n in neighbors(p, b.size):
            if n not in g.stones and n not in dead:
                pts.add(n)
    return sorted(pts)


def classify_mutual(
    candidates: list[Group], b: Board, dead: frozenset[Point] | set[Point] = frozenset()
) -> list[tuple[Group, ...]]:
    """Connected components of the mutual-kill graph that contain both colors.

    Edges join a black candidate and a white candidate when they are
    4-adjacent, when a single red stone touches both, or when one entangled
    pair would be claimed by both kills (its white side touches the black
    candidate and its black side the white candidate).  Components made of
    one color only are plain kills, not mutual captures.
    """
    n = len(candidates)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    touch_red: list[set[Point]] = []
    claim_pair: list[set[int]] = []
    for g in candidates:
        reds: set[Point] = set()
        pairs: set[int] = set()
        used_kind = EBLACK if g.kind == WHITE else EWHITE
        for q in _adjacent_cells(b, g, set(dead)):
            c = b.cell(q)
            if c == RED:
                reds.add(q)
            elif c == used_kind:
                pid = b.pair_id(q)
                if pid is not None:
                    pairs.add(pid)
        touch_red.append(reds)
        claim_pair.append(pairs)

    for i in range(n):
        for j in range(i + 1, n):
            gi, gj = candidates[i], candidates[j]
            if gi.kind == gj.kind:
                continue
            adjacent = any(
                q in gj.stones for p in gi.stones for q in neighbors(p, b.size)
            )
            if adjacent or touch_red[i] & touch_red[j] or claim_pair[i] & claim_pair[j]:
                union(i, j)

    comps: dict[int, list[Group]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(candidates[i])
    out = [
        tuple(members)
        for members in comps.values()
        if len({g.kind for g in members}) == 2
    ]
    out.sort(key=lambda comp: min(min(g.stones) for g in comp))
    return out


def _suicide_absorbed(
    pre: Board | None, red_at: Point | None, r: Point, g: Group
) -> bool:
    """Whether a red stone created this turn completed a suicide of ``g``.

    The test runs on the pre-placement board: had ``g``'s own color played
    ``r`` as a plain stone, would the merged group have zero liberties?  If
    so the red stone is absorbed into the dying group and removed with it as
    one more prisoner.  If the stone would instead extend the group to
    safety, that placement was a capture attempt, not a suicide, and the red
    resolves to the killer's color like any other participant.
    """
    if pre is None or r != red_at:
        return False
    c = g.kind
    for q in g.stones:
        if pre.cell(q) != c:
            return False
    libs: set[Point] = set()
    for q in g.stones:
        for n in neighbors(q, pre.size):
            if pre.cell(n) == EMPTY:
                libs.add(n)
    if libs != {r}:
        return False
    hyp = pre.copy()
    hyp.set_cell(r, c)
    chain: set[Point] = set()
    stack = [r]
    while stack:
        q = stack.pop()
        if q in chain:
            continue
        chain.add(q)
        for n in neighbors(q, hyp.size):
            cell = hyp.cell(n)
            if cell == EMPTY:
                return False
            if cell == c and n not in chain:
                stack.append(n)
    return True


def _capture_enclosed_reds(
    b: Board, events: list[Event], credit: list[int]
) -> bool:
    """Replace zero-liberty red stones walled in by a single color.

    Entangled stones count as their nominal color; a red neighbor (or walls
    of both colors) leaves the stone red.
    """
    captured = False
    for p in sorted(q for q in b.points() if b.cell(q) == RED):
        walls: set[int] = set()
        open_ = False
        for n in neighbors(p, b.size):
            c = b.cell(n)
            if c == EMPTY:
                open_ = True
                break
            if c in (BLACK, EBLACK):
                walls.add(BLACK)
            elif c in (WHITE, EWHITE):
                walls.add(WHITE)
            else:
                walls.add(RED)
        if open_ or len(walls) != 1 or RED in walls:
            continue
        by = walls.pop()
        b.set_cell(p, by)
        events.append(GroupCaptured(RED, frozenset([p]), by))
        credit[0 if by == BLACK else 1] += 1
        captured = True
    return captured


def resolve_captures(
    b: Board,
    placed_black: Point | None = None,
    placed_white: Point | None = None,
    red_created_at: Point | None = None,
) -> tuple[Board, tuple[Event, ...], int, int]:
    """Run the resolution fixpoint on a board whose placements are already
    written.  Returns (board, events, prisoners to black, prisoners to white).
    """
    board = b.copy()
    events: list[Event] = []
    credit = [0, 0]  # prisoners taken by black, by white

    pre: Board | None = None
    if red_created_at is not None:
        pre = board.copy()
        pre.set_cell(red_created_at, EMPTY)

    guard = board.size ** 4 + 16
    while True:
        progress = False
        dead: dict[Point, int] = {}

        while True:
            candidates = _sealed_plain_groups(board, set(dead))
            if not candidates:
                break
            entangled: set[Group] = set()
            for comp in classify_mutual(candidates, board, frozenset(dead)):
                blacks = frozenset().union(*(g.stones for g in comp if g.kind == BLACK))
                whites = frozenset().union(*(g.stones for g in comp if g.kind == WHITE))
                pid = board.add_pair(blacks, whites)
                events.append(EntangleCreated(pid, blacks, whites))
                entangled.update(comp)
                progress = True
            kills = [g for g in candidates if g not in entangled]
            if not kills:
                continue

            red_absorb: dict[Point, int] = {}
            red_demand: dict[Point, set[int]] = {}
            pair_demand: dict[int, set[int]] = {}
            for g in kills:
                killer = opposite(g.kind)
                events.append(GroupCaptured(g.kind, g.stones, killer))
                credit[0 if killer == BLACK else 1] += len(g.stones)
                for p in g.stones:
                    dead[p] = g.kind
                used_kind = EBLACK if killer == BLACK else EWHITE
                for q in _adjacent_cells(board, g, set()):
                    if q in dead:
                        continue
                    c = board.cell(q)
                    if c == RED:
                        if _suicide_absorbed(pre, red_created_at, q, g):
                            red_absorb[q] = g.kind
                        else:
                            red_demand.setdefault(q, set()).add(killer)
                    elif c == used_kind:
                        pid = board.pair_id(q)
                        if pid is not None:
                            pair_demand.setdefault(pid, set()).add(killer)

            for r in sorted(red_absorb):
                dying = red_absorb[r]
                events.append(SuicideAbsorbedRed(r, dying))
                dead[r] = dying
                credit[0 if opposite(dying) == BLACK else 1] += 1
            for r in sorted(red_demand):
                if r in red_absorb:
                    continue
                want = red_demand[r]
                if len(want) == 1:
                    (to,) = want
                    board.set_cell(r, to)
                    events.append(RedResolved(r, to))
                # opposing claims in one pass: the stone stays red
            for pid in sorted(pair_demand):
                want = pair_demand[pid]
                if len(want) == 1 and pid in board.pairs:
                    (used,) = want
                    board.dissolve_pair(pid)
                    events.append(EResolved(pid, used))
                # opposing claims: the pair stays entangled
            progress = True

        for p in dead:
            board.set_cell(p, EMPTY)

        if _capture_enclosed_reds(board, events, credit):
            progress = True

        if not progress:
            break
        guard -= 1
        if guard < 0:  # pragma: no cover - resolution is monotone
            raise RuntimeError("resolution failed to reach a fixpoint")

    return board, tuple(events), credit[0], credit[1]


def apply_turn(b: Board, t: TurnInput) -> TurnOutcome:
    """Resolve one simultaneous turn into a new board and an event log.

    Both moves must pass :func:`validate_move`; placing on the same empty
    point is valid for both and creates a red stone.  A double pass returns
    the board unchanged (ending the game is the match layer's concern).
    """
    problems: dict[str, str] = {}
    for name, move in (("black", t.black), ("white", t.white)):
        try:
            validate_move(b, move)
        except MoveError as e:
            problems[name] = str(e)
    if problems:
        raise InvalidTurnError(problems)

    board = b.copy()
    events: list[Event] = []
    if t.black is None and t.white is None:
        return TurnOutcome(board, (), 0, 0)

    red_at: Point | None = None
    if t.black is not None and t.black == t.white:
        red_at = t.black
        board.set_cell(red_at, RED)
        events.append(RedCreated(red_at))
    else:
        if t.black is not None:
            board.set_cell(t.black, BLACK)
            events.append(PlacedBlack(t.black))
        if t.white is not None:
            board.set_cell(t.white, WHITE)
            events.append(PlacedWhite(t.white))

    resolved, more, by_black, by_white = resolve_captures(
        board, t.black, t.white, red_at
    )
    return TurnOutcome(resolved, tuple(events) + more, by_black, by_white)


def replay_events(b: Board, events: Iterable[Event]) -> tuple[Board, int, int]:
    """Fold an event list over a pre-turn board.

    The event log is replay-sufficient: this reproduces the post-turn board
    and the prisoner deltas without rerunning any resolution logic.
    """
    board = b.copy()
    credit = [0, 0]
    for ev in events:
        if isinstance(ev, PlacedBlack):
            board.set_cell(ev.point, BLACK)
        elif isinstance(ev, PlacedWhite):
            board.set_cell(ev.point, WHITE)
        elif isinstance(ev, RedCreated):
            board.set_cell(ev.point, RED)
        elif isinstance(ev, EntangleCreated):
            board.add_pair(ev.black_stones, ev.white_stones, ev.pair_id)
        elif isinstance(ev, RedResolved):
            board.set_cell(ev.point, ev.to_color)
        elif isinstance(ev, EResolved):
            board.dissolve_pair(ev.pair_id)
        elif isinstance(ev, SuicideAbsorbedRed):
            board.set_cell(ev.point, EMPTY)
            credit[0 if opposite(ev.dying_color) == BLACK else 1] += 1
        elif isinstance(ev, GroupCaptured):
            if ev.color == RED:
                for p in ev.stones:
                    board.set_cell(p, ev.captured_by)
            else:
                for p in ev.stones:
                    board.set_cell(p, EMPTY)
            credit[0 if ev.captured_by == BLACK else 1] += len(ev.stones)
        else:  # pragma: no cover
            raise TypeError(f"unknown event {ev!r}")
    return board, credit[0], credit[1]
