"""Reference resolution and differential checking.

``oracle_apply_turn`` honors the same contract as the engine's
``apply_turn`` but shares none of its resolution code: chains grow by
repeated whole-board scans, liberties are recounted from scratch at every
step, and nothing is cached.  Slow and simple on purpose; the differential
harness compares the two implementations case by case on small boards,
where exhaustive enumeration is feasible.

Outcomes are compared by digest: the canonical fixture text of the result
board, the prisoner deltas, and the sorted event descriptions (entangled
pairs described by their stones, never by pair id, since the two
implementations may label pairs differently).
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field

from .board import (
    BLACK,
    EBLACK,
    EMPTY,
    EWHITE,
    RED,
    WHITE,
    Board,
    Point,
    color_flip,
    make_board,
    neighbors,
    opposite,
)
from .engine import (
    EntangleCreated,
    EResolved,
    Event,
    GroupCaptured,
    InvalidTurnError,
    MoveError,
    PlacedBlack,
    PlacedWhite,
    RedCreated,
    RedResolved,
    SuicideAbsorbedRed,
    TurnInput,
    TurnOutcome,
    apply_turn,
    swap_moves,
)
from .records import format_diagram, format_move, format_point

_COLOR_NAMES = {BLACK: "black", WHITE: "white", RED: "red"}


# -- digests -------------------------------------------------------------------


def board_fingerprint(b: Board) -> str:
    """Short stable identifier for a board position."""
    return hashlib.sha256(format_diagram(b).encode()).hexdigest()[:16]


def _points_str(pts) -> str:
    return ",".join(format_point(p) for p in sorted(pts))


def canonical_event_lines(pre: Board, events: tuple[Event, ...]) -> list[str]:
    """Sorted, pair-id-free descriptions of a turn's events.

    ``pre`` is the pre-turn board; its registry supplies the stones of
    pairs that existed before the turn and are resolved during it.
    """
    sides = dict(pre.pairs)
    lines = []
    for ev in events:
        if isinstance(ev, PlacedBlack):
            lines.append(f"placed black {format_point(ev.point)}")
        elif isinstance(ev, PlacedWhite):
            lines.append(f"placed white {format_point(ev.point)}")
        elif isinstance(ev, RedCreated):
            lines.append(f"red created {format_point(ev.point)}")
        elif isinstance(ev, EntangleCreated):
            sides[ev.pair_id] = (ev.black_stones, ev.white_stones)
            lines.append(
                f"entangled black={_points_str(ev.black_stones)}"
                f" white={_points_str(ev.white_stones)}"
            )
        elif isinstance(ev, RedResolved):
            lines.append(
                f"red resolved {format_point(ev.point)} to {_COLOR_NAMES[ev.to_color]}"
            )
        elif isinstance(ev, EResolved):
            blacks, whites = sides[ev.pair_id]
            lines.append(
                f"pair resolved black={_points_str(blacks)}"
                f" white={_points_str(whites)} used {_COLOR_NAMES[ev.resolved_color]}"
            )
        elif isinstance(ev, GroupCaptured):
            lines.append(
                f"captured {_COLOR_NAMES[ev.color]} {_points_str(ev.stones)}"
                f" by {_COLOR_NAMES[ev.captured_by]}"
            )
        elif isinstance(ev, SuicideAbsorbedRed):
            lines.append(
                f"suicide absorbed red {format_point(ev.point)}"
                f" dying {_COLOR_NAMES[ev.dying_color]}"
            )
        else:  # pragma: no cover
            raise TypeError(f"unknown event {ev!r}")
    return sorted(lines)


def outcome_digest(pre: Board, outcome: TurnOutcome) -> str:
    text = (
        format_diagram(outcome.board)
        + f"prisoners {outcome.prisoners_black} {outcome.prisoners_white}\n"
        + "\n".join(canonical_event_lines(pre, outcome.events))
    )
    return hashlib.sha256(text.encode()).hexdigest()


_FLIP_TOKEN = {"B": "W", "W": "B"}


def flip_fixture_text(text: str) -> str:
    """Fixture text of the color-flipped board, by token substitution.

    Flipping recolors stones in place, so scan order and hence canonical
    pair numbering are unchanged; only the color letters swap.
    """
    out_lines = []
    for line in text.splitlines():
        if line.startswith("size"):
            out_lines.append(line)
            continue
        tokens = []
        for tok in line.split(" "):
            if tok in _FLIP_TOKEN:
                tokens.append(_FLIP_TOKEN[tok])
            elif tok and tok[0] == "b":
                tokens.append("w" + tok[1:])
            elif tok and tok[0] == "w":
                tokens.append("b" + tok[1:])
            else:
                tokens.append(tok)
        out_lines.append(" ".join(tokens))
    return "\n".join(out_lines) + "\n"


# -- reference implementation ---------------------------------------------------


def _chain_from(b: Board, start: Point, ignore: frozenset[Point]) -> frozenset[Point]:
    """Grow the same-state chain of ``start`` by repeated whole-board scans."""
    kind = b.cell(start)
    members = {start}
    grew = True
    while grew:
        grew = False
        for p in b.points():
            if p in members or p in ignore or b.cell(p) != kind:
                continue
            if any(n in members for n in neighbors(p, b.size)):
                members.add(p)
                grew = True
    return frozenset(members)


def _chain_liberties(b: Board, chain, ignore: frozenset[Point]) -> int:
    libs = set()
    for p in chain:
        for n in neighbors(p, b.size):
            if b.cell(n) == EMPTY or n in ignore:
                libs.add(n)
    return len(libs)


def _doomed_plain_chains(
    b: Board, removed: frozenset[Point]
) -> list[tuple[int, frozenset[Point]]]:
    """Every plain chain with no liberties, pretending ``removed`` cells
    are already off the board."""
    out = []
    done: set[Point] = set()
    for p in b.points():
        if p in done or p in removed or b.cell(p) not in (BLACK, WHITE):
            continue
        chain = _chain_from(b, p, removed)
        done |= chain
        if _chain_liberties(b, chain, removed) == 0:
            out.append((b.cell(p), chain))
    out.sort(key=lambda kc: min(kc[1]))
    return out


def _touches(b: Board, chain, q: Point) -> bool:
    return any(n in chain for n in neighbors(q, b.size))


def _adjacent(b: Board, one, other) -> bool:
    return any(_touches(b, other, p) for p in one)


def _mutual_components(
    b: Board, doomed: list[tuple[int, frozenset[Point]]], removed: frozenset[Point]
) -> list[list[int]]:
    """Indices of doomed chains grouped into mixed-color components.

    A black chain and a white chain are linked if adjacent, if one red
    stone touches both, or if one registered pair has its white side on the
    black chain and its black side on the white chain.
    """
    reds = [p for p in b.points() if b.cell(p) == RED and p not in removed]
    linked: list[set[int]] = [{i} for i in range(len(doomed))]
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(range(len(doomed)), 2):
            if linked[i] is linked[j] or doomed[i][0] == doomed[j][0]:
                continue
            black_chain = doomed[i][1] if doomed[i][0] == BLACK else doomed[j][1]
            white_chain = doomed[j][1] if doomed[i][0] == BLACK else doomed[i][1]
            edge = _adjacent(b, doomed[i][1], doomed[j][1])
            if not edge:
                edge = any(
                    _touches(b, doomed[i][1], r) and _touches(b, doomed[j][1], r)
                    for r in reds
                )
            if not edge:
                for blacks, whites in b.pairs.values():
                    if any(_touches(b, black_chain, p) for p in whites) and any(
                        _touches(b, white_chain, p) for p in blacks
                    ):
                        edge = True
                        break
            if edge:
                merged = linked[i] | linked[j]
                for k in merged:
                    linked[k] = merged
                changed = True
    components = []
    for group in {id(s): s for s in linked}.values():
        if len({doomed[i][0] for i in group}) == 2:
            components.append(sorted(group))
    components.sort(key=lambda idxs: min(min(doomed[i][1]) for i in idxs))
    return components


def _would_be_suicide(pre: Board, r: Point, color: int) -> bool:
    trial = pre.copy()
    trial.set_cell(r, color)
    chain = _chain_from(trial, r, frozenset())
    return _chain_liberties(trial, chain, frozenset()) == 0


def _red_is_absorbed(
    pre: Board | None, red_at: Point | None, r: Point, color: int, chain
) -> bool:
    if pre is None or r != red_at:
        return False
    if any(pre.cell(p) != color for p in chain):
        return False
    libs = set()
    for p in chain:
        for n in neighbors(p, pre.size):
            if pre.cell(n) == EMPTY:
                libs.add(n)
    return libs == {r} and _would_be_suicide(pre, r, color)


def oracle_apply_turn(b: Board, t: TurnInput) -> TurnOutcome:
    """Same contract as the engine's apply_turn, independently implemented."""
    problems = {}
    for name, move in (("black", t.black), ("white", t.white)):
        if move is None:
            continue
        if not b.in_bounds(move):
            problems[name] = f"{move} is outside the {b.size}x{b.size} board"
        elif b.cell(move) != EMPTY:
            problems[name] = f"point {move} is occupied"
    if problems:
        raise InvalidTurnError(problems)

    work = b.copy()
    events: list[Event] = []
    if t.black is None and t.white is None:
        return TurnOutcome(work, (), 0, 0)

    red_at = None
    if t.black is not None and t.black == t.white:
        red_at = t.black
        work.set_cell(red_at, RED)
        events.append(RedCreated(red_at))
    else:
        if t.black is not None:
            work.set_cell(t.black, BLACK)
            events.append(PlacedBlack(t.black))
        if t.white is not None:
            work.set_cell(t.white, WHITE)
            events.append(PlacedWhite(t.white))

    pre = None
    if red_at is not None:
        pre = work.copy()
        pre.set_cell(red_at, EMPTY)

    taken = {BLACK: 0, WHITE: 0}
    while True:
        acted = False
        removed: frozenset[Point] = frozenset()
        removed_color: dict[Point, int] = {}
        while True:
            doomed = _doomed_plain_chains(work, removed)
            if not doomed:
                break
            acted = True
            in_component: set[int] = set()
            for comp in _mutual_components(work, doomed, removed):
                blacks = frozenset().union(
                    *(doomed[i][1] for i in comp if doomed[i][0] == BLACK)
                )
                whites = frozenset().union(
                    *(doomed[i][1] for i in comp if doomed[i][0] == WHITE)
                )
                pid = work.add_pair(blacks, whites)
                events.append(EntangleCreated(pid, blacks, whites))
                in_component |= set(comp)
            kills = [doomed[i] for i in range(len(doomed)) if i not in in_component]
            if not kills:
                continue

            newly_removed = set(removed)
            red_claims: dict[Point, set[int]] = {}
            absorbed: dict[Point, int] = {}
            pair_claims: dict[int, set[int]] = {}
            for color, chain in kills:
                killer = opposite(color)
                events.append(GroupCaptured(color, chain, killer))
                taken[killer] += len(chain)
                newly_removed |= chain
                for q in work.points():
                    if q in removed or q in chain or not _touches(work, chain, q):
                        continue
                    if work.cell(q) == RED:
                        if _red_is_absorbed(pre, red_at, q, color, chain):
                            absorbed[q] = color
                        else:
                            red_claims.setdefault(q, set()).add(killer)
                    elif work.cell(q) == (EBLACK if killer == BLACK else EWHITE):
                        pid = work.pair_id(q)
                        pair_claims.setdefault(pid, set()).add(killer)
            for r, color in sorted(absorbed.items()):
                events.append(SuicideAbsorbedRed(r, color))
                newly_removed.add(r)
                removed_color[r] = color
                taken[opposite(color)] += 1
            for r, claims in sorted(red_claims.items()):
                if r in absorbed or len(claims) != 1:
                    continue
                (to,) = claims
                work.set_cell(r, to)
                events.append(RedResolved(r, to))
            for pid, claims in sorted(pair_claims.items()):
                if len(claims) != 1 or pid not in work.pairs:
                    continue
                (used,) = claims
                work.dissolve_pair(pid)
                events.append(EResolved(pid, used))
            removed = frozenset(newly_removed)

        for p in removed:
            work.set_cell(p, EMPTY)

        for r in sorted(p for p in work.points() if work.cell(p) == RED):
            wall_colors = set()
            for n in neighbors(r, work.size):
                c = work.cell(n)
                if c == EMPTY:
                    wall_colors.add(EMPTY)
                elif c in (BLACK, EBLACK):
                    wall_colors.add(BLACK)
                elif c in (WHITE, EWHITE):
                    wall_colors.add(WHITE)
                else:
                    wall_colors.add(RED)
            if wall_colors == {BLACK} or wall_colors == {WHITE}:
                (by,) = wall_colors
                work.set_cell(r, by)
                events.append(GroupCaptured(RED, frozenset([r]), by))
                taken[by] += 1
                acted = True

        if not acted:
            break

    return TurnOutcome(work, tuple(events), taken[BLACK], taken[WHITE])


# -- enumeration and differential checking ---------------------------------------


def enumerate_turns(b: Board) -> list[TurnInput]:
    """Every turn input: each player passes or plays any empty point."""
    moves = [None] + sorted(b.empties())
    return [TurnInput(mb, mw) for mb in moves for mw in moves]


@dataclass(frozen=True)
class Mismatch:
    kind: str  # "oracle" or "symmetry"
    fingerprint: str
    turn_input: TurnInput
    engine_digest: str
    oracle_digest: str

    def line(self) -> str:
        moves = f"B {format_move(self.turn_input.black)} W {format_move(self.turn_input.white)}"
        return (
            f"MISMATCH {self.fingerprint} [{self.kind}] {moves}"
            f" engine={self.engine_digest} other={self.oracle_digest}"
        )


@dataclass
class OracleReport:
    cases_checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        out = [m.line() for m in self.mismatches]
        out.append(
            f"checked {self.cases_checked} cases, {len(self.mismatches)} mismatches"
        )
        return out


def _check_case(b: Board, t: TurnInput, fp: str, report: OracleReport, sym: bool):
    engine_out = apply_turn(b, t)
    oracle_out = oracle_apply_turn(b, t)
    ed = outcome_digest(b, engine_out)
    od = outcome_digest(b, oracle_out)
    if ed != od:
        report.mismatches.append(Mismatch("oracle", fp, t, ed, od))
    if sym:
        mirror = apply_turn(color_flip(b), swap_moves(t))
        same_board = flip_fixture_text(format_diagram(engine_out.board)) == format_diagram(
            mirror.board
        )
        same_count = (
            engine_out.prisoners_black == mirror.prisoners_white
            and engine_out.prisoners_white == mirror.prisoners_black
        )
        if not (same_board and same_count):
            report.mismatches.append(
                Mismatch("symmetry", fp, t, ed, outcome_digest(color_flip(b), mirror))
            )
    return engine_out


def differential_check(
    size: int,
    depth: int = 4,
    sample_seed: int = 0,
    budget: int | None = None,
) -> OracleReport:
    """Compare engine and oracle over many positions.

    With no budget: exhaustive breadth-first walk of every distinct
    position reachable from the empty board in at most ``depth`` turns,
    checking every possible input at positions shallower than ``depth``
    (sizes above 4 are refused; the state space explodes).  With a
    budget: seeded random playouts, checking one random input per visited
    position, until ``budget`` positions have been checked.

    ``cases_checked`` counts distinct positions visited, so a depth of
    zero reports one case (the root) and no comparisons.  Color symmetry
    is verified at every comparison in both modes.
    """
    report = OracleReport()
    if budget is None:
        if size > 4:
            raise ValueError("exhaustive mode supports sizes up to 4")
        root = make_board(size)
        frontier = {format_diagram(root): root}
        seen = set(frontier)
        for _ in range(depth):
            discovered: dict[str, Board] = {}
            for fp_text in sorted(frontier):
                b = frontier[fp_text]
                fp = board_fingerprint(b)
                sym = fp_text <= flip_fixture_text(fp_text)
                for t in enumerate_turns(b):
                    out = _check_case(b, t, fp, report, sym)
                    key = format_diagram(out.board)
                    if key not in seen:
                        seen.add(key)
                        discovered[key] = out.board
            frontier = discovered
        report.cases_checked = len(seen)
        return report

    rng = random.Random(sample_seed)
    max_len = 3 * size * size
    while report.cases_checked < budget:
        b = make_board(size)
        for _ in range(max_len):
            if report.cases_checked >= budget:
                break
            moves = [None] + sorted(b.empties())
            t = TurnInput(rng.choice(moves), rng.choice(moves))
            report.cases_checked += 1
            out = _check_case(b, t, board_fingerprint(b), report, sym=True)
            if t.black is None and t.white is None:
                break
            b = out.board
    return report
