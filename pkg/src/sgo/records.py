"""Textual formats: coordinates, board fixtures, and full game records.

Coordinates use Go convention: columns are letters with "I" skipped, rows
are 1-based counting from the bottom, so "C4" is column C, fourth row up.

The board fixture is a grid dump: a "size N" line, then N rows printed top
row first, each row N space-separated cell codes ("." empty, "B" black,
"W" white, "R" red, "b<k>"/"w<k>" the two sides of entangled pair k).
Output is canonical: pair ids are renumbered 1..n in scan order, so equal
boards always print byte-identically.

A game record is line-oriented and append-friendly:

    sgo 1
    size 7
    setup
    B C5
    w1 D5
    b1 D4
    1. B C4 W C4
    2. B pass W E3

Keywords and move labels are case-insensitive; "#" starts a comment.
Serialized output is canonical (uppercase coordinates, lowercase "pass",
setup sorted by column then row).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .board import (
    BLACK,
    EBLACK,
    EMPTY,
    EWHITE,
    MAX_SIZE,
    MIN_SIZE,
    RED,
    WHITE,
    Board,
    Point,
    make_board,
)
from .engine import Move, TurnInput
from .game import GameConfig, GameState, SetupStone, new_game
from .game import step as game_step

COLUMN_LETTERS = "ABCDEFGHJKLMNOPQRSTUVWXYZ"  # "I" is skipped


class RecordError(ValueError):
    pass


class CoordinateError(RecordError):
    pass


class DiagramError(RecordError):
    pass


@dataclass(frozen=True)
class ParseIssue:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class RecordParseError(RecordError):
    def __init__(self, issues: list[ParseIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class ReplayError(RecordError):
    def __init__(self, turn: int, cause: Exception):
        self.turn = turn
        self.cause = cause
        super().__init__(f"turn {turn}: {cause}")


# -- coordinates ------------------------------------------------------------


def format_point(p: Point) -> str:
    return f"{COLUMN_LETTERS[p.col]}{p.row + 1}"


def parse_point(text: str, size: int) -> Point:
    m = re.fullmatch(r"([A-Za-z])(\d{1,2})", text)
    if not m:
        raise CoordinateError(f"malformed coordinate {text!r}")
    letter = m.group(1).upper()
    col = COLUMN_LETTERS.find(letter)
    if col < 0:
        raise CoordinateError(f"column letter {letter!r} is not used")
    row = int(m.group(2)) - 1
    if not (0 <= col < size and 0 <= row < size):
        raise CoordinateError(f"{text} is outside a {size}x{size} board")
    return Point(col, row)


def format_move(m: Move) -> str:
    return "pass" if m is None else format_point(m)


def parse_move(text: str, size: int) -> Move:
    if text.lower() == "pass":
        return None
    return parse_point(text, size)


# -- cell codes --------------------------------------------------------------

_PLAIN_CODES = {".": EMPTY, "B": BLACK, "W": WHITE, "R": RED}
_CODE_NAMES = {EMPTY: ".", BLACK: "B", WHITE: "W", RED: "R"}


def format_code(state: int, pair_id: int | None = None) -> str:
    if state == EBLACK:
        return f"b{pair_id}"
    if state == EWHITE:
        return f"w{pair_id}"
    return _CODE_NAMES[state]


def parse_code(token: str) -> tuple[int, int | None]:
    """Cell code -> (state, pair id or None)."""
    if token in _PLAIN_CODES:
        return _PLAIN_CODES[token], None
    m = re.fullmatch(r"([bw])([1-9]\d*)", token)
    if not m:
        raise DiagramError(f"unknown cell code {token!r}")
    state = EBLACK if m.group(1) == "b" else EWHITE
    return state, int(m.group(2))


# -- board fixtures -----------------------------------------------------------


def format_diagram(b: Board) -> str:
    """Canonical fixture text for a board; pair ids renumbered in scan order."""
    renumber: dict[int, int] = {}
    size = b.size
    grid = b._cells
    lines = [f"size {size}"]
    for row in range(size - 1, -1, -1):
        base = row * size
        cells = []
        for col in range(size):
            state = grid[base + col]
            if state in (EBLACK, EWHITE):
                pid = b.pair_id(Point(col, row))
                label = renumber.setdefault(pid, len(renumber) + 1)
                cells.append(format_code(state, label))
            else:
                cells.append(_CODE_NAMES[state])
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> Board:
    """Parse fixture text; blank lines and "#" comments are ignored."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise DiagramError("empty fixture")
    m = re.fullmatch(r"size\s+(\d+)", lines[0], re.IGNORECASE)
    if not m:
        raise DiagramError(f"fixture must start with a size line, got {lines[0]!r}")
    size = int(m.group(1))
    if not (MIN_SIZE <= size <= MAX_SIZE):
        raise DiagramError(f"size {size} out of range [{MIN_SIZE}, {MAX_SIZE}]")
    rows = lines[1:]
    if len(rows) != size:
        raise DiagramError(f"expected {size} rows, got {len(rows)}")
    b = make_board(size)
    pairs: dict[int, tuple[set[Point], set[Point]]] = {}
    for i, line in enumerate(rows):
        row = size - 1 - i
        tokens = line.split()
        if len(tokens) != size:
            raise DiagramError(f"row {i + 2}: expected {size} cells, got {len(tokens)}")
        for col, token in enumerate(tokens):
            state, pid = parse_code(token)
            p = Point(col, row)
            if state in (EBLACK, EWHITE):
                blacks, whites = pairs.setdefault(pid, (set(), set()))
                (blacks if state == EBLACK else whites).add(p)
            elif state != EMPTY:
                b.set_cell(p, state)
    for pid in sorted(pairs):
        blacks, whites = pairs[pid]
        if not blacks or not whites:
            raise DiagramError(f"pair {pid} is missing one of its sides")
        b.add_pair(blacks, whites, pid)
    return b


# -- game records --------------------------------------------------------------


def _normalize_setup(
    entries: Iterable[tuple[Point, int, int | None]],
) -> tuple[tuple[Point, int, int | None], ...]:
    ordered = sorted(entries, key=lambda e: (e[0].col, e[0].row))
    renumber: dict[int, int] = {}
    out = []
    for p, state, pid in ordered:
        if state in (EBLACK, EWHITE):
            if pid is None:
                raise RecordError(f"entangled setup stone at {p} carries no pair id")
            pid = renumber.setdefault(pid, len(renumber) + 1)
        else:
            pid = None
        out.append((Point(*p), state, pid))
    return tuple(out)


@dataclass(frozen=True)
class GameRecord:
    """A complete game: size, setup stones, and the ordered move pairs.

    Setup is normalized on construction (sorted by column then row, pair
    ids renumbered from 1), making equality and serialization canonical.
    """

    size: int
    setup: tuple[tuple[Point, int, int | None], ...] = ()
    turns: tuple[tuple[Move, Move], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "setup", _normalize_setup(self.setup))
        object.__setattr__(
            self, "turns", tuple((b, w) for b, w in self.turns)
        )

    def config(self) -> GameConfig:
        stones: list[SetupStone] = []
        for p, state, pid in self.setup:
            stones.append((p, state) if pid is None else (p, state, pid))
        return GameConfig(size=self.size, setup=tuple(stones))


def serialize(r: GameRecord) -> str:
    lines = ["sgo 1", f"size {r.size}"]
    if r.setup:
        lines.append("setup")
        for p, state, pid in r.setup:
            lines.append(f"{format_code(state, pid)} {format_point(p)}")
    for i, (black, white) in enumerate(r.turns, start=1):
        lines.append(f"{i}. B {format_move(black)} W {format_move(white)}")
    return "\n".join(lines) + "\n"


_TURN_RE = re.compile(r"(\d+)\.\s+[Bb]\s+(\S+)\s+[Ww]\s+(\S+)")
_SETUP_RE = re.compile(r"(\S+)\s+(\S+)")


def parse(text: str) -> GameRecord:
    """Strict parse; raises RecordParseError carrying every issue found."""
    issues: list[ParseIssue] = []

    def issue(lineno: int, message: str, token: str | None = None) -> None:
        column = 1
        if token is not None:
            found = lines_raw[lineno - 1].find(token)
            column = found + 1 if found >= 0 else 1
        issues.append(ParseIssue(lineno, column, message))

    lines_raw = text.splitlines()
    meaningful: list[tuple[int, str]] = []
    for i, raw in enumerate(lines_raw, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            meaningful.append((i, stripped))

    idx = 0
    header = re.fullmatch(
        r"sgo\s+(\S+)", meaningful[idx][1], re.IGNORECASE
    ) if idx < len(meaningful) else None
    if header and header.group(1) == "1":
        idx += 1
    elif header:
        issue(
            meaningful[idx][0],
            f'unsupported record version {header.group(1)!r} (expected "sgo 1")',
            header.group(1),
        )
        idx += 1
    else:
        lineno = meaningful[idx][0] if idx < len(meaningful) else 1
        issue(lineno, 'record must start with "sgo 1"')

    size = 19
    if idx < len(meaningful):
        lineno, line = meaningful[idx]
        m = re.fullmatch(r"size\s+(\d+)", line, re.IGNORECASE)
        if m and MIN_SIZE <= int(m.group(1)) <= MAX_SIZE:
            size = int(m.group(1))
            idx += 1
        elif m:
            issue(lineno, f"size out of range [{MIN_SIZE}, {MAX_SIZE}]", m.group(1))
            idx += 1
        else:
            issue(lineno, 'expected a "size N" line')
    else:
        issues.append(ParseIssue(len(lines_raw) or 1, 1, "record ends before size line"))

    setup: list[tuple[Point, int, int | None]] = []
    taken: set[Point] = set()
    in_setup = False
    turns: list[tuple[Move, Move]] = []
    for lineno, line in meaningful[idx:]:
        if re.fullmatch(r"setup", line, re.IGNORECASE):
            if in_setup or setup or turns:
                issue(lineno, "misplaced setup line")
            in_setup = True
            continue
        m = _TURN_RE.fullmatch(line)
        if m:
            in_setup = False
            number = int(m.group(1))
            if number != len(turns) + 1:
                issue(lineno, f"expected turn {len(turns) + 1}, got {number}", m.group(1))
            moves = []
            for token in (m.group(2), m.group(3)):
                try:
                    moves.append(parse_move(token, size))
                except CoordinateError as e:
                    issue(lineno, str(e), token)
                    moves.append(None)
            turns.append((moves[0], moves[1]))
            continue
        if in_setup:
            sm = _SETUP_RE.fullmatch(line)
            if not sm:
                issue(lineno, f"malformed setup line {line!r}")
                continue
            code, coord = sm.group(1), sm.group(2)
            state, pid = EMPTY, None
            try:
                state, pid = parse_code(code)
            except DiagramError as e:
                issue(lineno, str(e), code)
            point = None
            try:
                point = parse_point(coord, size)
            except CoordinateError as e:
                issue(lineno, str(e), coord)
            if point is not None and state != EMPTY:
                if point in taken:
                    issue(lineno, f"duplicate setup point {coord}", coord)
                else:
                    taken.add(point)
                    setup.append((point, state, pid))
            elif point is not None and state == EMPTY and code == ".":
                issue(lineno, "setup lines name stones, not empty cells", code)
            continue
        issue(lineno, f"unrecognized line {line!r}")

    for pid, (has_black, has_white) in _setup_pair_sides(setup).items():
        if not (has_black and has_white):
            issues.append(ParseIssue(1, 1, f"pair {pid} is missing one of its sides"))

    if issues:
        raise RecordParseError(issues)
    return GameRecord(size=size, setup=tuple(setup), turns=tuple(turns))


def _setup_pair_sides(
    setup: list[tuple[Point, int, int | None]]
) -> dict[int, list[bool]]:
    sides: dict[int, list[bool]] = {}
    for _, state, pid in setup:
        if state == EBLACK:
            sides.setdefault(pid, [False, False])[0] = True
        elif state == EWHITE:
            sides.setdefault(pid, [False, False])[1] = True
    return sides


def replay(r: GameRecord) -> GameState:
    """Rebuild the final state by stepping through every recorded turn."""
    state = new_game(r.config())
    for i, (black, white) in enumerate(r.turns, start=1):
        try:
            state = game_step(state, TurnInput(black, white))
        except ValueError as e:
            raise ReplayError(i, e) from e
    return state


def record_of(game: GameState) -> GameRecord:
    """The record equivalent of a played game (setup plus its history)."""
    setup = []
    for entry in game.config.setup:
        p, state = Point(*entry[0]), entry[1]
        pid = entry[2] if len(entry) > 2 else None
        setup.append((p, state, pid))
    turns = tuple((t.black, t.white) for t, _ in game.history)
    return GameRecord(size=game.config.size, setup=tuple(setup), turns=turns)
