"""Board state, chain detection and liberty counting.

A cell holds one of six states: empty, a plain black or white stone, a red
stone (black and white at once), or an entangled stone belonging to a
registered pair.  Entangled stones are tracked both in the cell grid and in
the board's pair registry; membership of a pair is frozen at the moment the
pair is created and does not grow by adjacency afterwards.

Everything here is a pure data layer: no move legality, no capture logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

EMPTY = 0
BLACK = 1
WHITE = 2
RED = 3
EBLACK = 4
EWHITE = 5

MIN_SIZE = 2
MAX_SIZE = 25  # 25 coordinate letters: A..Z without I
DEFAULT_SIZE = 19

_FLIP = (EMPTY, WHITE, BLACK, RED, EWHITE, EBLACK)


class BoardError(ValueError):
    """Base class for board-level errors."""


class InvalidSizeError(BoardError):
    pass


class OutOfBoundsError(BoardError):
    pass


class Point(NamedTuple):
    col: int
    row: int


def opposite(color: int) -> int:
    """Swap BLACK and WHITE."""
    if color == BLACK:
        return WHITE
    if color == WHITE:
        return BLACK
    raise ValueError(f"no opposite for cell state {color}")


@lru_cache(maxsize=None)
def _neighbor_table(size: int) -> tuple[tuple[Point, ...], ...]:
    table = []
    for row in range(size):
        for col in range(size):
            pts = []
            if col > 0:
                pts.append(Point(col - 1, row))
            if col < size - 1:
                pts.append(Point(col + 1, row))
            if row > 0:
                pts.append(Point(col, row - 1))
            if row < size - 1:
                pts.append(Point(col, row + 1))
            table.append(tuple(pts))
    return tuple(table)


def neighbors(p: Point, size: int) -> tuple[Point, ...]:
    """The 2-4 orthogonally adjacent in-bounds points of ``p``."""
    if not (0 <= p.col < size and 0 <= p.row < size):
        raise OutOfBoundsError(f"{p} is outside a {size}x{size} board")
    return _neighbor_table(size)[p.row * size + p.col]


@dataclass(frozen=True)
class Group:
    """A maximal set of same-state stones.

    Plain groups are 4-connected chains.  Red stones are always singleton
    groups, even next to other reds.  Entangled groups are keyed by
    (kind, pair_id): they are exactly one side of a registry entry, whether
    or not those stones are still connected on the grid.
    """

    kind: int
    stones: frozenset[Point]
    pair_id: int | None = None

    def __post_init__(self) -> None:
        if not self.stones:
            raise ValueError("a group has at least one stone")


class Board:
    """Square grid of cell states plus the entanglement registry.

    Boards have value semantics: public operations never mutate their
    inputs.  The mutating methods below are for construction and for the
    turn engine, which always works on its own copy.
    """

    __slots__ = ("size", "_cells", "_pairs", "_pair_of", "_next_pair")

    def __init__(self, size: int):
        if not (MIN_SIZE <= size <= MAX_SIZE):
            raise InvalidSizeError(
                f"board size must be in [{MIN_SIZE}, {MAX_SIZE}], got {size}"
            )
        self.size = size
        self._cells = [EMPTY] * (size * size)
        self._pairs: dict[int, tuple[frozenset[Point], frozenset[Point]]] = {}
        self._pair_of: dict[Point, int] = {}
        self._next_pair = 1

    # -- access ---------------------------------------------------------

    def in_bounds(self, p: Point) -> bool:
        return 0 <= p.col < self.size and 0 <= p.row < self.size

    def cell(self, p: Point) -> int:
        if not self.in_bounds(p):
            raise OutOfBoundsError(f"{p} is outside a {self.size}x{self.size} board")
        return self._cells[p.row * self.size + p.col]

    def is_empty(self, p: Point) -> bool:
        return self.cell(p) == EMPTY

    def pair_id(self, p: Point) -> int | None:
        return self._pair_of.get(p)

    @property
    def pairs(self) -> dict[int, tuple[frozenset[Point], frozenset[Point]]]:
        """pair id -> (black stones, white stones); a copy, safe to keep."""
        return dict(self._pairs)

    def points(self) -> Iterator[Point]:
        for row in range(self.size):
            for col in range(self.size):
                yield Point(col, row)

    def empties(self) -> list[Point]:
        return [p for p in self.points() if self._cells[p.row * self.size + p.col] == EMPTY]

    def stone_count(self) -> int:
        return sum(1 for c in self._cells if c != EMPTY)

    # -- mutation (construction / engine internals) ----------------------

    def set_cell(self, p: Point, state: int) -> None:
        """Write a non-entangled state; entangled cells go through the pair API."""
        if state in (EBLACK, EWHITE):
            raise BoardError("entangled cells are created via add_pair")
        idx = p.row * self.size + p.col
        if not self.in_bounds(p):
            raise OutOfBoundsError(f"{p} is outside a {self.size}x{self.size} board")
        if self._cells[idx] in (EBLACK, EWHITE):
            raise BoardError(f"cell {p} is entangled; dissolve its pair first")
        self._cells[idx] = state

    def add_pair(
        self,
        black_stones: Iterable[Point],
        white_stones: Iterable[Point],
        pair_id: int | None = None,
    ) -> int:
        blacks = frozenset(black_stones)
        whites = frozenset(white_stones)
        if not blacks or not whites:
            raise BoardError("a pair needs stones on both sides")
        if pair_id is None:
            pair_id = self._next_pair
        if pair_id in self._pairs:
            raise BoardError(f"pair id {pair_id} already registered")
        for p in blacks | whites:
            if self._pair_of.get(p) is not None:
                raise BoardError(f"{p} already belongs to pair {self._pair_of[p]}")
        for p in blacks:
            self._cells[p.row * self.size + p.col] = EBLACK
            self._pair_of[p] = pair_id
        for p in whites:
            self._cells[p.row * self.size + p.col] = EWHITE
            self._pair_of[p] = pair_id
        self._pairs[pair_id] = (blacks, whites)
        self._next_pair = max(self._next_pair, pair_id + 1)
        return pair_id

    def dissolve_pair(self, pair_id: int) -> tuple[frozenset[Point], frozenset[Point]]:
        """Drop a registry entry, reverting its stones to plain colors."""
        blacks, whites = self._pairs.pop(pair_id)
        for p in blacks:
            self._cells[p.row * self.size + p.col] = BLACK
            del self._pair_of[p]
        for p in whites:
            self._cells[p.row * self.size + p.col] = WHITE
            del self._pair_of[p]
        return blacks, whites

    def copy(self) -> "Board":
        b = Board.__new__(Board)
        b.size = self.size
        b._cells = list(self._cells)
        b._pairs = dict(self._pairs)
        b._pair_of = dict(self._pair_of)
        b._next_pair = self._next_pair
        return b

    # -- identity ---------------------------------------------------------

    def _canonical_pairs(self) -> tuple[tuple[frozenset[Point], frozenset[Point]], ...]:
        # label-insensitive: order entries by their smallest member point
        return tuple(
            sides for _, sides in sorted(
                self._pairs.items(), key=lambda kv: min(kv[1][0] | kv[1][1])
            )
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Board):
            return NotImplemented
        return (
            self.size == other.size
            and self._cells == other._cells
            and self._canonical_pairs() == other._canonical_pairs()
        )

    def __hash__(self) -> int:
        return hash((self.size, tuple(self._cells), self._canonical_pairs()))

    def check_registry(self) -> None:
        """Raise if the cells and the pair registry disagree."""
        seen: dict[Point, int] = {}
        for pid, (blacks, whites) in self._pairs.items():
            if not blacks or not whites:
                raise BoardError(f"pair {pid} has an empty side")
            for p, want in [(q, EBLACK) for q in blacks] + [(q, EWHITE) for q in whites]:
                if p in seen:
                    raise BoardError(f"{p} appears in pairs {seen[p]} and {pid}")
                seen[p] = pid
                if self.cell(p) != want:
                    raise BoardError(f"{p} registered in pair {pid} but cell is {self.cell(p)}")
        for p in self.points():
            c = self.cell(p)
            if c in (EBLACK, EWHITE) and p not in seen:
                raise BoardError(f"entangled cell {p} missing from the registry")
        if self._pair_of != seen:
            raise BoardError("pair-of index out of sync with the registry")


def make_board(size: int) -> Board:
    """An all-empty board with an empty registry."""
    return Board(size)


def compute_groups(b: Board) -> list[Group]:
    """Partition the non-empty cells into groups.

    Plain chains by flood fill, singleton groups for every red stone, and
    one group per registry side for entangled stones.  Output order is
    deterministic: sorted by (kind, smallest stone).
    """
    size = b.size
    groups: list[Group] = []
    seen: set[Point] = set()
    for p in b.points():
        c = b.cell(p)
        if c == EMPTY or p in seen:
            continue
        if c == RED:
            seen.add(p)
            groups.append(Group(RED, frozenset([p])))
        elif c in (BLACK, WHITE):
            stack = [p]
            chain = set()
            while stack:
                q = stack.pop()
                if q in chain:
                    continue
                chain.add(q)
                for n in neighbors(q, size):
                    if n not in chain and b.cell(n) == c:
                        stack.append(n)
            seen |= chain
            groups.append(Group(c, frozenset(chain)))
    for pid, (blacks, whites) in b.pairs.items():
        groups.append(Group(EBLACK, blacks, pid))
        groups.append(Group(EWHITE, whites, pid))
    groups.sort(key=lambda g: (g.kind, min(g.stones)))
    return groups


def liberties(b: Board, g: Group) -> frozenset[Point]:
    """Empty points adjacent to the group; any stone, red or entangled
    included, blocks a liberty."""
    libs = set()
    for p in g.stones:
        for n in neighbors(p, b.size):
            if b.is_empty(n):
                libs.add(n)
    return frozenset(libs)


def color_flip(b: Board) -> Board:
    """Mirror the board across colors: black and white swap, entangled
    sides swap, red and empty are fixed points."""
    out = Board.__new__(Board)
    out.size = b.size
    out._cells = [_FLIP[c] for c in b._cells]
    out._pairs = {pid: (whites, blacks) for pid, (blacks, whites) in b._pairs.items()}
    out._pair_of = dict(b._pair_of)
    out._next_pair = b._next_pair
    return out
