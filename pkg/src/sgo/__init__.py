"""S-Go: Go with simultaneous blind turns.

Both players move at once.  Placing on the same point creates a red stone
that is both colors until a kill resolves it; two groups that capture each
other in the same turn survive entangled until one side is later used in a
kill.  No ko, no komi; ties are possible.
"""

from .board import (
    BLACK,
    DEFAULT_SIZE,
    EBLACK,
    EMPTY,
    EWHITE,
    MAX_SIZE,
    MIN_SIZE,
    RED,
    WHITE,
    Board,
    BoardError,
    Group,
    InvalidSizeError,
    OutOfBoundsError,
    Point,
    color_flip,
    compute_groups,
    liberties,
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
    Move,
    MoveError,
    OccupiedPointError,
    PlacedBlack,
    PlacedWhite,
    RedCreated,
    RedResolved,
    SuicideAbsorbedRed,
    TurnInput,
    TurnOutcome,
    apply_turn,
    classify_mutual,
    is_valid_move,
    replay_events,
    resolve_captures,
    swap_moves,
    validate_move,
)
from .game import (
    GameConfig,
    GameError,
    GameNotOverError,
    GameOverError,
    GameState,
    InvalidSetupError,
    Score,
    is_over,
    new_game,
    score,
    step,
    territory,
)
from .records import (
    CoordinateError,
    DiagramError,
    GameRecord,
    RecordError,
    RecordParseError,
    ReplayError,
    format_diagram,
    format_move,
    format_point,
    parse,
    parse_diagram,
    parse_move,
    parse_point,
    record_of,
    replay,
    serialize,
)

__version__ = "0.1.0"
