"""Two-player match server.

The defining constraint is secrecy: each player commits a move without
seeing the other's, and the turn resolves only when both commitments are
in.  Commitments are binding (a differing resubmission is rejected), the
server holds them in plain text (no commit-reveal cryptography at this
scale), and no response ever contains an unresolved move: state views
expose committed flags as booleans only.

Sessions are journaled to disk as an append-only game record plus a small
JSON header, so a restarted server recovers every match by replay.  A
journal that fails to replay marks its session abandoned rather than
guessing at state.

All mutation of one session happens under that session's condition
variable; the long-poll event feed waits on the same condition, so
watchers wake exactly when a turn resolves or the match ends.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .board import BLACK, WHITE, opposite
from .engine import (
    EntangleCreated,
    EResolved,
    Event,
    GroupCaptured,
    MoveError,
    PlacedBlack,
    PlacedWhite,
    RedCreated,
    RedResolved,
    SuicideAbsorbedRed,
    TurnInput,
    validate_move,
)
from .game import GameError, GameState, Score, new_game, score, step
from .records import (
    CoordinateError,
    GameRecord,
    RecordError,
    format_diagram,
    format_move,
    format_point,
    parse,
    parse_code,
    parse_move,
    parse_point,
    serialize,
)

OPEN = "Open"
IN_PROGRESS = "InProgress"
FINISHED = "Finished"
ABANDONED = "Abandoned"

_HTTP_STATUS = {
    "unknown-match": 404,
    "unauthorized": 403,
    "wrong-turn": 409,
    "already-committed-differently": 409,
    "match-finished": 409,
    "not-joined": 409,
    "invalid-move": 400,
    "invalid-config": 400,
    "invalid-request": 400,
}

_COLOR_NAMES = {BLACK: "black", WHITE: "white", None: None, 3: "red"}


class ServiceError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.http_status = _HTTP_STATUS[code]
        super().__init__(message)


def event_json(ev: Event) -> dict:
    if isinstance(ev, PlacedBlack):
        return {"type": "PlacedBlack", "point": format_point(ev.point)}
    if isinstance(ev, PlacedWhite):
        return {"type": "PlacedWhite", "point": format_point(ev.point)}
    if isinstance(ev, RedCreated):
        return {"type": "RedCreated", "point": format_point(ev.point)}
    if isinstance(ev, EntangleCreated):
        return {
            "type": "EntangleCreated",
            "pairId": ev.pair_id,
            "blackStones": [format_point(p) for p in sorted(ev.black_stones)],
            "whiteStones": [format_point(p) for p in sorted(ev.white_stones)],
        }
    if isinstance(ev, RedResolved):
        return {
            "type": "RedResolved",
            "point": format_point(ev.point),
            "toColor": _COLOR_NAMES[ev.to_color],
        }
    if isinstance(ev, EResolved):
        return {
            "type": "EResolved",
            "pairId": ev.pair_id,
            "resolvedColor": _COLOR_NAMES[ev.resolved_color],
        }
    if isinstance(ev, GroupCaptured):
        return {
            "type": "GroupCaptured",
            "color": _COLOR_NAMES[ev.color],
            "stones": [format_point(p) for p in sorted(ev.stones)],
            "capturedBy": _COLOR_NAMES[ev.captured_by],
        }
    if isinstance(ev, SuicideAbsorbedRed):
        return {
            "type": "SuicideAbsorbedRed",
            "point": format_point(ev.point),
            "dyingColor": _COLOR_NAMES[ev.dying_color],
        }
    raise TypeError(f"unknown event {ev!r}")  # pragma: no cover


def _score_json(s: Score) -> dict:
    return {
        "blackTerritory": s.black_territory,
        "whiteTerritory": s.white_territory,
        "blackPrisoners": s.black_prisoners,
        "whitePrisoners": s.white_prisoners,
        "blackTotal": s.black_total,
        "whiteTotal": s.white_total,
        "outcome": s.outcome,
    }


def _record_from_request(size, setup, max_turns) -> GameRecord:
    if not isinstance(size, int) or isinstance(size, bool):
        raise ServiceError("invalid-config", "size must be an integer")
    stones = []
    for item in setup or []:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ServiceError("invalid-config", "setup entries are [code, coordinate]")
        code, coord = item
        try:
            state, pid = parse_code(str(code))
            point = parse_point(str(coord), size)
        except (RecordError, ValueError) as e:
            raise ServiceError("invalid-config", str(e)) from e
        stones.append((point, state, pid))
    if max_turns is not None and (not isinstance(max_turns, int) or max_turns < 1):
        raise ServiceError("invalid-config", "maxTurns must be a positive integer")
    try:
        record = GameRecord(size=size, setup=tuple(stones))
        cfg = record.config()
        if max_turns is not None:
            cfg = type(cfg)(size=cfg.size, setup=cfg.setup, max_turns=max_turns)
        new_game(cfg)  # validates size and setup
    except (GameError, RecordError, ValueError) as e:
        raise ServiceError("invalid-config", str(e)) from e
    return record


class Session:
    def __init__(
        self,
        match_id: str,
        record: GameRecord,
        max_turns: int | None,
        tokens: dict[int, str],
        data_dir: Path | None,
    ):
        self.match_id = match_id
        self.record = record
        self.max_turns = max_turns
        self.tokens = tokens
        self.joined = {BLACK: False, WHITE: False}
        self.pending: dict[int, object] = {}
        self.status = OPEN
        self.winner: int | None = None
        self.reason: str | None = None
        self.entries: list[dict] = []
        self.cond = threading.Condition()
        self.data_dir = data_dir
        cfg = record.config()
        if max_turns is not None:
            cfg = type(cfg)(size=cfg.size, setup=cfg.setup, max_turns=max_turns)
        self.game: GameState = new_game(cfg)

    # -- persistence --------------------------------------------------------

    @property
    def _header_path(self) -> Path:
        return self.data_dir / f"{self.match_id}.json"

    @property
    def _record_path(self) -> Path:
        return self.data_dir / f"{self.match_id}.sgo"

    def persist_header(self) -> None:
        if self.data_dir is None:
            return
        header = {
            "matchId": self.match_id,
            "size": self.record.size,
            "maxTurns": self.max_turns,
            "tokens": {"black": self.tokens[BLACK], "white": self.tokens[WHITE]},
            "joined": {"black": self.joined[BLACK], "white": self.joined[WHITE]},
            "status": self.status,
            "winner": _COLOR_NAMES[self.winner],
            "reason": self.reason,
        }
        tmp = self._header_path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(header, indent=2) + "\n")
        tmp.replace(self._header_path)

    def persist_record_base(self) -> None:
        if self.data_dir is None:
            return
        self._record_path.write_text(serialize(self.record))

    def append_turn_line(self, t: TurnInput) -> None:
        if self.data_dir is None:
            return
        k = self.game.turn  # already stepped: this entry completed turn k
        line = f"{k}. B {format_move(t.black)} W {format_move(t.white)}\n"
        with self._record_path.open("a") as fh:
            fh.write(line)

    # -- views ----------------------------------------------------------------

    def entry_for(self, t: TurnInput) -> dict:
        _, outcome = self.game.history[-1]
        return {
            "turn": self.game.turn - 1,
            "black": format_move(t.black),
            "white": format_move(t.white),
            "events": [event_json(e) for e in outcome.events],
            "board": format_diagram(self.game.board),
            "prisoners": {
                "black": self.game.prisoners_black,
                "white": self.game.prisoners_white,
            },
            "over": self.game.over,
        }

    def state_view(self) -> dict:
        view = {
            "matchId": self.match_id,
            "size": self.record.size,
            "status": self.status,
            "turn": self.game.turn,
            "board": format_diagram(self.game.board),
            "prisoners": {
                "black": self.game.prisoners_black,
                "white": self.game.prisoners_white,
            },
            "committed": {
                "black": BLACK in self.pending,
                "white": WHITE in self.pending,
            },
            "joined": {"black": self.joined[BLACK], "white": self.joined[WHITE]},
            "history": list(self.entries),
            "winner": _COLOR_NAMES[self.winner],
            "reason": self.reason,
            "score": None,
        }
        if self.status == FINISHED and self.game.over:
            view["score"] = _score_json(score(self.game))
        return view

    # -- mutations (call under self.cond) ----------------------------------------

    def color_of(self, token: str) -> int:
        for color, tok in self.tokens.items():
            if secrets.compare_digest(tok, str(token)):
                return color
        raise ServiceError("unauthorized", "unknown token for this match")

    def finish(self, winner: int | None, reason: str) -> None:
        self.status = FINISHED
        self.winner = winner
        self.reason = reason
        self.pending.clear()
        self.persist_header()
        self.cond.notify_all()

    def join(self, token: str) -> dict:
        color = self.color_of(token)
        if self.status in (FINISHED, ABANDONED):
            raise ServiceError("match-finished", "this match is over")
        changed = not self.joined[color]
        self.joined[color] = True
        if self.status == OPEN and all(self.joined.values()):
            self.status = IN_PROGRESS
            changed = True
        if changed:
            self.persist_header()
            self.cond.notify_all()
        return {
            "color": _COLOR_NAMES[color],
            "status": self.status,
            "joined": {"black": self.joined[BLACK], "white": self.joined[WHITE]},
        }

    def submit(self, token: str, turn, move_text) -> dict:
        color = self.color_of(token)
        if self.status in (FINISHED, ABANDONED):
            raise ServiceError("match-finished", "this match is over")
        if not all(self.joined.values()):
            raise ServiceError("not-joined", "both players must join before moving")
        if not isinstance(turn, int) or isinstance(turn, bool):
            raise ServiceError("invalid-request", "turn must be an integer")
        if turn != self.game.turn:
            raise ServiceError(
                "wrong-turn", f"turn {turn} is stale; current turn is {self.game.turn}"
            )
        try:
            move = parse_move(str(move_text), self.record.size)
            validate_move(self.game.board, move)
        except (CoordinateError, MoveError) as e:
            raise ServiceError("invalid-move", str(e)) from e
        if color in self.pending:
            if self.pending[color] == move:
                return {"status": "committed", "turn": turn, "resolved": False}
            raise ServiceError(
                "already-committed-differently",
                "a different move is already committed for this turn",
            )
        self.pending[color] = move
        if len(self.pending) < 2:
            return {"status": "committed", "turn": turn, "resolved": False}

        t = TurnInput(self.pending[BLACK], self.pending[WHITE])
        self.game = step(self.game, t)
        self.pending.clear()
        entry = self.entry_for(t)
        self.entries.append(entry)
        self.append_turn_line(t)
        if self.game.over:
            final = score(self.game)
            reason = (
                "double-pass"
                if t.black is None and t.white is None
                else "turn-limit"
            )
            self.finish(final.winner, reason)
        else:
            self.cond.notify_all()
        return {"status": "resolved", "turn": turn, "resolved": True, "entry": entry}

    def resign(self, token: str) -> dict:
        color = self.color_of(token)
        if self.status in (FINISHED, ABANDONED):
            raise ServiceError("match-finished", "this match is already over")
        self.finish(opposite(color), "resignation")
        return self.state_view()

    def events_since(self, since: int, wait_seconds: float) -> dict:
        deadline = time.monotonic() + max(0.0, wait_seconds)
        while (
            len(self.entries) <= since
            and self.status in (OPEN, IN_PROGRESS)
            and time.monotonic() < deadline
        ):
            self.cond.wait(deadline - time.monotonic())
        return {
            "entries": self.entries[max(0, since):],
            "next": len(self.entries),
            "status": self.status,
            "winner": _COLOR_NAMES[self.winner],
            "reason": self.reason,
        }


class MatchStore:
    """All live sessions plus their on-disk journals."""

    def __init__(self, data_dir: str | Path | None = None):
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        if self.data_dir is not None:
            self._recover()

    def _recover(self) -> None:
        for header_path in sorted(self.data_dir.glob("*.json")):
            match_id = header_path.stem
            try:
                header = json.loads(header_path.read_text())
                record = parse((self.data_dir / f"{match_id}.sgo").read_text())
                tokens = {
                    BLACK: header["tokens"]["black"],
                    WHITE: header["tokens"]["white"],
                }
                session = Session(
                    match_id,
                    GameRecord(size=record.size, setup=record.setup),
                    header.get("maxTurns"),
                    tokens,
                    self.data_dir,
                )
                for black, white in record.turns:
                    t = TurnInput(black, white)
                    session.game = step(session.game, t)
                    session.entries.append(session.entry_for(t))
                session.joined = {
                    BLACK: bool(header["joined"]["black"]),
                    WHITE: bool(header["joined"]["white"]),
                }
                session.status = header["status"]
                session.winner = {"black": BLACK, "white": WHITE, None: None}[
                    header["winner"]
                ]
                session.reason = header["reason"]
                if session.game.over and session.status in (OPEN, IN_PROGRESS):
                    final = score(session.game)
                    session.status = FINISHED
                    session.winner = final.winner
                    session.reason = "double-pass"
            except (OSError, ValueError, KeyError) as e:
                session = Session.__new__(Session)
                session.match_id = match_id
                session.status = ABANDONED
                session.entries = []
                session.cond = threading.Condition()
                session.tokens = {}
                session.joined = {BLACK: False, WHITE: False}
                session.pending = {}
                session.winner = None
                session.reason = f"journal unreadable: {e}"
                session.data_dir = self.data_dir
                session.game = None
                session.record = None
                session.max_turns = None
            self._sessions[match_id] = session

    def create(self, size=19, setup=None, max_turns=None) -> dict:
        record = _record_from_request(size, setup, max_turns)
        match_id = secrets.token_hex(6)
        tokens = {BLACK: secrets.token_hex(16), WHITE: secrets.token_hex(16)}
        session = Session(match_id, record, max_turns, tokens, self.data_dir)
        with self._lock:
            self._sessions[match_id] = session
        with session.cond:
            session.persist_record_base()
            session.persist_header()
        return {
            "matchId": match_id,
            "blackToken": tokens[BLACK],
            "whiteToken": tokens[WHITE],
            "size": record.size,
        }

    def get(self, match_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(match_id)
        if session is None:
            raise ServiceError("unknown-match", f"no match {match_id!r}")
        return session

    def state_view(self, match_id: str) -> dict:
        session = self.get(match_id)
        with session.cond:
            if session.status == ABANDONED:
                return {
                    "matchId": session.match_id,
                    "status": ABANDONED,
                    "reason": session.reason,
                    "history": [],
                }
            return session.state_view()


def create_app(store: MatchStore):
    app = FastAPI(title="sgo match service")
    app.state.store = store

    def fail(e: ServiceError) -> JSONResponse:
        return JSONResponse(
            status_code=e.http_status,
            content={"error": {"code": e.code, "message": str(e)}},
        )

    async def body_of(request: Request) -> dict:
        try:
            data = await request.json()
        except Exception:
            raise ServiceError("invalid-request", "request body must be JSON")
        if not isinstance(data, dict):
            raise ServiceError("invalid-request", "request body must be a JSON object")
        return data

    def token_of(data: dict) -> str:
        token = data.get("token")
        if not isinstance(token, str) or not token:
            raise ServiceError("unauthorized", "missing token")
        return token

    @app.exception_handler(ServiceError)
    async def service_error_handler(_request, exc: ServiceError):
        return fail(exc)

    @app.post("/match")
    async def create_match(request: Request):
        data = await body_of(request)
        return store.create(
            size=data.get("size", 19),
            setup=data.get("setup"),
            max_turns=data.get("maxTurns"),
        )

    @app.post("/match/{match_id}/join")
    async def join(match_id: str, request: Request):
        data = await body_of(request)
        session = store.get(match_id)
        with session.cond:
            return session.join(token_of(data))

    @app.post("/match/{match_id}/move")
    async def move(match_id: str, request: Request):
        data = await body_of(request)
        session = store.get(match_id)
        with session.cond:
            return session.submit(token_of(data), data.get("turn"), data.get("move"))

    @app.post("/match/{match_id}/resign")
    async def resign(match_id: str, request: Request):
        data = await body_of(request)
        session = store.get(match_id)
        with session.cond:
            return session.resign(token_of(data))

    @app.get("/match/{match_id}/state")
    async def state(match_id: str):
        return store.state_view(match_id)

    @app.get("/match/{match_id}/events")
    async def events(match_id: str, since: int = 0, wait: float = 25.0):
        import anyio

        session = store.get(match_id)
        wait = min(max(wait, 0.0), 55.0)

        def poll() -> dict:
            with session.cond:
                return session.events_since(since, wait)

        return await anyio.to_thread.run_sync(poll)

    return app


def serve(addr: str = "127.0.0.1:8000", data_dir: str | Path | None = None) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    host, _, port = addr.partition(":")
    app = create_app(MatchStore(data_dir))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="warning")
