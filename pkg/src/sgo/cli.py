"""Command-line entry point.

Machine-readable output (fixtures, records, CSV, reports) goes to stdout;
prompts and diagnostics go to stderr.  Exit codes: 0 success, 1 oracle
mismatches found, 2 usage errors, 3 file errors, 4 parse errors, 5 game
errors.
"""

from __future__ import annotations

import argparse
import getpass
import os
import sys

from .board import BLACK, WHITE, BoardError
from .bots import GreedyCapture, UniformRandom, selfplay
from .engine import InvalidTurnError, MoveError, TurnInput, validate_move
from .game import GameConfig, GameError, Score, new_game, score, step
from .oracle import differential_check
from .records import (
    DiagramError,
    GameRecord,
    RecordError,
    RecordParseError,
    ReplayError,
    format_diagram,
    parse,
    parse_move,
    replay,
    serialize,
)

_prompt_secret = getpass.getpass  # patched in tests


def _print_score(s: Score) -> None:
    sys.stdout.write(
        f"black territory {s.black_territory}\n"
        f"white territory {s.white_territory}\n"
        f"black prisoners {s.black_prisoners}\n"
        f"white prisoners {s.white_prisoners}\n"
        f"black total {s.black_total}\n"
        f"white total {s.white_total}\n"
        f"outcome {s.outcome}\n"
    )


def cmd_new(args) -> int:
    sys.stdout.write(serialize(GameRecord(size=args.size)))
    return 0


def cmd_replay(args) -> int:
    record = parse(open(args.file).read())
    state = replay(record)
    sys.stdout.write(format_diagram(state.board))
    sys.stdout.write(
        f"prisoners black {state.prisoners_black} white {state.prisoners_white}\n"
    )
    if state.over:
        _print_score(score(state))
    return 0


def cmd_score(args) -> int:
    record = parse(open(args.file).read())
    state = replay(record)
    _print_score(score(state))
    return 0


_POLICIES = {"random": UniformRandom, "greedy": GreedyCapture}


def _parse_policies(text: str, pass_prob: float):
    names = text.split(",")
    if len(names) == 1:
        names = names * 2
    if len(names) != 2 or any(n not in _POLICIES for n in names):
        raise argparse.ArgumentTypeError(
            "--policy takes 'random', 'greedy', or a 'black,white' pair of those"
        )
    out = []
    for n in names:
        if n == "random":
            out.append(UniformRandom(pass_prob=pass_prob))
        else:
            out.append(GreedyCapture())
    return out


def cmd_selfplay(args) -> int:
    try:
        black, white = _parse_policies(args.policy, args.pass_prob)
    except argparse.ArgumentTypeError as e:
        sys.stderr.write(f"{e}\n")
        return 2
    stats = selfplay(
        size=args.size,
        policy_black=black,
        policy_white=white,
        games=args.games,
        max_turns=args.max_turns,
        seed=args.seed,
    )
    sys.stdout.write(stats.csv())
    return 0


def cmd_oracle_check(args) -> int:
    report = differential_check(
        size=args.size,
        depth=args.depth,
        sample_seed=args.seed,
        budget=args.budget,
    )
    for line in report.lines():
        sys.stdout.write(line + "\n")
    return 0 if report.ok else 1


def cmd_serve(args) -> int:
    from .service import serve

    serve(addr=args.addr, data_dir=args.data_dir)
    return 0


def cmd_hotseat(args) -> int:
    state = new_game(GameConfig(size=args.size))
    sys.stderr.write(
        "hot-seat mode: enter coordinates like C4, or 'pass'; input is not echoed\n"
    )
    while not state.over:
        moves = {}
        for color, name in ((BLACK, "black"), (WHITE, "white")):
            while True:
                raw = _prompt_secret(f"turn {state.turn + 1}, {name} move: ").strip()
                try:
                    move = parse_move(raw, state.config.size)
                    validate_move(state.board, move)
                except (RecordError, MoveError) as e:
                    sys.stderr.write(f"invalid move: {e}\n")
                    continue
                moves[color] = move
                break
        state = step(state, TurnInput(moves[BLACK], moves[WHITE]))
        sys.stdout.write(format_diagram(state.board))
        sys.stdout.write(
            f"prisoners black {state.prisoners_black} white {state.prisoners_white}\n"
        )
    _print_score(score(state))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sgo", description="simultaneous-turn Go: records, bots, oracle, service"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="emit an empty game record")
    p.add_argument("--size", type=int, default=19)
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("replay", help="replay a record; print final board fixture")
    p.add_argument("file")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("score", help="replay a finished record; print the score")
    p.add_argument("file")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("selfplay", help="run seeded bot games; print CSV stats")
    p.add_argument("--size", type=int, default=9)
    p.add_argument("--games", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-turns", type=int, default=500)
    p.add_argument("--policy", default="random")
    p.add_argument("--pass-prob", type=float, default=0.01)
    p.set_defaults(func=cmd_selfplay)

    p = sub.add_parser("oracle-check", help="differential-test the engine")
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("serve", help="run the two-player match service")
    p.add_argument("--addr", default="127.0.0.1:8000")
    p.add_argument(
        "--data-dir", default=os.environ.get("SGO_DATA_DIR", "sgo-data")
    )
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("hotseat", help="local two-human play with hidden entry")
    p.add_argument("--size", type=int, default=7)
    p.set_defaults(func=cmd_hotseat)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except ReplayError as e:
        sys.stderr.write(f"replay failed: {e}\n")
        return 5
    except (RecordParseError, DiagramError) as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 4
    except (GameError, InvalidTurnError, MoveError, BoardError) as e:
        sys.stderr.write(f"game error: {e}\n")
        return 5
    except RecordError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 4
    except OSError as e:
        sys.stderr.write(f"file error: {e}\n")
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
