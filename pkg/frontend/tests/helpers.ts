import type { MatchState } from "../src/types.js";

const EMPTY_7 =
  "size 7\n" + Array.from({ length: 7 }, () => ". . . . . . .").join("\n") + "\n";

/** A plausible get_state response; override what the test cares about. */
export function mkState(over: Partial<MatchState> = {}): MatchState {
  return {
    matchId: "abc123",
    size: 7,
    status: "InProgress",
    turn: 0,
    board: EMPTY_7,
    prisoners: { black: 0, white: 0 },
    committed: { black: false, white: false },
    joined: { black: true, white: true },
    history: [],
    winner: null,
    reason: null,
    score: null,
    ...over,
  };
}

export { EMPTY_7 };
