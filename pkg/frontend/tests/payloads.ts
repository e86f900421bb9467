// Turn entries as the service actually serializes them, captured from real
// games. Each case pairs the board before the turn with the entry the
// resolution produced, so replay semantics are pinned to the wire format.

import type { TurnEntry } from "../src/types.js";

export interface ReplayCase {
  prev: string;
  entry: TurnEntry;
}

export const redCreation: ReplayCase = {
  prev:
    "size 7\n. W . W B . .\n. W B W B . .\n. W B W . . .\n. . . . . . .\n" +
    ". . . . . . .\n. . . . . . .\n. . . . . . .\n",
  entry: {
    turn: 0,
    black: "C4",
    white: "C4",
    events: [{ type: "RedCreated", point: "C4" }],
    board:
      "size 7\n. W . W B . .\n. W B W B . .\n. W B W . . .\n. . R . . . .\n" +
      ". . . . . . .\n. . . . . . .\n. . . . . . .\n",
    prisoners: { black: 0, white: 0 },
    over: false,
  },
};

export const captureResolvesRed: ReplayCase = {
  prev:
    "size 7\n. W . W B . .\n. W B W B . .\n. W B W . . .\n. . R B . . .\n" +
    ". . . . W . .\n. . . . . . .\n. . . . . . .\n",
  entry: {
    turn: 2,
    black: "E5",
    white: "C7",
    events: [
      { type: "PlacedBlack", point: "E5" },
      { type: "PlacedWhite", point: "C7" },
      { type: "GroupCaptured", color: "black", stones: ["C5", "C6"], capturedBy: "white" },
      { type: "RedResolved", point: "C4", toColor: "white" },
    ],
    board:
      "size 7\n. W W W B . .\n. W . W B . .\n. W . W B . .\n. . W B . . .\n" +
      ". . . . W . .\n. . . . . . .\n. . . . . . .\n",
    prisoners: { black: 0, white: 2 },
    over: false,
  },
};

export const suicideAbsorbs: ReplayCase = {
  prev: captureResolvesRed.prev,
  entry: {
    turn: 2,
    black: "C7",
    white: "C7",
    events: [
      { type: "RedCreated", point: "C7" },
      { type: "GroupCaptured", color: "black", stones: ["C5", "C6"], capturedBy: "white" },
      { type: "SuicideAbsorbedRed", point: "C7", dyingColor: "black" },
      { type: "RedResolved", point: "C4", toColor: "white" },
    ],
    board:
      "size 7\n. W . W B . .\n. W . W B . .\n. W . W . . .\n. . W B . . .\n" +
      ". . . . W . .\n. . . . . . .\n. . . . . . .\n",
    prisoners: { black: 0, white: 3 },
    over: false,
  },
};

export const entangle: ReplayCase = {
  prev:
    "size 7\n. . . . . . .\n. . . B B . .\n. . B W W B .\n. . . B W B .\n" +
    ". B . W W B .\n. . . B R . .\n. . . . . . .\n",
  entry: {
    turn: 0,
    black: "C3",
    white: "C4",
    events: [
      { type: "PlacedBlack", point: "C3" },
      { type: "PlacedWhite", point: "C4" },
      {
        type: "EntangleCreated",
        pairId: 1,
        blackStones: ["D4"],
        whiteStones: ["D3", "D5", "E3", "E4", "E5"],
      },
    ],
    board:
      "size 7\n. . . . . . .\n. . . B B . .\n. . B w1 w1 B .\n. . W b1 w1 B .\n" +
      ". B B w1 w1 B .\n. . . B R . .\n. . . . . . .\n",
    prisoners: { black: 0, white: 0 },
    over: false,
  },
};

export const cascade: ReplayCase = {
  prev: entangle.entry.board,
  entry: {
    turn: 1,
    black: "B4",
    white: "B4",
    events: [
      { type: "RedCreated", point: "B4" },
      { type: "GroupCaptured", color: "white", stones: ["C4"], capturedBy: "black" },
      { type: "RedResolved", point: "B4", toColor: "black" },
      { type: "EResolved", pairId: 1, resolvedColor: "black" },
      {
        type: "GroupCaptured",
        color: "white",
        stones: ["D3", "D5", "E3", "E4", "E5"],
        capturedBy: "black",
      },
      { type: "RedResolved", point: "E2", toColor: "black" },
    ],
    board:
      "size 7\n. . . . . . .\n. . . B B . .\n. . B . . B .\n. B . B . B .\n" +
      ". B B . . B .\n. . . B B . .\n. . . . . . .\n",
    prisoners: { black: 6, white: 0 },
    over: false,
  },
};

export const allReplayCases: Record<string, ReplayCase> = {
  redCreation,
  captureResolvesRed,
  suicideAbsorbs,
  entangle,
  cascade,
};

// two reds plus one five-stone entangled pair, the richest stable state
export const unresolvedFixture =
  "size 7\n. W R w1 B . .\n. W b1 w1 B . .\n. W b1 w1 B W .\n. . R B . . .\n" +
  ". . . . W . .\n. . . . . . .\n. . . . . . .\n";
