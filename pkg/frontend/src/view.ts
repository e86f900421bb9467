// Client-side view model.
//
// The view is event sourced: turn entries from the event stream are folded
// in as they arrive, and a fresh get_state response produces the identical
// model (the convergence invariant the integration test checks). Nothing
// is stored beyond what the service sent; in particular the opponent's
// commitment is a boolean, never a move.

import type {
  EventsResponse,
  MatchState,
  MatchStatus,
  PlayerColor,
  Prisoners,
  ScoreJson,
  TurnEntry,
} from "./types.js";
import { otherColor } from "./types.js";
import type { CellKind } from "./board.js";
import { formatCoord, normalizePairs, parseFixture } from "./board.js";

export interface ClientView {
  matchId: string;
  size: number;
  /** my color; null when spectating */
  color: PlayerColor | null;
  status: MatchStatus;
  /** next unresolved turn, 0-based */
  turn: number;
  myCommitted: boolean;
  opponentCommitted: boolean;
  prisoners: Prisoners;
  /** latest resolved position, fixture text */
  board: string;
  history: TurnEntry[];
  /** index into history, or null to follow the live position */
  cursor: number | null;
  winner: PlayerColor | null;
  reason: string | null;
  score: ScoreJson | null;
}

export function viewFromState(state: MatchState, color: PlayerColor | null): ClientView {
  return {
    matchId: state.matchId,
    size: state.size,
    color,
    status: state.status,
    turn: state.turn,
    myCommitted: color !== null && state.committed[color],
    opponentCommitted: color !== null && state.committed[otherColor(color)],
    prisoners: state.prisoners,
    board: state.board,
    history: [...state.history],
    cursor: null,
    winner: state.winner,
    reason: state.reason,
    score: state.score,
  };
}

/**
 * Fold one resolved turn into the view. Entries already applied are
 * skipped, so replays after a reconnect are harmless.
 */
export function applyEntry(view: ClientView, entry: TurnEntry): ClientView {
  if (entry.turn < view.turn) return view;
  return {
    ...view,
    turn: entry.turn + 1,
    board: entry.board,
    prisoners: entry.prisoners,
    history: [...view.history, entry],
    myCommitted: false,
    opponentCommitted: false,
  };
}

export function applyFeed(view: ClientView, feed: EventsResponse): ClientView {
  let v = view;
  for (const entry of feed.entries) v = applyEntry(v, entry);
  if (
    v.status !== feed.status ||
    v.winner !== feed.winner ||
    v.reason !== feed.reason
  ) {
    v = { ...v, status: feed.status, winner: feed.winner, reason: feed.reason };
  }
  return v;
}

export function markCommitted(view: ClientView): ClientView {
  return view.myCommitted ? view : { ...view, myCommitted: true };
}

export function withCursor(view: ClientView, cursor: number | null): ClientView {
  if (cursor !== null && (cursor < 0 || cursor >= view.history.length)) {
    throw new Error(`history cursor ${cursor} out of range`);
  }
  return { ...view, cursor };
}

// -- render model -------------------------------------------------------------

export interface RenderCell {
  coord: string;
  kind: CellKind;
  /** canonical pair number for entangled stones */
  pair: number | null;
  /** stone placed on the displayed turn */
  lastMove: boolean;
}

export interface RenderModel {
  size: number;
  status: MatchStatus;
  /** resolved turns reflected by the displayed board */
  turn: number;
  prisoners: Prisoners;
  /** rows top-down, as drawn */
  cells: RenderCell[][];
}

/**
 * What the board widget draws. Derived purely from the view; two views that
 * agree on this model look the same on screen.
 */
export function renderModel(view: ClientView): RenderModel {
  let boardText: string;
  let turn: number;
  let prisoners: Prisoners;
  let shown: TurnEntry | null;
  if (view.cursor === null) {
    boardText = view.board;
    turn = view.turn;
    prisoners = view.prisoners;
    shown = view.history.length > 0 ? view.history[view.history.length - 1]! : null;
  } else {
    shown = view.history[view.cursor]!;
    boardText = shown.board;
    turn = shown.turn + 1;
    prisoners = shown.prisoners;
  }

  const last = new Set<string>();
  if (shown) {
    if (shown.black !== "pass") last.add(shown.black);
    if (shown.white !== "pass") last.add(shown.white);
  }

  const grid = normalizePairs(parseFixture(boardText));
  const cells = grid.rows.map((row, r) =>
    row.map((cell, c) => {
      const coord = formatCoord(c, grid.size - 1 - r);
      return {
        coord,
        kind: cell.kind,
        pair: cell.pair,
        lastMove: cell.kind !== "empty" && last.has(coord),
      };
    }),
  );
  return { size: grid.size, status: view.status, turn, prisoners, cells };
}

export function renderDigest(view: ClientView): string {
  return JSON.stringify(renderModel(view));
}
