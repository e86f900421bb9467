// Board fixtures and cell grids.
//
// The service transmits positions as fixture text: a "size N" line followed
// by N rows written top-down, cells separated by spaces. Codes are "." for
// empty, "B"/"W"/"R" for plain stones, and "b<k>"/"w<k>" for the two sides
// of entangled pair k. Turn events are replayed onto grids one by one so
// the client can animate a resolution without owning an engine.

import type { GameEvent } from "./types.js";

export const COLUMNS = "ABCDEFGHJKLMNOPQRSTUVWXYZ"; // no I, by Go convention

export type CellKind = "empty" | "black" | "white" | "red" | "eblack" | "ewhite";

export interface Cell {
  kind: CellKind;
  pair: number | null;
}

// rows[0] is the top row (row N); A1 sits at rows[size-1][0]
export interface Grid {
  size: number;
  rows: Cell[][];
}

const EMPTY_CELL: Cell = { kind: "empty", pair: null };

export function formatCoord(col: number, row: number): string {
  return `${COLUMNS[col]}${row + 1}`;
}

export function parseCoord(coord: string, size: number): { col: number; row: number } {
  const m = /^([A-Za-z])(\d{1,2})$/.exec(coord.trim());
  if (!m) throw new Error(`malformed coordinate ${coord}`);
  const col = COLUMNS.indexOf(m[1]!.toUpperCase());
  const row = parseInt(m[2]!, 10) - 1;
  if (col < 0 || col >= size || row < 0 || row >= size) {
    throw new Error(`coordinate ${coord} is off a size-${size} board`);
  }
  return { col, row };
}

export function emptyGrid(size: number): Grid {
  const rows = Array.from({ length: size }, () =>
    Array.from({ length: size }, () => EMPTY_CELL),
  );
  return { size, rows };
}

function parseCode(token: string): Cell {
  switch (token) {
    case ".":
      return EMPTY_CELL;
    case "B":
      return { kind: "black", pair: null };
    case "W":
      return { kind: "white", pair: null };
    case "R":
      return { kind: "red", pair: null };
  }
  const m = /^([bw])(\d+)$/.exec(token);
  if (m) {
    return { kind: m[1] === "b" ? "eblack" : "ewhite", pair: parseInt(m[2]!, 10) };
  }
  throw new Error(`unknown cell code ${token}`);
}

function formatCode(cell: Cell, pair: number): string {
  switch (cell.kind) {
    case "empty":
      return ".";
    case "black":
      return "B";
    case "white":
      return "W";
    case "red":
      return "R";
    case "eblack":
      return `b${pair}`;
    case "ewhite":
      return `w${pair}`;
  }
}

export function parseFixture(text: string): Grid {
  const lines: string[] = [];
  for (const raw of text.split("\n")) {
    const stripped = raw.split("#", 1)[0]!.trim();
    if (stripped) lines.push(stripped);
  }
  const head = lines.length > 0 ? /^size\s+(\d+)$/i.exec(lines[0]!) : null;
  if (!head) throw new Error('fixture must start with a "size N" line');
  const size = parseInt(head[1]!, 10);
  if (lines.length !== size + 1) {
    throw new Error(`expected ${size} rows, got ${lines.length - 1}`);
  }
  const rows: Cell[][] = [];
  for (const line of lines.slice(1)) {
    const tokens = line.split(/\s+/);
    if (tokens.length !== size) {
      throw new Error(`row "${line}" does not have ${size} cells`);
    }
    rows.push(tokens.map(parseCode));
  }
  return { size, rows };
}

/**
 * Canonical fixture text: pair ids renumbered from 1 in reading order, the
 * same form the service serializes. Ends with a newline.
 */
export function formatFixture(grid: Grid): string {
  const renumber = new Map<number, number>();
  const lines = [`size ${grid.size}`];
  for (const row of grid.rows) {
    const codes = row.map((cell) => {
      let label = 0;
      if (cell.pair !== null) {
        let mapped = renumber.get(cell.pair);
        if (mapped === undefined) {
          mapped = renumber.size + 1;
          renumber.set(cell.pair, mapped);
        }
        label = mapped;
      }
      return formatCode(cell, label);
    });
    lines.push(codes.join(" "));
  }
  return lines.join("\n") + "\n";
}

/** Grid with pair labels rewritten to the canonical numbering. */
export function normalizePairs(grid: Grid): Grid {
  return parseFixture(formatFixture(grid));
}

export function cellAt(grid: Grid, coord: string): Cell {
  const { col, row } = parseCoord(coord, grid.size);
  return grid.rows[grid.size - 1 - row]![col]!;
}

function withCell(grid: Grid, coord: string, cell: Cell): Grid {
  const { col, row } = parseCoord(coord, grid.size);
  const r = grid.size - 1 - row;
  const rows = grid.rows.map((cells, i) =>
    i === r ? cells.map((c, j) => (j === col ? cell : c)) : cells,
  );
  return { size: grid.size, rows };
}

/**
 * Apply one resolution event. Events arrive in the order the engine emitted
 * them and are complete: replaying a turn's list onto the previous board
 * reproduces the turn's final board.
 */
export function applyEvent(grid: Grid, ev: GameEvent): Grid {
  switch (ev.type) {
    case "PlacedBlack":
      return withCell(grid, ev.point, { kind: "black", pair: null });
    case "PlacedWhite":
      return withCell(grid, ev.point, { kind: "white", pair: null });
    case "RedCreated":
      // both players chose this point; no Placed events precede it
      return withCell(grid, ev.point, { kind: "red", pair: null });
    case "EntangleCreated": {
      let g = grid;
      for (const p of ev.blackStones) {
        g = withCell(g, p, { kind: "eblack", pair: ev.pairId });
      }
      for (const p of ev.whiteStones) {
        g = withCell(g, p, { kind: "ewhite", pair: ev.pairId });
      }
      return g;
    }
    case "RedResolved":
      return withCell(grid, ev.point, { kind: ev.toColor, pair: null });
    case "EResolved": {
      // both sides take the color first; the dead side is captured by the
      // GroupCaptured event that follows
      const rows = grid.rows.map((cells) =>
        cells.map((c) =>
          c.pair === ev.pairId ? { kind: ev.resolvedColor, pair: null } : c,
        ),
      );
      return { size: grid.size, rows };
    }
    case "GroupCaptured": {
      let g = grid;
      for (const p of ev.stones) g = withCell(g, p, EMPTY_CELL);
      return g;
    }
    case "SuicideAbsorbedRed":
      return withCell(grid, ev.point, EMPTY_CELL);
  }
}

export function applyEvents(grid: Grid, events: GameEvent[]): Grid {
  let g = grid;
  for (const ev of events) g = applyEvent(g, ev);
  return g;
}
