// Browser application: lobby, live board, blind commit flow.
//
// All game data flows through SgoClient; the DOM below renders ClientView
// and never holds anything the service did not send.

import { ApiError, EventFeed, SgoClient } from "./api.js";
import { applyEvent, parseFixture, type Grid } from "./board.js";
import type { ClientView, RenderModel } from "./view.js";
import {
  applyEntry,
  applyFeed,
  markCommitted,
  renderModel,
  viewFromState,
  withCursor,
} from "./view.js";
import type { EventsResponse, MatchState, MoveResponse, PlayerColor, TurnEntry } from "./types.js";
import { formatCoord } from "./board.js";

export interface CommitHooks {
  confirm(move: string): boolean | Promise<boolean>;
  onWaiting(): void;
  onError(code: string, message: string, retryable: boolean): void;
}

export interface CommitClient {
  submitMove(matchId: string, token: string, turn: number, move: string): Promise<MoveResponse>;
  getState(matchId: string): Promise<MatchState>;
}

const RETRYABLE = new Set(["wrong-turn", "http-error", "network-error"]);

/**
 * Confirm, submit, then either lock into the waiting state or fold in the
 * resolved turn. A stale-turn rejection (for instance right after a
 * reconnect) refetches state so the view catches up with missed turns;
 * other server codes are surfaced verbatim.
 */
export async function commitFlow(
  client: CommitClient,
  token: string,
  view: ClientView,
  move: string,
  hooks: CommitHooks,
): Promise<ClientView> {
  if (view.status !== "InProgress" || view.myCommitted) return view;
  if (!(await hooks.confirm(move))) return view;
  let res: MoveResponse;
  try {
    res = await client.submitMove(view.matchId, token, view.turn, move);
  } catch (e) {
    if (e instanceof ApiError) {
      hooks.onError(e.code, e.message, RETRYABLE.has(e.code));
      if (e.code === "wrong-turn") {
        const fresh = await client.getState(view.matchId);
        return viewFromState(fresh, view.color);
      }
      return view;
    }
    hooks.onError("network-error", String(e), true);
    return view;
  }
  let next = markCommitted(view);
  if (res.resolved && res.entry) {
    next = applyEntry(next, res.entry);
  } else {
    hooks.onWaiting();
  }
  return next;
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

type CellClickHandler = (coord: string) => void;

function paintGridCells(
  doc: Document,
  boardEl: HTMLElement,
  grid: Grid,
  lastMoves: Set<string>,
  onClick: CellClickHandler | null,
): void {
  boardEl.textContent = "";
  boardEl.style.setProperty("--size", String(grid.size));
  grid.rows.forEach((row, r) => {
    row.forEach((cell, c) => {
      const coord = formatCoord(c, grid.size - 1 - r);
      const btn = el(doc, "button", `cell k-${cell.kind}`);
      btn.title = coord;
      if (cell.pair !== null) {
        btn.classList.add(`pair-hue-${cell.pair % 6}`);
        btn.appendChild(el(doc, "span", "badge", String(cell.pair)));
      }
      if (cell.kind !== "empty" && lastMoves.has(coord)) btn.classList.add("last");
      if (onClick && cell.kind === "empty") {
        btn.addEventListener("click", () => onClick(coord));
      } else {
        btn.disabled = true;
      }
      boardEl.appendChild(btn);
    });
  });
}

function paintModel(
  doc: Document,
  boardEl: HTMLElement,
  model: RenderModel,
  onClick: CellClickHandler | null,
): void {
  const grid: Grid = {
    size: model.size,
    rows: model.cells.map((row) => row.map((c) => ({ kind: c.kind, pair: c.pair }))),
  };
  const last = new Set<string>();
  for (const row of model.cells) for (const c of row) if (c.lastMove) last.add(c.coord);
  paintGridCells(doc, boardEl, grid, last, onClick);
}

export function initApp(root: HTMLElement, client: SgoClient = new SgoClient()): void {
  const doc = root.ownerDocument;
  root.textContent = "";

  const lobby = el(doc, "section", "lobby");
  const game = el(doc, "section", "game");
  game.hidden = true;
  root.append(lobby, game);

  // -- lobby ------------------------------------------------------------------
  lobby.appendChild(el(doc, "h1", undefined, "S-Go"));
  const sizeInput = el(doc, "input") as HTMLInputElement;
  sizeInput.type = "number";
  sizeInput.value = "9";
  sizeInput.min = "2";
  sizeInput.max = "25";
  const createBtn = el(doc, "button", "primary", "Create match");
  const createRow = el(doc, "div", "row");
  createRow.append("Board size ", sizeInput, createBtn);
  const createdOut = el(doc, "pre", "created");
  createdOut.hidden = true;
  const matchInput = el(doc, "input") as HTMLInputElement;
  matchInput.placeholder = "match id";
  const tokenInput = el(doc, "input") as HTMLInputElement;
  tokenInput.placeholder = "player token";
  const joinBtn = el(doc, "button", "primary", "Join");
  const joinRow = el(doc, "div", "row");
  joinRow.append(matchInput, tokenInput, joinBtn);
  lobby.append(createRow, createdOut, joinRow);

  // -- game -------------------------------------------------------------------
  const statusLine = el(doc, "div", "status-line");
  const boardEl = el(doc, "div", "board");
  const passBtn = el(doc, "button", undefined, "Pass");
  const resignBtn = el(doc, "button", undefined, "Resign");
  const prevBtn = el(doc, "button", undefined, "‹ back");
  const nextBtn = el(doc, "button", undefined, "forward ›");
  const liveBtn = el(doc, "button", undefined, "live");
  const controls = el(doc, "div", "controls");
  controls.append(passBtn, resignBtn, prevBtn, nextBtn, liveBtn);
  const prisonersEl = el(doc, "div", "prisoners");
  const scoreEl = el(doc, "div", "score");
  scoreEl.hidden = true;
  const noticeEl = el(doc, "div", "notice");
  game.append(statusLine, boardEl, controls, prisonersEl, scoreEl, noticeEl);

  let view: ClientView | null = null;
  let token = "";
  let feed: EventFeed | null = null;
  let animating = false;
  const pending: EventsResponse[] = [];
  let retryMove: string | null = null;

  function notice(text: string, retryable = false): void {
    noticeEl.textContent = "";
    if (!text) return;
    noticeEl.append(el(doc, "span", undefined, text));
    if (retryable && retryMove !== null) {
      const retry = el(doc, "button", undefined, "retry");
      const move = retryMove;
      retry.addEventListener("click", () => void commit(move));
      noticeEl.append(" ", retry);
    }
  }

  function paint(): void {
    if (!view) return;
    const model = renderModel(view);
    const live = view.cursor === null;
    const canPlay =
      live && view.status === "InProgress" && !view.myCommitted && !animating;
    paintModel(doc, boardEl, model, canPlay ? (coord) => void commit(coord) : null);

    const bits: string[] = [];
    bits.push(`match ${view.matchId}`);
    if (view.color) bits.push(`you are ${view.color}`);
    bits.push(view.status);
    bits.push(live ? `turn ${model.turn + 1}` : `viewing turn ${model.turn}`);
    if (view.status === "InProgress" && live) {
      if (view.myCommitted && !view.opponentCommitted) {
        bits.push("committed, waiting for opponent");
      } else if (view.opponentCommitted && !view.myCommitted) {
        bits.push("opponent has committed");
      }
    }
    if (view.status === "Finished") {
      bits.push(view.winner ? `${view.winner} wins (${view.reason})` : `tie (${view.reason})`);
    }
    statusLine.textContent = bits.join(" · ");
    prisonersEl.textContent = `prisoners — black ${model.prisoners.black}, white ${model.prisoners.white}`;

    scoreEl.hidden = view.score === null;
    if (view.score) {
      const s = view.score;
      scoreEl.textContent =
        `score: black ${s.blackTotal} (territory ${s.blackTerritory} + prisoners ${s.blackPrisoners}), ` +
        `white ${s.whiteTotal} (territory ${s.whiteTerritory} + prisoners ${s.whitePrisoners}) — ${s.outcome}`;
    }
    passBtn.disabled = !canPlay;
    resignBtn.disabled = view.status !== "InProgress" || view.color === null;
    prevBtn.disabled = view.history.length === 0;
    nextBtn.disabled = live;
    liveBtn.disabled = live;
  }

  async function animateEntry(prevBoard: string, entry: TurnEntry): Promise<void> {
    animating = true;
    try {
      let grid = parseFixture(prevBoard);
      const last = new Set<string>();
      if (entry.black !== "pass") last.add(entry.black);
      if (entry.white !== "pass") last.add(entry.white);
      for (const ev of entry.events) {
        grid = applyEvent(grid, ev);
        paintGridCells(doc, boardEl, grid, last, null);
        await sleep(180);
      }
    } finally {
      animating = false;
    }
  }

  async function drainFeed(): Promise<void> {
    while (pending.length > 0) {
      const f = pending.shift()!;
      if (!view) return;
      for (const entry of f.entries) {
        if (entry.turn < view.turn) continue; // already folded in
        await animateEntry(view.board, entry);
        view = applyEntry(view, entry);
        paint();
      }
      view = applyFeed(view, f);
      if (view.status === "Finished" && view.score === null) {
        // entries carry no score; one reconciling fetch fills the panel
        const fresh = await client.getState(view.matchId);
        view = { ...viewFromState(fresh, view.color), cursor: view.cursor };
      }
      paint();
    }
  }

  function onFeed(f: EventsResponse): void {
    pending.push(f);
    void drainFeed().catch((e) => notice(String(e)));
  }

  async function enterMatch(matchId: string, playerToken: string): Promise<void> {
    const joined = await client.join(matchId, playerToken);
    token = playerToken;
    const state = await client.getState(matchId);
    view = viewFromState(state, joined.color);
    lobby.hidden = true;
    game.hidden = false;
    feed?.stop();
    feed = new EventFeed(client, matchId, onFeed);
    void feed.run(state.history.length).catch((e) => notice(String(e)));
    paint();
  }

  async function commit(move: string): Promise<void> {
    if (!view || view.color === null) return;
    retryMove = move;
    notice("");
    const before = view;
    const after = await commitFlow(client, token, before, move, {
      confirm: (m) => doc.defaultView?.confirm(`Commit ${m}?`) ?? true,
      onWaiting: () => notice("move committed; waiting for the opponent"),
      onError: (code, message, retryable) => notice(`${code}: ${message}`, retryable),
    });
    // the feed may have advanced the view while we awaited the server
    if (view === before) {
      view = after;
      if (after.turn > before.turn && after.history.length > before.history.length) {
        const entry = after.history[after.history.length - 1]!;
        await animateEntry(before.board, entry);
      }
    }
    paint();
  }

  createBtn.addEventListener("click", () => {
    void (async () => {
      try {
        const size = parseInt(sizeInput.value, 10) || 9;
        const created = await client.createMatch({ size });
        createdOut.hidden = false;
        createdOut.textContent =
          `match ${created.matchId}\n` +
          `black token: ${created.blackToken}\n` +
          `white token: ${created.whiteToken}\n` +
          `send the white token to your opponent`;
        await enterMatch(created.matchId, created.blackToken);
      } catch (e) {
        notice(e instanceof ApiError ? `${e.code}: ${e.message}` : String(e));
      }
    })();
  });

  joinBtn.addEventListener("click", () => {
    void (async () => {
      try {
        await enterMatch(matchInput.value.trim(), tokenInput.value.trim());
      } catch (e) {
        notice(e instanceof ApiError ? `${e.code}: ${e.message}` : String(e));
      }
    })();
  });

  passBtn.addEventListener("click", () => void commit("pass"));

  resignBtn.addEventListener("click", () => {
    void (async () => {
      if (!view) return;
      if (!(doc.defaultView?.confirm("Resign the match?") ?? true)) return;
      try {
        const state = await client.resign(view.matchId, token);
        view = viewFromState(state, view.color);
        paint();
      } catch (e) {
        notice(e instanceof ApiError ? `${e.code}: ${e.message}` : String(e));
      }
    })();
  });

  prevBtn.addEventListener("click", () => {
    if (!view || view.history.length === 0) return;
    const at = view.cursor === null ? view.history.length - 1 : Math.max(0, view.cursor - 1);
    view = withCursor(view, at);
    paint();
  });

  nextBtn.addEventListener("click", () => {
    if (!view || view.cursor === null) return;
    view =
      view.cursor + 1 >= view.history.length
        ? withCursor(view, null)
        : withCursor(view, view.cursor + 1);
    paint();
  });

  liveBtn.addEventListener("click", () => {
    if (!view) return;
    view = withCursor(view, null);
    paint();
  });
}
