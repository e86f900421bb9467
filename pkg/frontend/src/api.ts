// HTTP client for the match service plus the long-poll event feed.

import type {
  CreateMatchResponse,
  EventsResponse,
  JoinResponse,
  MatchState,
  MoveResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  const text = await res.text();
  let data: unknown = null;
  if (text) {
    try {
      data = JSON.parse(text);
    } catch {
      data = null;
    }
  }
  if (!res.ok) {
    const err = (data as { error?: { code?: string; message?: string } } | null)?.error;
    throw new ApiError(err?.code ?? "http-error", err?.message ?? `HTTP ${res.status}`, res.status);
  }
  return data as T;
}

function post<T>(url: string, body: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
}

export interface CreateMatchOptions {
  size?: number;
  /** initial stones as [code, coordinate] pairs, e.g. ["B", "C3"] */
  setup?: [string, string][];
  maxTurns?: number;
}

export class SgoClient {
  constructor(readonly baseUrl: string = "") {}

  createMatch(opts: CreateMatchOptions = {}): Promise<CreateMatchResponse> {
    const body: Record<string, unknown> = {};
    if (opts.size !== undefined) body.size = opts.size;
    if (opts.setup !== undefined) body.setup = opts.setup;
    if (opts.maxTurns !== undefined) body.maxTurns = opts.maxTurns;
    return post(`${this.baseUrl}/match`, body);
  }

  join(matchId: string, token: string): Promise<JoinResponse> {
    return post(`${this.baseUrl}/match/${matchId}/join`, { token });
  }

  getState(matchId: string): Promise<MatchState> {
    return request(`${this.baseUrl}/match/${matchId}/state`);
  }

  submitMove(matchId: string, token: string, turn: number, move: string): Promise<MoveResponse> {
    return post(`${this.baseUrl}/match/${matchId}/move`, { token, turn, move });
  }

  resign(matchId: string, token: string): Promise<MatchState> {
    return post(`${this.baseUrl}/match/${matchId}/resign`, { token });
  }

  pollEvents(
    matchId: string,
    since = 0,
    wait = 25,
    signal?: AbortSignal,
  ): Promise<EventsResponse> {
    const url = `${this.baseUrl}/match/${matchId}/events?since=${since}&wait=${wait}`;
    return request(url, signal ? { signal } : undefined);
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/**
 * The single push connection of a client: one long poll outstanding at a
 * time, resumed from the last delivered entry. Transient failures retry;
 * stop() aborts the in-flight poll. `next` survives a stop, so a
 * reconnect picks up exactly the missed entries.
 */
export class EventFeed {
  next = 0;
  private stopped = false;
  private controller: AbortController | null = null;

  constructor(
    private readonly client: SgoClient,
    private readonly matchId: string,
    private readonly onFeed: (feed: EventsResponse) => void,
  ) {}

  async run(since = this.next): Promise<void> {
    this.next = since;
    this.stopped = false;
    while (!this.stopped) {
      let feed: EventsResponse;
      this.controller = new AbortController();
      try {
        feed = await this.client.pollEvents(this.matchId, this.next, 25, this.controller.signal);
      } catch {
        if (!this.stopped) await sleep(500);
        continue;
      } finally {
        this.controller = null;
      }
      if (this.stopped) return;
      this.next = feed.next;
      this.onFeed(feed);
      if (feed.status === "Finished" || feed.status === "Abandoned") return;
    }
  }

  stop(): void {
    this.stopped = true;
    this.controller?.abort();
  }
}
