// JSON shapes of the match service. Field names mirror the wire format
// exactly; nothing here is derived.

export type PlayerColor = "black" | "white";
export type StoneColor = PlayerColor | "red";
export type MatchStatus = "Open" | "InProgress" | "Finished" | "Abandoned";

export interface Prisoners {
  black: number;
  white: number;
}

export interface PlacedBlackEvent {
  type: "PlacedBlack";
  point: string;
}

export interface PlacedWhiteEvent {
  type: "PlacedWhite";
  point: string;
}

export interface RedCreatedEvent {
  type: "RedCreated";
  point: string;
}

export interface EntangleCreatedEvent {
  type: "EntangleCreated";
  pairId: number;
  blackStones: string[];
  whiteStones: string[];
}

export interface RedResolvedEvent {
  type: "RedResolved";
  point: string;
  toColor: PlayerColor;
}

export interface EResolvedEvent {
  type: "EResolved";
  pairId: number;
  resolvedColor: PlayerColor;
}

export interface GroupCapturedEvent {
  type: "GroupCaptured";
  color: StoneColor;
  stones: string[];
  capturedBy: PlayerColor;
}

export interface SuicideAbsorbedRedEvent {
  type: "SuicideAbsorbedRed";
  point: string;
  dyingColor: PlayerColor;
}

export type GameEvent =
  | PlacedBlackEvent
  | PlacedWhiteEvent
  | RedCreatedEvent
  | EntangleCreatedEvent
  | RedResolvedEvent
  | EResolvedEvent
  | GroupCapturedEvent
  | SuicideAbsorbedRedEvent;

/** One resolved turn as the service reports it. */
export interface TurnEntry {
  turn: number;
  black: string;
  white: string;
  events: GameEvent[];
  board: string;
  prisoners: Prisoners;
  over: boolean;
}

export interface ScoreJson {
  blackTerritory: number;
  whiteTerritory: number;
  blackPrisoners: number;
  whitePrisoners: number;
  blackTotal: number;
  whiteTotal: number;
  outcome: "black-wins" | "white-wins" | "tie";
}

export interface MatchState {
  matchId: string;
  size: number;
  status: MatchStatus;
  turn: number;
  board: string;
  prisoners: Prisoners;
  committed: { black: boolean; white: boolean };
  joined: { black: boolean; white: boolean };
  history: TurnEntry[];
  winner: PlayerColor | null;
  reason: string | null;
  score: ScoreJson | null;
}

export interface CreateMatchResponse {
  matchId: string;
  blackToken: string;
  whiteToken: string;
  size: number;
}

export interface JoinResponse {
  color: PlayerColor;
  status: MatchStatus;
  joined: { black: boolean; white: boolean };
}

export interface MoveResponse {
  status: "committed" | "resolved";
  turn: number;
  resolved: boolean;
  entry?: TurnEntry;
}

export interface EventsResponse {
  entries: TurnEntry[];
  next: number;
  status: MatchStatus;
  winner: PlayerColor | null;
  reason: string | null;
}

export function otherColor(c: PlayerColor): PlayerColor {
  return c === "black" ? "white" : "black";
}
