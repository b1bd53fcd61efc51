// Mirrors of the service's JSON schemas. The server is the authority for
// all game logic; these types exist so the client can render and validate
// inputs, never to simulate the game.

export type Seat = "alice" | "bob";

export type CellColor = "amber" | "blue";

export interface ChipCounts {
  alice: number;
  bob: number;
}

export type Phase =
  | { kind: "bids"; committed: { alice: boolean; bob: boolean } }
  | { kind: "move"; mover: Seat }
  | { kind: "done"; winner: Seat };

export type HistoryEntry =
  | { type: "bids"; alice_bid: number; bob_bid: number; winner: Seat; transfer: number }
  | { type: "move"; player: Seat; cell: [number, number] }
  | { type: "end"; winner: Seat };

export interface GameView {
  position: string;
  size: number;
  chips: ChipCounts;
  total_chips: number;
  phase: Phase;
  advantage_holder: Seat | null;
  ai_player: Seat | null;
  winner: Seat | null;
  history: HistoryEntry[];
}

export interface Advice {
  hex: [number, number];
  bid: number;
  l_hat: number;
  criticality: number;
  trials: number;
}

export interface TiePolicyBody {
  kind: "marker" | "fixed";
  player: Seat;
}

export interface GameConfigBody {
  size?: number;
  chips_alice?: number;
  chips_bob?: number;
  tie_policy?: TiePolicyBody;
}

export interface CreateGameBody {
  config?: GameConfigBody;
  ai_player?: Seat;
  trial_budget?: number;
  seed?: number;
}

export const seatColor = (seat: Seat): CellColor => (seat === "alice" ? "amber" : "blue");

export const otherSeat = (seat: Seat): Seat => (seat === "alice" ? "bob" : "alice");
