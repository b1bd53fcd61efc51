// Pure board logic: parsing the position grammar, hex geometry for the SVG
// renderer, and a connectivity search used ONLY to highlight the winning
// chain after the server has declared a result.

import type { CellColor, GameView, Seat } from "./types.js";
import { seatColor } from "./types.js";

export interface Board {
  rows: number;
  cols: number;
  cells: (CellColor | null)[]; // row-major
}

const CELL_CHARS: Record<string, CellColor | null> = {
  ".": null,
  A: "amber",
  B: "blue",
};

/** Parse "N:row/row/..." or "RxC:row/..." exactly as the server writes it. */
export function parseBoard(position: string): Board {
  const colon = position.indexOf(":");
  if (colon < 0) throw new Error(`missing ':' in position ${JSON.stringify(position)}`);
  const header = position.slice(0, colon);
  const match = /^(\d+)(?:x(\d+))?$/.exec(header);
  if (!match) throw new Error(`bad size header ${JSON.stringify(header)}`);
  const rows = Number(match[1]);
  const cols = match[2] === undefined ? rows : Number(match[2]);
  if (rows < 1 || cols < 1 || rows > 19 || cols > 19) {
    throw new Error(`board dimensions out of range: ${rows}x${cols}`);
  }
  const rowTexts = position.slice(colon + 1).split("/");
  if (rowTexts.length !== rows) {
    throw new Error(`expected ${rows} rows, got ${rowTexts.length}`);
  }
  const cells: (CellColor | null)[] = [];
  for (const rowText of rowTexts) {
    if (rowText.length !== cols) {
      throw new Error(`row ${JSON.stringify(rowText)} should have ${cols} cells`);
    }
    for (const ch of rowText) {
      if (!(ch in CELL_CHARS)) throw new Error(`bad cell character ${JSON.stringify(ch)}`);
      cells.push(CELL_CHARS[ch] ?? null);
    }
  }
  return { rows, cols, cells };
}

// The six hex neighbors on the rhombus grid.
const OFFSETS: ReadonlyArray<readonly [number, number]> = [
  [-1, 0],
  [-1, 1],
  [0, -1],
  [0, 1],
  [1, -1],
  [1, 0],
];

export function neighborIndexes(index: number, rows: number, cols: number): number[] {
  const r = Math.floor(index / cols);
  const c = index % cols;
  const out: number[] = [];
  for (const [dr, dc] of OFFSETS) {
    const nr = r + dr;
    const nc = c + dc;
    if (nr >= 0 && nr < rows && nc >= 0 && nc < cols) out.push(nr * cols + nc);
  }
  return out;
}

/**
 * Cells of the winning chain, or null if neither side has connected yet.
 * Amber connects the top row to the bottom row; blue the left column to the
 * right column. This is a display aid — the server decides the winner.
 */
export function winningChain(board: Board): { winner: CellColor; cells: Set<number> } | null {
  for (const color of ["amber", "blue"] as const) {
    const cells = chainFor(board, color);
    if (cells) return { winner: color, cells };
  }
  return null;
}

function chainFor(board: Board, color: CellColor): Set<number> | null {
  const { rows, cols, cells } = board;
  const starts: number[] = [];
  for (let i = 0; i < rows * cols; i++) {
    if (cells[i] !== color) continue;
    const onStartEdge = color === "amber" ? i < cols : i % cols === 0;
    if (onStartEdge) starts.push(i);
  }
  const seen = new Set<number>(starts);
  const queue = [...starts];
  let reached = false;
  while (queue.length > 0) {
    const i = queue.pop()!;
    const onEndEdge = color === "amber" ? Math.floor(i / cols) === rows - 1 : i % cols === cols - 1;
    if (onEndEdge) reached = true;
    for (const nb of neighborIndexes(i, rows, cols)) {
      if (cells[nb] === color && !seen.has(nb)) {
        seen.add(nb);
        queue.push(nb);
      }
    }
  }
  return reached ? seen : null;
}

// --- geometry ----------------------------------------------------------

export const HEX_RADIUS = 22;
const SQRT3 = Math.sqrt(3);

/** Center of a cell: rows shear right so the board is a rhombus. */
export function hexCenter(row: number, col: number, radius = HEX_RADIUS): { x: number; y: number } {
  const w = radius * SQRT3; // width of a pointy-top hex
  return { x: (col + row / 2 + 1) * w, y: radius * 1.5 * row + radius * 1.5 };
}

/** SVG polygon points for a pointy-top hexagon. */
export function hexPoints(cx: number, cy: number, radius = HEX_RADIUS): string {
  const points: string[] = [];
  for (let k = 0; k < 6; k++) {
    const angle = (Math.PI / 3) * k + Math.PI / 6;
    points.push(`${(cx + radius * Math.cos(angle)).toFixed(2)},${(cy + radius * Math.sin(angle)).toFixed(2)}`);
  }
  return points.join(" ");
}

export function boardExtent(rows: number, cols: number, radius = HEX_RADIUS): { width: number; height: number } {
  const w = radius * SQRT3;
  return { width: (cols + rows / 2 + 1.5) * w, height: radius * 1.5 * rows + radius * 2.5 };
}

// --- input legality (mirrors what the current view allows; the server
// remains the authority) -------------------------------------------------

export function legalBidRange(view: GameView, seat: Seat): { min: number; max: number } | null {
  if (view.phase.kind !== "bids" || view.phase.committed[seat]) return null;
  return { min: 0, max: view.chips[seat] };
}

export function canMove(view: GameView, seat: Seat, row: number, col: number): boolean {
  if (view.phase.kind !== "move" || view.phase.mover !== seat) return false;
  const board = parseBoard(view.position);
  if (row < 0 || row >= board.rows || col < 0 || col >= board.cols) return false;
  return board.cells[row * board.cols + col] === null;
}

/** Seats the human at this browser is allowed to act for. */
export function humanSeats(view: GameView): Seat[] {
  const seats: Seat[] = ["alice", "bob"];
  return seats.filter((s) => s !== view.ai_player);
}

export function chipConservationHolds(view: GameView): boolean {
  return view.chips.alice + view.chips.bob === view.total_chips;
}

export function describePhase(view: GameView): string {
  switch (view.phase.kind) {
    case "bids": {
      const waiting = (["alice", "bob"] as const).filter((s) => view.phase.kind === "bids" && !view.phase.committed[s]);
      return waiting.length === 0 ? "resolving bids" : `sealed bidding — waiting on ${waiting.join(" and ")}`;
    }
    case "move":
      return `${view.phase.mover} won the auction and must place a stone`;
    case "done":
      return `${view.phase.winner} wins (${seatColor(view.phase.winner)} chain complete)`;
  }
}
