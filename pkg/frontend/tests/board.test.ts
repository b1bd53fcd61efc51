import { describe, expect, it } from "vitest";
import {
  boardExtent,
  canMove,
  chipConservationHolds,
  describePhase,
  hexCenter,
  humanSeats,
  legalBidRange,
  neighborIndexes,
  parseBoard,
  winningChain,
} from "../src/board.js";
import type { GameView } from "../src/types.js";

function viewWith(overrides: Partial<GameView>): GameView {
  return {
    position: "2:../..",
    size: 2,
    chips: { alice: 100, bob: 100 },
    total_chips: 200,
    phase: { kind: "bids", committed: { alice: false, bob: false } },
    advantage_holder: "bob",
    ai_player: null,
    winner: null,
    history: [],
    ...overrides,
  };
}

describe("parseBoard", () => {
  it("round-trips a square header", () => {
    const board = parseBoard("3:A../.B./..A");
    expect(board.rows).toBe(3);
    expect(board.cols).toBe(3);
    expect(board.cells[0]).toBe("amber");
    expect(board.cells[4]).toBe("blue");
    expect(board.cells[1]).toBeNull();
  });

  it("accepts rectangular headers", () => {
    const board = parseBoard("2x3:AB./..B");
    expect(board.rows).toBe(2);
    expect(board.cols).toBe(3);
    expect(board.cells).toHaveLength(6);
  });

  it.each([
    "",
    "3",
    "3:....",
    "2:../.../",
    "2:..",
    "2:xx/..",
    "0:",
    "20:" + Array(20).fill(".".repeat(20)).join("/"),
    "2x0:",
  ])("rejects %j", (text) => {
    expect(() => parseBoard(text)).toThrow();
  });
});

describe("neighborIndexes", () => {
  it("gives six neighbours in the middle", () => {
    // centre of a 3x3: index 4
    expect(neighborIndexes(4, 3, 3).sort((a, b) => a - b)).toEqual([1, 2, 3, 5, 6, 7]);
  });

  it("is symmetric", () => {
    const rows = 4;
    const cols = 3;
    for (let i = 0; i < rows * cols; i++) {
      for (const j of neighborIndexes(i, rows, cols)) {
        expect(neighborIndexes(j, rows, cols)).toContain(i);
      }
    }
  });

  it("acute corners touch two cells", () => {
    expect(neighborIndexes(0, 3, 3)).toHaveLength(2);
    expect(neighborIndexes(8, 3, 3)).toHaveLength(2);
  });
});

describe("winningChain", () => {
  it("finds an amber column", () => {
    const chain = winningChain(parseBoard("3:A../A../A.."));
    expect(chain?.winner).toBe("amber");
    expect(chain?.cells).toEqual(new Set([0, 3, 6]));
  });

  it("finds a blue row", () => {
    const chain = winningChain(parseBoard("3:.../BBB/..."));
    expect(chain?.winner).toBe("blue");
    expect([...(chain?.cells ?? [])].sort((a, b) => a - b)).toEqual([3, 4, 5]);
  });

  it("walks a staircase using the skew diagonals", () => {
    // (0,1)-(1,0) are adjacent so amber crosses in two stones on 2x2
    const chain = winningChain(parseBoard("2:.A/A."));
    expect(chain?.winner).toBe("amber");
    expect(chain?.cells).toEqual(new Set([1, 2]));
  });

  it("sees nothing on an unfinished board", () => {
    expect(winningChain(parseBoard("2:A./.B"))).toBeNull();
  });

  it("handles the single hex", () => {
    expect(winningChain(parseBoard("1:A"))?.winner).toBe("amber");
    expect(winningChain(parseBoard("1:B"))?.winner).toBe("blue");
  });
});

describe("view helpers", () => {
  it("legalBidRange follows the seat's chips", () => {
    const view = viewWith({ chips: { alice: 37, bob: 163 } });
    expect(legalBidRange(view, "alice")).toEqual({ min: 0, max: 37 });
    expect(legalBidRange(view, "bob")).toEqual({ min: 0, max: 163 });
  });

  it("legalBidRange is null once committed or out of phase", () => {
    const committed = viewWith({ phase: { kind: "bids", committed: { alice: true, bob: false } } });
    expect(legalBidRange(committed, "alice")).toBeNull();
    expect(legalBidRange(committed, "bob")).not.toBeNull();
    const moving = viewWith({ phase: { kind: "move", mover: "alice" } });
    expect(legalBidRange(moving, "alice")).toBeNull();
  });

  it("canMove wants the mover, an empty cell, and bounds", () => {
    const view = viewWith({ position: "2:A./..", phase: { kind: "move", mover: "bob" } });
    expect(canMove(view, "bob", 0, 1)).toBe(true);
    expect(canMove(view, "bob", 0, 0)).toBe(false); // occupied
    expect(canMove(view, "alice", 0, 1)).toBe(false); // not the mover
    expect(canMove(view, "bob", 2, 0)).toBe(false); // outside
  });

  it("humanSeats drops the AI seat", () => {
    expect(humanSeats(viewWith({}))).toEqual(["alice", "bob"]);
    expect(humanSeats(viewWith({ ai_player: "bob" }))).toEqual(["alice"]);
  });

  it("chipConservationHolds checks the sum", () => {
    expect(chipConservationHolds(viewWith({}))).toBe(true);
    expect(chipConservationHolds(viewWith({ chips: { alice: 90, bob: 100 } }))).toBe(false);
  });

  it("describePhase names the mover and the winner", () => {
    expect(describePhase(viewWith({ phase: { kind: "move", mover: "alice" } }))).toContain("alice");
    expect(describePhase(viewWith({ phase: { kind: "done", winner: "bob" }, winner: "bob" }))).toContain("bob");
  });
});

describe("geometry", () => {
  it("shears rows to the right", () => {
    const a = hexCenter(0, 0);
    const b = hexCenter(1, 0);
    expect(b.x).toBeGreaterThan(a.x);
    expect(b.y).toBeGreaterThan(a.y);
  });

  it("extent covers every centre", () => {
    const { width, height } = boardExtent(3, 4);
    for (let r = 0; r < 3; r++) {
      for (let c = 0; c < 4; c++) {
        const { x, y } = hexCenter(r, c);
        expect(x).toBeGreaterThan(0);
        expect(x).toBeLessThan(width);
        expect(y).toBeGreaterThan(0);
        expect(y).toBeLessThan(height);
      }
    }
  });
});
