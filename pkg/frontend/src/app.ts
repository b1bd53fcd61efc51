// DOM application: a setup form, the SVG board, sealed-bid entry, move
// clicks, history, and an optional advice hint. All state transitions come
// from server responses; the client never advances the game locally.

import { ServiceClient, ServiceError } from "./api.js";
import {
  boardExtent,
  canMove,
  chipConservationHolds,
  describePhase,
  hexCenter,
  hexPoints,
  humanSeats,
  legalBidRange,
  parseBoard,
  winningChain,
} from "./board.js";
import type { Advice, GameView, HistoryEntry, Seat } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const FILL = { amber: "#d98e04", blue: "#2e6f9e", empty: "#e8e4da" } as const;

export interface AppOptions {
  /** Poll interval for opponent/AI activity; 0 disables polling. */
  pollMs?: number;
}

export interface AppHandle {
  refresh(): Promise<void>;
  dispose(): void;
  gameId(): string | null;
  view(): GameView | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function historyLine(entry: HistoryEntry): string {
  switch (entry.type) {
    case "bids":
      return `bids ${entry.alice_bid} vs ${entry.bob_bid} — ${entry.winner} pays ${entry.transfer}`;
    case "move":
      return `${entry.player} plays (${entry.cell[0]}, ${entry.cell[1]})`;
    case "end":
      return `${entry.winner} wins`;
  }
}

export function createApp(root: HTMLElement, client: ServiceClient, options: AppOptions = {}): AppHandle {
  const pollMs = options.pollMs ?? 1000;

  let gameId: string | null = null;
  let view: GameView | null = null;
  let advice: Advice | null = null;
  let busy = false; // at most one in-flight mutating request
  let retryAction: (() => Promise<void>) | null = null;
  let timer: ReturnType<typeof setInterval> | null = null;

  // --- static skeleton ---------------------------------------------------

  const setup = el("form", { "data-testid": "setup", class: "setup" });
  const sizeInput = el("input", { type: "number", value: "5", min: "1", max: "19", "data-testid": "setup-size" });
  const chipsInput = el("input", { type: "number", value: "100", min: "1", "data-testid": "setup-chips" });
  const aiSelect = el("select", { "data-testid": "setup-ai" });
  for (const [value, label] of [["bob", "you are alice, AI is bob"], ["alice", "you are bob, AI is alice"], ["none", "two humans at this table"]] as const) {
    aiSelect.appendChild(el("option", { value }, label));
  }
  const seedInput = el("input", { type: "number", placeholder: "random", "data-testid": "setup-seed" });
  const adviceToggle = el("input", { type: "checkbox", "data-testid": "setup-advice" }); // off: competitive
  const startButton = el("button", { type: "submit", "data-testid": "setup-start" }, "start game");
  setup.append(
    labeled("board size", sizeInput),
    labeled("chips per player", chipsInput),
    labeled("opponent", aiSelect),
    labeled("seed (reproducible AI)", seedInput),
    labeled("practice mode: advice hints", adviceToggle),
    startButton,
  );

  const errorBanner = el("div", { "data-testid": "error", class: "error", hidden: "" });
  const errorText = el("span", { "data-testid": "error-text" });
  const retryButton = el("button", { type: "button", "data-testid": "retry" }, "retry");
  errorBanner.append(errorText, retryButton);

  const game = el("section", { "data-testid": "game", hidden: "" });
  const status = el("div", { class: "status" });
  const chipsAlice = el("span", { "data-testid": "chips-alice" });
  const chipsBob = el("span", { "data-testid": "chips-bob" });
  const phaseText = el("span", { "data-testid": "phase" });
  const markerText = el("span", { "data-testid": "marker" });
  status.append(chipsAlice, chipsBob, markerText, phaseText);

  const boardHolder = el("div", { "data-testid": "board-holder", class: "board" });

  const bidForm = el("form", { "data-testid": "bid-form", hidden: "" });
  const bidSeat = el("select", { "data-testid": "bid-seat" });
  const bidAmount = el("input", { type: "number", "data-testid": "bid-amount", value: "0" });
  const bidRangeLabel = el("span", { "data-testid": "bid-range" });
  const bidCommit = el("button", { type: "submit", "data-testid": "bid-commit" }, "commit sealed bid");
  const bidInvalid = el("span", { "data-testid": "bid-invalid", class: "invalid", hidden: "" });
  const sealedNote = el("span", { "data-testid": "sealed-note", hidden: "" });
  bidForm.append(bidSeat, bidAmount, bidRangeLabel, bidCommit, bidInvalid, sealedNote);

  const adviceRow = el("div", { "data-testid": "advice-row", hidden: "" });
  const adviceButton = el("button", { type: "button", "data-testid": "advice-button" }, "advice");
  const adviceHint = el("span", { "data-testid": "advice-hint" });
  adviceRow.append(adviceButton, adviceHint);

  const historyList = el("ol", { "data-testid": "history" });

  game.append(status, boardHolder, bidForm, adviceRow, el("h3", {}, "history"), historyList);
  root.append(setup, errorBanner, game);

  function labeled(text: string, control: HTMLElement): HTMLElement {
    const wrap = el("label", {}, text + " ");
    wrap.appendChild(control);
    return wrap;
  }

  // --- rendering -----------------------------------------------------------

  function render(): void {
    if (view === null) return;
    if (!chipConservationHolds(view)) {
      // a view that violates bookkeeping is malformed: keep the old board
      showError(`inconsistent view: chips ${view.chips.alice}+${view.chips.bob} != ${view.total_chips}`, null);
      return;
    }
    let svg: SVGSVGElement;
    try {
      svg = renderBoard(view);
    } catch (exc) {
      showError(`malformed board: ${(exc as Error).message}`, null);
      return; // no partial render — previous board stays
    }
    game.hidden = false;
    setup.hidden = true;
    boardHolder.replaceChildren(svg);
    chipsAlice.textContent = `alice (amber): ${view.chips.alice} chips`;
    chipsBob.textContent = `bob (blue): ${view.chips.bob} chips`;
    markerText.textContent = view.advantage_holder === null ? "" : `marker: ${view.advantage_holder}`;
    phaseText.textContent = describePhase(view);
    renderBidForm();
    renderAdviceRow();
    historyList.replaceChildren(...view.history.map((entry) => el("li", {}, historyLine(entry))));
  }

  function renderBoard(current: GameView): SVGSVGElement {
    const board = parseBoard(current.position);
    const chain = current.phase.kind === "done" ? winningChain(board) : null;
    const { width, height } = boardExtent(board.rows, board.cols);
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${width.toFixed(1)} ${height.toFixed(1)}`);
    svg.setAttribute("width", String(Math.round(width)));
    svg.setAttribute("data-testid", "board");
    // side markers: amber owns top/bottom, blue owns left/right
    svg.appendChild(edgeBand(board, "top"));
    svg.appendChild(edgeBand(board, "bottom"));
    svg.appendChild(edgeBand(board, "left"));
    svg.appendChild(edgeBand(board, "right"));
    const mover = current.phase.kind === "move" ? current.phase.mover : null;
    const moverIsHuman = mover !== null && mover !== current.ai_player;
    for (let r = 0; r < board.rows; r++) {
      for (let c = 0; c < board.cols; c++) {
        const i = r * board.cols + c;
        const color = board.cells[i] ?? null;
        const { x, y } = hexCenter(r, c);
        const poly = document.createElementNS(SVG_NS, "polygon");
        poly.setAttribute("points", hexPoints(x, y));
        poly.setAttribute("data-testid", `cell-${r}-${c}`);
        poly.setAttribute("fill", color === null ? FILL.empty : FILL[color]);
        poly.setAttribute("stroke", "#555");
        const clickable = moverIsHuman && color === null;
        poly.setAttribute("class", [
          "cell",
          clickable ? "clickable" : "",
          chain?.cells.has(i) ? "winning" : "",
          advice && advice.hex[0] === r && advice.hex[1] === c ? "advised" : "",
        ].filter(Boolean).join(" "));
        if (chain?.cells.has(i)) {
          poly.setAttribute("stroke", "#111");
          poly.setAttribute("stroke-width", "3");
        }
        poly.addEventListener("click", () => void onCellClick(r, c));
        svg.appendChild(poly);
      }
    }
    return svg;
  }

  function edgeBand(board: { rows: number; cols: number }, side: "top" | "bottom" | "left" | "right"): SVGElement {
    const band = document.createElementNS(SVG_NS, "rect");
    const { width, height } = boardExtent(board.rows, board.cols);
    const amber = side === "top" || side === "bottom";
    const t = 4;
    if (side === "top") setRect(band, 0, 0, width, t);
    if (side === "bottom") setRect(band, 0, height - t, width, t);
    if (side === "left") setRect(band, 0, 0, t, height);
    if (side === "right") setRect(band, width - t, 0, t, height);
    band.setAttribute("fill", amber ? FILL.amber : FILL.blue);
    band.setAttribute("data-testid", `edge-${side}`);
    return band;
  }

  function setRect(rect: SVGElement, x: number, y: number, w: number, h: number): void {
    rect.setAttribute("x", String(x));
    rect.setAttribute("y", String(y));
    rect.setAttribute("width", String(w));
    rect.setAttribute("height", String(h));
  }

  function renderBidForm(): void {
    if (view === null) return;
    const current = view;
    if (current.phase.kind !== "bids") {
      bidForm.hidden = true;
      return;
    }
    const committed = current.phase.committed;
    const open = humanSeats(current).filter((s) => !committed[s]);
    bidForm.hidden = false;
    bidSeat.replaceChildren(...open.map((s) => el("option", { value: s }, `bid as ${s}`)));
    bidSeat.hidden = open.length <= 1;
    const seat = (bidSeat.value || open[0]) as Seat | undefined;
    if (open.length === 0 || seat === undefined) {
      bidAmount.hidden = bidCommit.hidden = true;
      bidRangeLabel.textContent = "";
    } else {
      bidAmount.hidden = bidCommit.hidden = false;
      const range = legalBidRange(current, seat);
      if (range !== null) {
        bidAmount.min = String(range.min);
        bidAmount.max = String(range.max);
        bidRangeLabel.textContent = `legal: ${range.min}..${range.max}`;
      }
    }
    bidCommit.toggleAttribute("disabled", busy);
    const aiSealed = current.ai_player !== null && committed[current.ai_player];
    sealedNote.hidden = !aiSealed;
    sealedNote.textContent = aiSealed ? `${current.ai_player} has committed a sealed bid` : "";
  }

  function renderAdviceRow(): void {
    if (view === null) return;
    const wantHints = adviceToggle.checked; // competitive mode: off by default
    const inBids = view.phase.kind === "bids";
    adviceRow.hidden = !(wantHints && inBids && humanSeats(view).length > 0);
    adviceHint.textContent = advice
      ? `play (${advice.hex[0]}, ${advice.hex[1]}), bid ${advice.bid}`
      : "";
  }

  function showError(message: string, retry: (() => Promise<void>) | null): void {
    errorBanner.hidden = false;
    errorText.textContent = message;
    retryAction = retry;
    retryButton.hidden = retry === null;
  }

  function clearError(): void {
    errorBanner.hidden = true;
    errorText.textContent = "";
    retryAction = null;
  }

  // --- actions -------------------------------------------------------------

  async function mutate(action: () => Promise<GameView>, retry: () => Promise<void>): Promise<boolean> {
    if (busy) return false;
    busy = true;
    renderBidForm();
    let ok = false;
    try {
      const next = await action();
      view = next;
      advice = null; // stale after any state change
      ok = true;
      clearError();
    } catch (exc) {
      const message = exc instanceof ServiceError ? exc.message : String(exc);
      showError(message, retry);
    } finally {
      busy = false;
      render();
    }
    return ok;
  }

  async function onStart(): Promise<void> {
    const size = Number(sizeInput.value);
    const chips = Number(chipsInput.value);
    const body = {
      config: { size, chips_alice: chips, chips_bob: chips },
      ...(aiSelect.value === "none" ? {} : { ai_player: aiSelect.value as Seat }),
      ...(seedInput.value === "" ? {} : { seed: Number(seedInput.value) }),
    };
    if (busy) return;
    busy = true;
    try {
      const created = await client.createGame(body);
      gameId = created.id;
      view = created.view;
      advice = null;
      clearError();
      startPolling();
    } catch (exc) {
      const message = exc instanceof ServiceError ? exc.message : String(exc);
      showError(message, onStart);
    } finally {
      busy = false;
      render();
    }
  }

  async function onCommitBid(): Promise<void> {
    if (view === null || gameId === null || view.phase.kind !== "bids") return;
    const seat = bidSeat.value as Seat;
    const amount = Number(bidAmount.value);
    const range = legalBidRange(view, seat);
    // client-side validation: an illegal amount never leaves the browser
    if (range === null || !Number.isInteger(amount) || amount < range.min || amount > range.max) {
      bidInvalid.hidden = false;
      bidInvalid.textContent = range
        ? `bid must be an integer in ${range.min}..${range.max}`
        : `no bid expected from ${seat} right now`;
      return;
    }
    bidInvalid.hidden = true;
    const id = gameId;
    const attempt = async (): Promise<void> => {
      const ok = await mutate(() => client.submitBid(id, seat, amount), attempt);
      if (ok) bidAmount.value = "0"; // sealed: leave nothing behind on screen
    };
    await attempt();
  }

  async function onCellClick(row: number, col: number): Promise<void> {
    if (view === null || gameId === null) return;
    if (view.phase.kind !== "move") return;
    const mover = view.phase.mover;
    if (mover === view.ai_player) return;
    if (!canMove(view, mover, row, col)) return; // occupied: no request issued
    const id = gameId;
    await mutate(() => client.submitMove(id, mover, [row, col]), () => onCellClick(row, col));
  }

  async function onAdvice(): Promise<void> {
    if (view === null || gameId === null || view.phase.kind !== "bids") return;
    const seat = (bidSeat.value || humanSeats(view)[0]) as Seat | undefined;
    if (seat === undefined) return;
    try {
      advice = await client.getAdvice(gameId, seat);
      clearError();
    } catch (exc) {
      const message = exc instanceof ServiceError ? exc.message : String(exc);
      showError(message, onAdvice);
    }
    render();
  }

  async function refresh(): Promise<void> {
    if (gameId === null || busy) return;
    try {
      view = await client.getView(gameId);
      clearError();
    } catch (exc) {
      const message = exc instanceof ServiceError ? exc.message : String(exc);
      showError(message, refresh);
    }
    render();
    if (view !== null && view.phase.kind === "done") stopPolling();
  }

  function startPolling(): void {
    stopPolling();
    if (pollMs > 0) timer = setInterval(() => void refresh(), pollMs);
  }

  function stopPolling(): void {
    if (timer !== null) clearInterval(timer);
    timer = null;
  }

  // --- wiring --------------------------------------------------------------

  setup.addEventListener("submit", (event) => {
    event.preventDefault();
    void onStart();
  });
  bidForm.addEventListener("submit", (event) => {
    event.preventDefault();
    void onCommitBid();
  });
  adviceButton.addEventListener("click", () => void onAdvice());
  retryButton.addEventListener("click", () => {
    const action = retryAction;
    clearError();
    if (action !== null) void action();
  });
  adviceToggle.addEventListener("change", () => render());

  return {
    refresh,
    dispose: stopPolling,
    gameId: () => gameId,
    view: () => view,
  };
}
