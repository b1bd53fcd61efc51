// Thin typed wrapper over the service HTTP API. Every game decision comes
// from the server; the client only ships inputs and renders responses.

import type { Advice, CreateGameBody, GameView, Seat } from "./types.js";

export class ServiceError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.name = "ServiceError";
    this.code = code;
    this.status = status;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base: string, fetchFn?: FetchLike) {
    this.base = base.replace(/\/+$/, "");
    // bind so a bare window.fetch keeps its receiver
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const resp = await this.fetchFn(this.base + path, init);
    const text = await resp.text();
    let parsed: unknown;
    try {
      parsed = text.length > 0 ? JSON.parse(text) : null;
    } catch {
      throw new ServiceError("bad-response", `unparseable response (${resp.status})`, resp.status);
    }
    if (!resp.ok) {
      const envelope = parsed as { code?: string; message?: string } | null;
      throw new ServiceError(
        envelope?.code ?? "http-error",
        envelope?.message ?? `request failed (${resp.status})`,
        resp.status,
      );
    }
    return parsed as T;
  }

  createGame(body: CreateGameBody): Promise<{ id: string; view: GameView }> {
    return this.request("POST", "/games", body);
  }

  getView(id: string): Promise<GameView> {
    return this.request("GET", `/games/${id}`);
  }

  submitBid(id: string, player: Seat, bid: number): Promise<GameView> {
    return this.request("POST", `/games/${id}/bids`, { player, bid });
  }

  submitMove(id: string, player: Seat, cell: [number, number]): Promise<GameView> {
    return this.request("POST", `/games/${id}/moves`, { player, cell });
  }

  getAdvice(id: string, player: Seat): Promise<Advice> {
    return this.request("GET", `/games/${id}/advice?player=${player}`);
  }

  getSnapshot(id: string): Promise<{ id: string; document: string }> {
    return this.request("GET", `/games/${id}/snapshot`);
  }

  restoreGame(document: string): Promise<{ id: string; view: GameView }> {
    return this.request("POST", "/games/restore", { document });
  }
}
