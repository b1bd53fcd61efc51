"""HTTP game service: sessions, human-vs-AI play, advice, snapshots.

The AI seals its bid the moment a bidding round opens (so response latency
never hints at its deliberation), holds its intended move, and acts
immediately whenever the game is waiting on it.  Responses never reveal an
unresolved bid — views carry only per-player "committed" booleans, and
snapshot documents drop pending bids entirely (the AI re-seals on
restore).  Concurrent requests to one session are serialized by a
per-session lock; sessions never block each other.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal, Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .board import Cell, format_position, parse_position
from .errors import (
    BiddingHexError,
    BoundsError,
    ConfigError,
    DuplicateBidError,
    GameOverError,
    IllegalBidError,
    IllegalMoveError,
    PhaseError,
    PositionParseError,
    SessionNotFoundError,
    SnapshotError,
    TooLargeError,
)
from .game import (
    AdvantageMarker,
    AwaitingBids,
    AwaitingMove,
    BidsResolved,
    Finished,
    FixedWinner,
    GameConfig,
    GameState,
    GameEnded,
    MovePlaced,
    Player,
    apply_move,
    new_game,
    restore as restore_game,
    snapshot as snapshot_game,
    submit_bid,
)
from .mc import BidAdvice, TrialConfig, advise, run_trials
from .rng import derive_seed

DEFAULT_TRIAL_BUDGET = 300_000


@dataclass
class Session:
    """One live game plus its AI bookkeeping."""

    id: str
    state: GameState
    ai_player: Optional[Player]
    trial_budget: int
    seed: Optional[int]
    decisions: int = 0
    ai_intent: Optional[Cell] = None
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe id → session map with an optional snapshot directory."""

    def __init__(self, snapshot_dir: Optional[Path] = None):
        self._sessions: dict = {}
        self._lock = threading.Lock()
        self.snapshot_dir = Path(snapshot_dir) if snapshot_dir else None

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise SessionNotFoundError(f"no session {session_id!r}") from None


def _fresh_id() -> str:
    return secrets.token_hex(8)


def _next_seed(session: Session) -> int:
    n = session.decisions
    session.decisions = n + 1
    if session.seed is not None:
        return derive_seed(session.seed, n)
    return secrets.randbits(64)


def _session_advice(session: Session, player: Player) -> BidAdvice:
    state = session.state
    cfg = TrialConfig(trials=session.trial_budget, seed=_next_seed(session))
    stats = run_trials(state.position, cfg)
    return advise(state.position, stats, state.total_chips, state.chips(player))


def _ai_step(session: Session) -> None:
    """Let the AI do everything it owes: seal a bid, place a won move."""
    ai = session.ai_player
    if ai is None:
        return
    while True:
        state = session.state
        phase = state.phase
        if isinstance(phase, AwaitingBids) and phase.bid_of(ai) is None:
            advice = _session_advice(session, ai)
            session.ai_intent = advice.hex
            session.state = submit_bid(state, ai, advice.bid)
        elif isinstance(phase, AwaitingMove) and phase.mover is ai:
            cell = session.ai_intent
            if cell is None or state.position.at(cell) is not None:
                cell = _session_advice(session, ai).hex
            session.ai_intent = None
            session.state = apply_move(state, cell)
        else:
            return


def create_session(
    store: SessionStore,
    config: GameConfig,
    ai_player: Optional[Player] = None,
    trial_budget: Optional[int] = None,
    seed: Optional[int] = None,
) -> Session:
    budget = DEFAULT_TRIAL_BUDGET if trial_budget is None else trial_budget
    if budget < 1:
        raise ConfigError(f"trial budget must be >= 1, got {budget}")
    session = Session(
        id=_fresh_id(),
        state=new_game(config),
        ai_player=ai_player,
        trial_budget=budget,
        seed=seed,
    )
    _ai_step(session)
    store.add(session)
    return session


def view_of(session: Session) -> dict:
    """Public state: everything a player may see, sealed bids redacted."""
    state = session.state
    phase = state.phase
    if isinstance(phase, AwaitingBids):
        phase_view = {
            "kind": "bids",
            "committed": {
                "alice": phase.alice_bid is not None,
                "bob": phase.bob_bid is not None,
            },
        }
        winner = None
    elif isinstance(phase, AwaitingMove):
        phase_view = {"kind": "move", "mover": phase.mover.value}
        winner = None
    else:
        phase_view = {"kind": "done", "winner": phase.winner.value}
        winner = phase.winner.value
    history = []
    for event in state.history:
        if isinstance(event, BidsResolved):
            history.append(
                {
                    "type": "bids",
                    "alice_bid": event.alice_bid,
                    "bob_bid": event.bob_bid,
                    "winner": event.winner.value,
                    "transfer": event.transfer,
                }
            )
        elif isinstance(event, MovePlaced):
            history.append(
                {
                    "type": "move",
                    "player": event.player.value,
                    "cell": [event.cell.row, event.cell.col],
                }
            )
        else:
            history.append({"type": "end", "winner": event.winner.value})
    return {
        "position": format_position(state.position),
        "size": state.position.rows,
        "chips": {"alice": state.chips_alice, "bob": state.chips_bob},
        "total_chips": state.total_chips,
        "phase": phase_view,
        "advantage_holder": state.advantage_holder.value,
        "ai_player": session.ai_player.value if session.ai_player else None,
        "winner": winner,
        "history": history,
    }


def session_snapshot(session: Session) -> str:
    """Snapshot document: game text plus session metadata, sealed bids dropped."""
    state = session.state
    if isinstance(state.phase, AwaitingBids):
        state = replace(state, phase=AwaitingBids())
    doc = snapshot_game(state)
    meta = [
        f"ai-player: {session.ai_player.value if session.ai_player else '-'}",
        f"trial-budget: {session.trial_budget}",
        f"ai-seed: {'-' if session.seed is None else session.seed}",
    ]
    head, _, tail = doc.partition("history:")
    return head + "\n".join(meta) + "\nhistory:" + tail


def restore_session(store: SessionStore, document: str) -> Session:
    state = restore_game(document)
    meta = {}
    for line in document.splitlines():
        key, sep, value = line.partition(":")
        if sep and not line.startswith("  "):
            meta[key.strip()] = value.strip()
    ai_raw = meta.get("ai-player", "-")
    if ai_raw not in ("-", "alice", "bob"):
        raise SnapshotError(f"bad ai-player {ai_raw!r}")
    budget_raw = meta.get("trial-budget", str(DEFAULT_TRIAL_BUDGET))
    try:
        budget = int(budget_raw)
    except ValueError:
        raise SnapshotError(f"bad trial-budget {budget_raw!r}") from None
    if budget < 1:
        raise SnapshotError(f"bad trial-budget {budget!r}")
    seed_raw = meta.get("ai-seed", "-")
    try:
        seed = None if seed_raw == "-" else int(seed_raw)
    except ValueError:
        raise SnapshotError(f"bad ai-seed {seed_raw!r}") from None
    session = Session(
        id=_fresh_id(),
        state=state,
        ai_player=None if ai_raw == "-" else Player(ai_raw),
        trial_budget=budget,
        seed=seed,
    )
    _ai_step(session)
    store.add(session)
    return session


class TiePolicyBody(BaseModel):
    kind: Literal["marker", "fixed"] = "marker"
    player: Literal["alice", "bob"] = "bob"


class ConfigBody(BaseModel):
    size: int = 11
    chips_alice: int = 100
    chips_bob: int = 100
    tie_policy: TiePolicyBody = TiePolicyBody()

    def to_config(self) -> GameConfig:
        player = Player(self.tie_policy.player)
        policy = (
            AdvantageMarker(player)
            if self.tie_policy.kind == "marker"
            else FixedWinner(player)
        )
        return GameConfig(
            size=self.size,
            chips_alice=self.chips_alice,
            chips_bob=self.chips_bob,
            tie_policy=policy,
        )


class CreateBody(BaseModel):
    config: ConfigBody = ConfigBody()
    ai_player: Optional[Literal["alice", "bob"]] = None
    trial_budget: Optional[int] = None
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)


class BidBody(BaseModel):
    player: Literal["alice", "bob"]
    bid: int


class MoveBody(BaseModel):
    player: Literal["alice", "bob"]
    cell: Tuple[int, int]


class RestoreBody(BaseModel):
    document: str


_ERROR_STATUS = {
    SessionNotFoundError: (404, "not-found"),
    PhaseError: (409, "phase-error"),
    GameOverError: (409, "game-over"),
    DuplicateBidError: (409, "duplicate-bid"),
    IllegalBidError: (409, "illegal-bid"),
    IllegalMoveError: (409, "illegal-move"),
    PositionParseError: (400, "parse-error"),
    SnapshotError: (400, "bad-snapshot"),
    BoundsError: (400, "bounds-error"),
    TooLargeError: (400, "too-large"),
    ConfigError: (400, "config-error"),
}


def _error_response(exc: Exception) -> JSONResponse:
    # str(KeyError) quotes its argument; prefer the bare message.
    message = exc.args[0] if exc.args else str(exc)
    for klass, (status_code, code) in _ERROR_STATUS.items():
        if isinstance(exc, klass):
            return JSONResponse(
                status_code=status_code,
                content={"code": code, "message": message},
            )
    return JSONResponse(
        status_code=500, content={"code": "internal", "message": message}
    )


def create_app(
    snapshot_dir: Optional[Path] = None,
    default_trial_budget: int = DEFAULT_TRIAL_BUDGET,
) -> FastAPI:
    app = FastAPI(title="biddinghex", docs_url=None, redoc_url=None)
    # the browser client is served separately during local play
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore(snapshot_dir=snapshot_dir)
    app.state.store = store
    app.state.default_trial_budget = default_trial_budget

    @app.exception_handler(BiddingHexError)
    async def on_domain_error(request: Request, exc: BiddingHexError):
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "bad-request", "message": str(exc)}
        )

    @app.post("/games", status_code=201)
    def post_games(body: CreateBody):
        budget = (
            app.state.default_trial_budget
            if body.trial_budget is None
            else body.trial_budget
        )
        session = create_session(
            store,
            body.config.to_config(),
            ai_player=Player(body.ai_player) if body.ai_player else None,
            trial_budget=budget,
            seed=body.seed,
        )
        with session.lock:
            return {"id": session.id, "view": view_of(session)}

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return view_of(session)

    @app.post("/games/{session_id}/bids")
    def post_bid(session_id: str, body: BidBody):
        session = store.get(session_id)
        player = Player(body.player)
        with session.lock:
            if player is session.ai_player:
                raise ConfigError(f"{player.value} is controlled by the AI")
            session.state = submit_bid(session.state, player, body.bid)
            _ai_step(session)
            session.updated = time.time()
            return view_of(session)

    @app.post("/games/{session_id}/moves")
    def post_move(session_id: str, body: MoveBody):
        session = store.get(session_id)
        player = Player(body.player)
        with session.lock:
            if player is session.ai_player:
                raise ConfigError(f"{player.value} is controlled by the AI")
            phase = session.state.phase
            if not isinstance(phase, AwaitingMove):
                raise PhaseError(f"no move pending in phase {type(phase).__name__}")
            if phase.mover is not player:
                raise PhaseError(f"it is {phase.mover.value}'s move, not {player.value}'s")
            session.state = apply_move(session.state, Cell(*body.cell))
            _ai_step(session)
            session.updated = time.time()
            return view_of(session)

    @app.get("/games/{session_id}/advice")
    def get_advice(session_id: str, player: Literal["alice", "bob"]):
        session = store.get(session_id)
        who = Player(player)
        with session.lock:
            if who is session.ai_player:
                raise ConfigError(f"{who.value} is controlled by the AI")
            phase = session.state.phase
            if isinstance(phase, Finished):
                raise GameOverError(f"game is over; {phase.winner.value} won")
            if not isinstance(phase, AwaitingBids):
                raise PhaseError(f"advice applies to bidding, not {type(phase).__name__}")
            advice = _session_advice(session, who)
            return {
                "hex": [advice.hex.row, advice.hex.col],
                "bid": advice.bid,
                "l_hat": float(advice.l_hat),
                "criticality": float(advice.criticality),
                "trials": session.trial_budget,
            }

    @app.get("/games/{session_id}/snapshot")
    def get_snapshot(session_id: str):
        session = store.get(session_id)
        with session.lock:
            document = session_snapshot(session)
        if store.snapshot_dir is not None:
            store.snapshot_dir.mkdir(parents=True, exist_ok=True)
            (store.snapshot_dir / f"{session.id}.game").write_text(document)
        return {"id": session.id, "document": document}

    @app.post("/games/restore", status_code=201)
    def post_restore(body: RestoreBody):
        session = restore_session(store, body.document)
        with session.lock:
            return {"id": session.id, "view": view_of(session)}

    return app
