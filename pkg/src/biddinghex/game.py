"""Discrete bidding game: sealed bids, chip transfers, moves, termination.

Each round both players submit a sealed integer bid; when the second bid
lands the round resolves atomically: the higher bidder pays their own bid
to the opponent and earns the move.  Tied bids are settled by the
configured policy — either a transferable advantage marker (the holder
wins the tie, pays, and hands the marker over) or a fixed winner.  The
total number of chips in play never changes.

States are immutable values; every operation returns a new
:class:`GameState`.  Serialization to a human-readable key-value text
document round-trips losslessly, and restoring replays the recorded
events to verify the document is internally consistent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple, Union

from .board import MAX_SIDE, Cell, Color, GameStatus, Position, format_position, parse_position, status
from .errors import (
    ConfigError,
    DuplicateBidError,
    IllegalBidError,
    PhaseError,
    SnapshotError,
)


class Player(Enum):
    """The two bidders: Alice plays Amber, Bob plays Blue."""

    ALICE = "alice"
    BOB = "bob"

    @property
    def color(self) -> Color:
        return Color.AMBER if self is Player.ALICE else Color.BLUE

    @property
    def opponent(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


def _player_for(color: Color) -> Player:
    return Player.ALICE if color is Color.AMBER else Player.BOB


@dataclass(frozen=True)
class AdvantageMarker:
    """Tie policy: the marker's holder wins tied bids, paying and passing it on."""

    initial_holder: Player = Player.BOB


@dataclass(frozen=True)
class FixedWinner:
    """Tie policy: ``player`` wins every tied bid (and pays the tied amount)."""

    player: Player


TiePolicy = Union[AdvantageMarker, FixedWinner]


@dataclass(frozen=True)
class GameConfig:
    size: int = 11
    chips_alice: int = 100
    chips_bob: int = 100
    tie_policy: TiePolicy = AdvantageMarker(Player.BOB)

    def __post_init__(self):
        if not 1 <= self.size <= MAX_SIDE:
            raise ConfigError(f"size must be in [1, {MAX_SIDE}], got {self.size}")
        if self.chips_alice < 0 or self.chips_bob < 0:
            raise ConfigError("chip counts must be non-negative")
        if self.chips_alice + self.chips_bob < 2:
            raise ConfigError(
                f"total chips must be at least 2, got "
                f"{self.chips_alice + self.chips_bob}"
            )
        if not isinstance(self.tie_policy, (AdvantageMarker, FixedWinner)):
            raise ConfigError(f"unknown tie policy: {self.tie_policy!r}")


@dataclass(frozen=True)
class AwaitingBids:
    """Collecting sealed bids; at most one can be pending at a time."""

    alice_bid: Optional[int] = None
    bob_bid: Optional[int] = None

    def bid_of(self, player: Player) -> Optional[int]:
        return self.alice_bid if player is Player.ALICE else self.bob_bid

    @property
    def pending(self) -> dict:
        return {Player.ALICE: self.alice_bid, Player.BOB: self.bob_bid}


@dataclass(frozen=True)
class AwaitingMove:
    mover: Player


@dataclass(frozen=True)
class Finished:
    winner: Player


Phase = Union[AwaitingBids, AwaitingMove, Finished]


@dataclass(frozen=True)
class BidsResolved:
    """Both bids landed: ``winner`` paid ``transfer`` (their own bid) to the loser."""

    alice_bid: int
    bob_bid: int
    winner: Player
    transfer: int


@dataclass(frozen=True)
class MovePlaced:
    player: Player
    cell: Cell


@dataclass(frozen=True)
class GameEnded:
    winner: Player


Event = Union[BidsResolved, MovePlaced, GameEnded]


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    position: Position
    chips_alice: int
    chips_bob: int
    phase: Phase
    advantage_holder: Player
    history: Tuple[Event, ...] = ()

    def chips(self, player: Player) -> int:
        return self.chips_alice if player is Player.ALICE else self.chips_bob

    @property
    def chips_map(self) -> dict:
        return {Player.ALICE: self.chips_alice, Player.BOB: self.chips_bob}

    @property
    def total_chips(self) -> int:
        return self.chips_alice + self.chips_bob


def new_game(config: GameConfig = GameConfig()) -> GameState:
    if isinstance(config.tie_policy, AdvantageMarker):
        holder = config.tie_policy.initial_holder
    else:
        holder = config.tie_policy.player
    return GameState(
        config=config,
        position=Position.empty(config.size),
        chips_alice=config.chips_alice,
        chips_bob=config.chips_bob,
        phase=AwaitingBids(),
        advantage_holder=holder,
    )


def legal_bid_range(state: GameState, player: Player) -> Tuple[int, int]:
    """Inclusive bid bounds for ``player`` this round: (0, their chips)."""
    if not isinstance(state.phase, AwaitingBids):
        raise PhaseError(f"no bidding in phase {type(state.phase).__name__}")
    return (0, state.chips(player))


def submit_bid(state: GameState, player: Player, bid: int) -> GameState:
    """Record a sealed bid; resolves the round when the second bid lands.

    The higher bidder wins the move and pays their own bid to the opponent.
    On a tie, the advantage marker's holder (or the fixed winner) wins and
    pays the tied amount; a marker additionally transfers to the opponent.
    """
    if not isinstance(state.phase, AwaitingBids):
        raise PhaseError(f"no bidding in phase {type(state.phase).__name__}")
    if state.phase.bid_of(player) is not None:
        raise DuplicateBidError(f"{player.value} already bid this round")
    lo, hi = 0, state.chips(player)
    if not isinstance(bid, int) or isinstance(bid, bool) or not lo <= bid <= hi:
        raise IllegalBidError(f"bid {bid!r} outside [{lo}, {hi}] for {player.value}")

    if player is Player.ALICE:
        phase = replace(state.phase, alice_bid=bid)
    else:
        phase = replace(state.phase, bob_bid=bid)
    if phase.alice_bid is None or phase.bob_bid is None:
        return replace(state, phase=phase)

    a, b = phase.alice_bid, phase.bob_bid
    holder = state.advantage_holder
    if a > b:
        winner = Player.ALICE
    elif b > a:
        winner = Player.BOB
    elif isinstance(state.config.tie_policy, FixedWinner):
        winner = state.config.tie_policy.player
    else:
        winner = holder
        holder = holder.opponent
    transfer = a if winner is Player.ALICE else b
    event = BidsResolved(alice_bid=a, bob_bid=b, winner=winner, transfer=transfer)
    return replace(
        state,
        chips_alice=state.chips_alice + (-transfer if winner is Player.ALICE else transfer),
        chips_bob=state.chips_bob + (-transfer if winner is Player.BOB else transfer),
        phase=AwaitingMove(mover=winner),
        advantage_holder=holder,
        history=state.history + (event,),
    )


def apply_move(state: GameState, cell: Cell) -> GameState:
    """Place the move winner's stone; finish the game or open the next round."""
    if not isinstance(state.phase, AwaitingMove):
        raise PhaseError(f"no move pending in phase {type(state.phase).__name__}")
    mover = state.phase.mover
    position = state.position.place(cell, mover.color)
    history = state.history + (MovePlaced(player=mover, cell=cell),)
    st = status(position)
    if st is GameStatus.ONGOING:
        phase: Phase = AwaitingBids()
    else:
        winner = _player_for(st.winner)
        history = history + (GameEnded(winner=winner),)
        phase = Finished(winner=winner)
    return replace(state, position=position, phase=phase, history=history)


def replay(config: GameConfig, events: Tuple[Event, ...]) -> GameState:
    """Fold recorded events over a fresh game, verifying each one.

    ``GameEnded`` events are emitted by :func:`apply_move` itself, so they
    are checked rather than applied.  Any divergence between the recorded
    events and the recomputed ones raises a snapshot error.
    """
    state = new_game(config)
    for event in events:
        if isinstance(event, BidsResolved):
            state = submit_bid(state, Player.ALICE, event.alice_bid)
            state = submit_bid(state, Player.BOB, event.bob_bid)
        elif isinstance(event, MovePlaced):
            if not isinstance(state.phase, AwaitingMove) or state.phase.mover is not event.player:
                raise SnapshotError(f"recorded move by {event.player.value} out of turn")
            state = apply_move(state, event.cell)
        elif isinstance(event, GameEnded):
            pass
        else:
            raise SnapshotError(f"unknown event {event!r}")
    if state.history != tuple(events):
        raise SnapshotError("replayed history does not match the recorded events")
    return state


_PLAYER_NAMES = {p.value: p for p in Player}


def _parse_player(token: str, line: int) -> Player:
    try:
        return _PLAYER_NAMES[token]
    except KeyError:
        raise SnapshotError(f"line {line}: unknown player {token!r}") from None


def snapshot(state: GameState) -> str:
    """Serialize a game to a key-value text document (lossless)."""
    cfg = state.config
    if isinstance(cfg.tie_policy, AdvantageMarker):
        policy = f"marker {cfg.tie_policy.initial_holder.value}"
    else:
        policy = f"fixed {cfg.tie_policy.player.value}"
    lines = [
        "biddinghex-game v1",
        f"size: {cfg.size}",
        f"starting-chips: {cfg.chips_alice} {cfg.chips_bob}",
        f"tie-policy: {policy}",
        f"chips: {state.chips_alice} {state.chips_bob}",
        f"advantage-holder: {state.advantage_holder.value}",
        f"position: {format_position(state.position)}",
    ]
    phase = state.phase
    if isinstance(phase, AwaitingBids):
        a = "-" if phase.alice_bid is None else str(phase.alice_bid)
        b = "-" if phase.bob_bid is None else str(phase.bob_bid)
        lines.append(f"phase: bids {a} {b}")
    elif isinstance(phase, AwaitingMove):
        lines.append(f"phase: move {phase.mover.value}")
    else:
        lines.append(f"phase: done {phase.winner.value}")
    lines.append("history:")
    for event in state.history:
        if isinstance(event, BidsResolved):
            lines.append(
                f"  bids {event.alice_bid} {event.bob_bid} "
                f"{event.winner.value} {event.transfer}"
            )
        elif isinstance(event, MovePlaced):
            lines.append(f"  move {event.player.value} {event.cell.row} {event.cell.col}")
        else:
            lines.append(f"  end {event.winner.value}")
    return "\n".join(lines) + "\n"


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SnapshotError(f"line {line}: bad {what} {token!r}") from None


def restore(text: str) -> GameState:
    """Parse a snapshot document and rebuild the game it describes.

    The event history is replayed move by move, then the redundant fields
    (chips, position, phase, advantage holder) are checked against the
    replayed state, so a tampered or truncated document is rejected rather
    than trusted.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != "biddinghex-game v1":
        raise SnapshotError("line 1: expected header 'biddinghex-game v1'")

    fields = {}
    events: list = []
    history_at = None
    for i, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        if history_at is not None:
            if not raw.startswith("  "):
                raise SnapshotError(f"line {i}: history lines must be indented")
            parts = raw.split()
            kind = parts[0]
            if kind == "bids" and len(parts) == 5:
                events.append(
                    BidsResolved(
                        alice_bid=_parse_int(parts[1], i, "bid"),
                        bob_bid=_parse_int(parts[2], i, "bid"),
                        winner=_parse_player(parts[3], i),
                        transfer=_parse_int(parts[4], i, "transfer"),
                    )
                )
            elif kind == "move" and len(parts) == 4:
                events.append(
                    MovePlaced(
                        player=_parse_player(parts[1], i),
                        cell=Cell(_parse_int(parts[2], i, "row"), _parse_int(parts[3], i, "col")),
                    )
                )
            elif kind == "end" and len(parts) == 2:
                events.append(GameEnded(winner=_parse_player(parts[1], i)))
            else:
                raise SnapshotError(f"line {i}: unrecognized history entry {raw.strip()!r}")
            continue
        if raw.strip() == "history:":
            history_at = i
            continue
        key, sep, value = raw.partition(":")
        if not sep:
            raise SnapshotError(f"line {i}: expected 'key: value', got {raw.strip()!r}")
        fields[key.strip()] = (value.strip(), i)

    def need(key: str) -> Tuple[str, int]:
        if key not in fields:
            raise SnapshotError(f"missing field {key!r}")
        return fields[key]

    size_s, size_ln = need("size")
    start_s, start_ln = need("starting-chips")
    policy_s, policy_ln = need("tie-policy")
    start_parts = start_s.split()
    if len(start_parts) != 2:
        raise SnapshotError(f"line {start_ln}: expected two starting chip counts")
    policy_parts = policy_s.split()
    if len(policy_parts) != 2 or policy_parts[0] not in ("marker", "fixed"):
        raise SnapshotError(f"line {policy_ln}: bad tie policy {policy_s!r}")
    policy_player = _parse_player(policy_parts[1], policy_ln)
    tie_policy: TiePolicy
    if policy_parts[0] == "marker":
        tie_policy = AdvantageMarker(policy_player)
    else:
        tie_policy = FixedWinner(policy_player)
    try:
        config = GameConfig(
            size=_parse_int(size_s, size_ln, "size"),
            chips_alice=_parse_int(start_parts[0], start_ln, "chip count"),
            chips_bob=_parse_int(start_parts[1], start_ln, "chip count"),
            tie_policy=tie_policy,
        )
    except ConfigError as exc:
        raise SnapshotError(f"invalid game config: {exc}") from exc

    if history_at is None:
        raise SnapshotError("missing history section")
    try:
        state = replay(config, tuple(events))
    except SnapshotError:
        raise
    except Exception as exc:
        raise SnapshotError(f"history does not replay: {exc}") from exc

    phase_s, phase_ln = need("phase")
    phase_parts = phase_s.split()
    if phase_parts[0] == "bids" and len(phase_parts) == 3:
        for token, player in zip(phase_parts[1:], (Player.ALICE, Player.BOB)):
            if token != "-":
                try:
                    state = submit_bid(state, player, _parse_int(token, phase_ln, "pending bid"))
                except SnapshotError:
                    raise
                except Exception as exc:
                    raise SnapshotError(f"line {phase_ln}: bad pending bid: {exc}") from exc
    elif phase_parts[0] not in ("move", "done") or len(phase_parts) != 2:
        raise SnapshotError(f"line {phase_ln}: bad phase {phase_s!r}")

    chips_s, chips_ln = need("chips")
    chip_parts = chips_s.split()
    if len(chip_parts) != 2:
        raise SnapshotError(f"line {chips_ln}: expected two chip counts")
    expected = (
        _parse_int(chip_parts[0], chips_ln, "chip count"),
        _parse_int(chip_parts[1], chips_ln, "chip count"),
    )
    if (state.chips_alice, state.chips_bob) != expected:
        raise SnapshotError(
            f"line {chips_ln}: chips {expected} do not match the replayed history "
            f"({state.chips_alice}, {state.chips_bob})"
        )

    pos_s, pos_ln = need("position")
    try:
        recorded_pos = parse_position(pos_s)
    except Exception as exc:
        raise SnapshotError(f"line {pos_ln}: bad position: {exc}") from exc
    if recorded_pos != state.position:
        raise SnapshotError(f"line {pos_ln}: position does not match the replayed history")

    holder_s, holder_ln = need("advantage-holder")
    if _parse_player(holder_s, holder_ln) is not state.advantage_holder:
        raise SnapshotError(
            f"line {holder_ln}: advantage holder does not match the replayed history"
        )

    if isinstance(state.phase, AwaitingBids):
        described = ("bids", "-" if state.phase.alice_bid is None else str(state.phase.alice_bid),
                     "-" if state.phase.bob_bid is None else str(state.phase.bob_bid))
    elif isinstance(state.phase, AwaitingMove):
        described = ("move", state.phase.mover.value)
    else:
        described = ("done", state.phase.winner.value)
    if tuple(phase_parts) != described:
        raise SnapshotError(f"line {phase_ln}: phase does not match the replayed history")
    return state
