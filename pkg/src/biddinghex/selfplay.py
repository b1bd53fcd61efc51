"""Automated players and match running for the discrete bidding game.

Two player styles: one follows the sampling advisor (or the exact
enumeration advisor on small boards), one bids and moves uniformly at
random as a baseline.  Matches between them are fully reproducible — all
randomness is derived from the caller's seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional

from .board import Cell
from .errors import ConfigError
from .game import (
    AwaitingMove,
    BidsResolved,
    Finished,
    GameConfig,
    GameState,
    Player,
    apply_move,
    new_game,
    submit_bid,
)
from .mc import BidAdvice, TrialConfig, advise, enumerate_stats, run_trials
from .rng import derive_seed


class AdvisedPlayer:
    """Bids and moves according to criticality advice.

    With ``exact=True`` the advisor enumerates every filling (only sensible
    on small boards); otherwise it samples ``trials`` fillings with a seed
    derived from ``(seed, rounds played so far)``, so a game replays
    identically given the same inputs.  The advice computed at bid time is
    reused for the move when the bid wins the round.
    """

    def __init__(
        self,
        trials: int = 10_000,
        seed: int = 0,
        workers: int = 1,
        exact: bool = False,
    ):
        self.trials = trials
        self.seed = seed
        self.workers = workers
        self.exact = exact
        self._cached: Optional[tuple] = None  # (position, BidAdvice)

    def _advice(self, state: GameState, me: Player) -> BidAdvice:
        if self._cached is not None and self._cached[0] == state.position:
            return self._cached[1]
        if self.exact:
            stats = enumerate_stats(state.position)
        else:
            rounds = sum(isinstance(e, BidsResolved) for e in state.history)
            cfg = TrialConfig(
                trials=self.trials,
                seed=derive_seed(self.seed, rounds),
                workers=self.workers,
            )
            stats = run_trials(state.position, cfg)
        advice = advise(
            state.position, stats, state.total_chips, state.chips(me)
        )
        self._cached = (state.position, advice)
        return advice

    def bid(self, state: GameState, me: Player) -> int:
        return self._advice(state, me).bid

    def move(self, state: GameState, me: Player) -> Cell:
        return self._advice(state, me).hex


class RandomPlayer:
    """Uniform baseline: bids uniformly in range, moves uniformly at random."""

    def __init__(self, seed: int = 0):
        self._rng = Random(seed)

    def bid(self, state: GameState, me: Player) -> int:
        return self._rng.randint(0, state.chips(me))

    def move(self, state: GameState, me: Player) -> Cell:
        return self._rng.choice(state.position.empty_cells())


@dataclass
class GameRecord:
    """One finished game: final state plus the chip trajectory by round."""

    final: GameState
    winner: Player
    rounds: int
    chips_alice_by_round: list = field(default_factory=list)


def play_game(config: GameConfig, alice, bob) -> GameRecord:
    """Run one game to completion; players expose ``bid`` and ``move``.

    Hex admits no draws, so a game lasts at most size² rounds; exceeding
    that bound means a player broke the rules and raises a config error.
    """
    state = new_game(config)
    players = {Player.ALICE: alice, Player.BOB: bob}
    trajectory = [state.chips_alice]
    rounds = 0
    limit = config.size * config.size
    while not isinstance(state.phase, Finished):
        if rounds > limit:
            raise ConfigError(f"game exceeded {limit} rounds without finishing")
        state = submit_bid(state, Player.ALICE, alice.bid(state, Player.ALICE))
        state = submit_bid(state, Player.BOB, bob.bid(state, Player.BOB))
        assert isinstance(state.phase, AwaitingMove)
        mover = state.phase.mover
        state = apply_move(state, players[mover].move(state, mover))
        trajectory.append(state.chips_alice)
        rounds += 1
    assert isinstance(state.phase, Finished)
    return GameRecord(
        final=state,
        winner=state.phase.winner,
        rounds=rounds,
        chips_alice_by_round=trajectory,
    )


@dataclass(frozen=True)
class MatchResult:
    games: int
    alice_wins: int
    bob_wins: int

    @property
    def alice_rate(self) -> float:
        return self.alice_wins / self.games


def play_match(
    config: GameConfig,
    games: int,
    seed: int = 0,
    make_alice: Optional[Callable[[int], object]] = None,
    make_bob: Optional[Callable[[int], object]] = None,
) -> MatchResult:
    """Play ``games`` independent games, building fresh players per game.

    ``make_alice`` / ``make_bob`` receive a per-game derived seed; by
    default Alice follows the sampling advisor and Bob bids at random.
    """
    if make_alice is None:
        make_alice = lambda s: AdvisedPlayer(seed=s)  # noqa: E731
    if make_bob is None:
        make_bob = lambda s: RandomPlayer(seed=s)  # noqa: E731
    alice_wins = 0
    for i in range(games):
        record = play_game(
            config,
            make_alice(derive_seed(seed, 2 * i)),
            make_bob(derive_seed(seed, 2 * i + 1)),
        )
        if record.winner is Player.ALICE:
            alice_wins += 1
    return MatchResult(games=games, alice_wins=alice_wins, bob_wins=games - alice_wins)
