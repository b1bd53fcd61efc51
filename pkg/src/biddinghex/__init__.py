"""Bidding Hex: boards, exact bidding values, a sampling advisor, and a game service."""

from .board import (
    Cell,
    Color,
    GameStatus,
    MAX_SIDE,
    Position,
    format_position,
    parse_position,
)
from .errors import (
    BiddingHexError,
    BoundsError,
    ConfigError,
    DuplicateBidError,
    GameOverError,
    IllegalBidError,
    IllegalMoveError,
    IncompletePositionError,
    PhaseError,
    PositionParseError,
    SessionNotFoundError,
    SnapshotError,
    StaleStatsError,
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
    GameEnded,
    GameState,
    MovePlaced,
    Player,
    apply_move,
    legal_bid_range,
    new_game,
    replay,
    restore,
    snapshot,
    submit_bid,
)
from .mc import BidAdvice, CriticalityStats, TrialConfig, advise, enumerate_stats, run_trials
from .richman import NodeEval, RichmanSolver, random_turn_value, richman_eval
from .rng import derive_seed

__all__ = [
    "AdvantageMarker",
    "AwaitingBids",
    "AwaitingMove",
    "BidAdvice",
    "BiddingHexError",
    "BidsResolved",
    "BoundsError",
    "Cell",
    "Color",
    "ConfigError",
    "CriticalityStats",
    "DuplicateBidError",
    "Finished",
    "FixedWinner",
    "GameConfig",
    "GameEnded",
    "GameOverError",
    "GameState",
    "GameStatus",
    "IllegalBidError",
    "IllegalMoveError",
    "IncompletePositionError",
    "MAX_SIDE",
    "MovePlaced",
    "NodeEval",
    "PhaseError",
    "Player",
    "Position",
    "PositionParseError",
    "RichmanSolver",
    "SessionNotFoundError",
    "SnapshotError",
    "StaleStatsError",
    "TooLargeError",
    "TrialConfig",
    "advise",
    "apply_move",
    "derive_seed",
    "enumerate_stats",
    "format_position",
    "legal_bid_range",
    "new_game",
    "parse_position",
    "random_turn_value",
    "replay",
    "restore",
    "richman_eval",
    "run_trials",
    "snapshot",
    "submit_bid",
]
