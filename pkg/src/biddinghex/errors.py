"""Exception types shared across the package."""


class BiddingHexError(Exception):
    """Base class for all errors raised by this package."""


class BoundsError(BiddingHexError, ValueError):
    """A cell lies outside the board."""


class IncompletePositionError(BiddingHexError, ValueError):
    """An operation that requires a completely filled board got empty cells."""


class PositionParseError(BiddingHexError, ValueError):
    """Malformed position text.

    Attributes:
        line: 1-based line of the offending character (position strings are
            single-line, so this is always 1).
        column: 1-based character offset of the offending character.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class TooLargeError(BiddingHexError, ValueError):
    """The position exceeds a configured size cap; the message names the cap."""


class GameOverError(BiddingHexError):
    """The position is already decided."""


class StaleStatsError(BiddingHexError, ValueError):
    """Criticality statistics do not belong to the given position."""


class ConfigError(BiddingHexError, ValueError):
    """Invalid game or session configuration."""


class PhaseError(BiddingHexError):
    """Operation not valid in the game's current phase."""


class IllegalBidError(BiddingHexError, ValueError):
    """Bid outside the legal range."""


class DuplicateBidError(BiddingHexError):
    """A player tried to bid twice in the same round."""


class IllegalMoveError(BiddingHexError, ValueError):
    """Move targets an occupied or out-of-bounds cell."""


class SnapshotError(BiddingHexError, ValueError):
    """A snapshot document failed to parse; the message names the first bad field."""


class SessionNotFoundError(BiddingHexError, KeyError):
    """No session with the given id."""
