"""Hex board geometry, position encoding, and winner determination.

The board is a rhombus of hexagonal cells addressed by (row, col) with the
six-neighbor adjacency listed in ``NEIGHBOR_OFFSETS``.  Amber owns the top
and bottom sides (row 0 and row ``rows - 1``) and wins by connecting them;
Blue owns the left and right sides (col 0 and col ``cols - 1``).  Standard
play is on a square board, but all operations accept rectangular boards.

Two independent winner algorithms are provided for complete boards:

* ``winner_trace`` walks the boundary between the amber and blue areas of
  the board, starting at the west corner, and reads the winner off the
  corner where the walk terminates.
* ``winner_connectivity`` searches for a winning amber chain directly.

They must agree on every complete board; the test suite enforces this.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from .errors import (
    BoundsError,
    IllegalMoveError,
    IncompletePositionError,
    PositionParseError,
)

MAX_SIDE = 19

# Fixed neighbor order; all adjacency-dependent results are deterministic
# because every iteration uses this order.
NEIGHBOR_OFFSETS = ((-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0))

# The same offsets in rotational order around a cell.  Consecutive entries
# are themselves adjacent, which is what the boundary walk relies on.
_CYCLE = ((0, 1), (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1))
_CYCLE_INDEX = {d: i for i, d in enumerate(_CYCLE)}


class Color(Enum):
    """Stone color. Amber belongs to Alice, Blue to Bob."""

    AMBER = "A"
    BLUE = "B"

    @property
    def opposite(self) -> "Color":
        return Color.BLUE if self is Color.AMBER else Color.AMBER


class GameStatus(Enum):
    ONGOING = "ongoing"
    AMBER_WON = "amber_won"
    BLUE_WON = "blue_won"

    @property
    def winner(self) -> Optional[Color]:
        if self is GameStatus.AMBER_WON:
            return Color.AMBER
        if self is GameStatus.BLUE_WON:
            return Color.BLUE
        return None


class Cell(NamedTuple):
    """Board coordinate. Tuple ordering gives the lexicographic (row, col)
    order used for deterministic tie-breaking."""

    row: int
    col: int


@dataclass(frozen=True)
class Position:
    """An immutable board state: dimensions plus row-major cell contents.

    ``cells[r * cols + c]`` is ``None`` when empty, else the stone color.
    """

    rows: int
    cols: int
    cells: tuple

    def __post_init__(self):
        if not (1 <= self.rows <= MAX_SIDE and 1 <= self.cols <= MAX_SIDE):
            raise BoundsError(
                f"board dimensions must be within [1, {MAX_SIDE}], "
                f"got {self.rows}x{self.cols}"
            )
        if len(self.cells) != self.rows * self.cols:
            raise BoundsError(
                f"expected {self.rows * self.cols} cells, got {len(self.cells)}"
            )

    @staticmethod
    def empty(rows: int, cols: Optional[int] = None) -> "Position":
        cols = rows if cols is None else cols
        return Position(rows, cols, (None,) * (rows * cols))

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell.row < self.rows and 0 <= cell.col < self.cols

    def at(self, cell: Cell) -> Optional[Color]:
        if not self.in_bounds(cell):
            raise BoundsError(f"cell {tuple(cell)} outside {self.rows}x{self.cols} board")
        return self.cells[cell.row * self.cols + cell.col]

    def place(self, cell: Cell, color: Color) -> "Position":
        """Return a new position with ``color`` placed on the empty ``cell``."""
        if self.at(cell) is not None:
            raise IllegalMoveError(f"cell {tuple(cell)} is occupied")
        i = cell.row * self.cols + cell.col
        return Position(self.rows, self.cols, self.cells[:i] + (color,) + self.cells[i + 1 :])

    def filled(self, color: Color) -> "Position":
        """Return a copy with every empty cell set to ``color``."""
        return Position(
            self.rows, self.cols, tuple(color if c is None else c for c in self.cells)
        )

    def empty_cells(self) -> list:
        """Empty cells in row-major order."""
        return [
            Cell(i // self.cols, i % self.cols)
            for i, c in enumerate(self.cells)
            if c is None
        ]

    @property
    def empty_count(self) -> int:
        return sum(1 for c in self.cells if c is None)

    @property
    def is_complete(self) -> bool:
        return all(c is not None for c in self.cells)


# A Filling is a Position with no empty cells; operations that require one
# raise IncompletePositionError otherwise.
Filling = Position


def neighbors(cell: Cell, rows: int, cols: Optional[int] = None) -> list:
    """In-bounds neighbors of ``cell``, in the fixed ``NEIGHBOR_OFFSETS`` order."""
    cols = rows if cols is None else cols
    if not (0 <= cell.row < rows and 0 <= cell.col < cols):
        raise BoundsError(f"cell {tuple(cell)} outside {rows}x{cols} board")
    result = []
    for dr, dc in NEIGHBOR_OFFSETS:
        r, c = cell.row + dr, cell.col + dc
        if 0 <= r < rows and 0 <= c < cols:
            result.append(Cell(r, c))
    return result


@lru_cache(maxsize=None)
def _neighbor_table(rows: int, cols: int) -> tuple:
    """Flat-index adjacency lists for a rows x cols board."""
    table = []
    for r in range(rows):
        for c in range(cols):
            adj = []
            for dr, dc in NEIGHBOR_OFFSETS:
                nr, nc = r + dr, c + dc
                if 0 <= nr < rows and 0 <= nc < cols:
                    adj.append(nr * cols + nc)
            table.append(tuple(adj))
    return tuple(table)


def _chain_exists(rows: int, cols: int, cells: tuple, color: Color) -> bool:
    """Whether ``color``'s stones connect that color's two sides.

    Amber must connect row 0 to row ``rows - 1``; Blue must connect col 0 to
    col ``cols - 1``.  Depth-first search over same-colored stones.
    """
    table = _neighbor_table(rows, cols)
    if color is Color.AMBER:
        starts = [i for i in range(cols) if cells[i] is color]
        goal_low = (rows - 1) * cols
        in_goal = lambda i: i >= goal_low
    else:
        starts = [r * cols for r in range(rows) if cells[r * cols] is color]
        in_goal = lambda i: i % cols == cols - 1
    seen = [False] * (rows * cols)
    stack = []
    for i in starts:
        seen[i] = True
        stack.append(i)
    while stack:
        i = stack.pop()
        if in_goal(i):
            return True
        for j in table[i]:
            if not seen[j] and cells[j] is color:
                seen[j] = True
                stack.append(j)
    return False


def _require_complete(filling: Position) -> None:
    if not filling.is_complete:
        raise IncompletePositionError(
            f"winner determination needs a complete board; "
            f"{filling.empty_count} cells are still empty"
        )


def winner_connectivity(filling: Filling) -> Color:
    """Winner of a complete board by direct chain search.

    Amber wins iff an amber chain connects the top row to the bottom row;
    otherwise Blue wins (a complete Hex board always has exactly one winner).
    """
    _require_complete(filling)
    if _chain_exists(filling.rows, filling.cols, filling.cells, Color.AMBER):
        return Color.AMBER
    return Color.BLUE


def _border_color(rows: int, cols: int, r: int, c: int) -> Color:
    # Border pseudo-cells: amber strips above and below the board, blue
    # strips to its left and right.  Corner sentinels are handled by the
    # caller before this lookup.
    if (r == -1 or r == rows) and 0 <= c < cols:
        return Color.AMBER
    if (c == -1 or c == cols) and 0 <= r < rows:
        return Color.BLUE
    raise AssertionError(f"boundary walk left the extended board at ({r}, {c})")


def winner_trace(filling: Filling) -> Color:
    """Winner of a complete board by the boundary walk.

    Surround the board with amber strips along the top and bottom sides and
    blue strips along the left and right sides.  The walk follows the line
    separating amber from blue, starting at the west corner (where the
    top-left amber strip meets the left blue strip) and keeping amber on its
    left.  The separating line must end at the north corner or the south
    corner of the rhombus:  north means the blue cells on the walk's right
    form a winning chain, south means the amber cells on its left do.

    The walk state is the pair of faces the current edge separates, written
    as (amber face, blue face), plus the face behind the edge.  Faces are
    board cells or border pseudo-cells.  Each step looks at the face ahead:
    an amber face advances the amber side of the pair, a blue face advances
    the blue side, the north or the south corner sentinel ends the walk.
    """
    _require_complete(filling)
    rows, cols, cells = filling.rows, filling.cols, filling.cells
    north = (-1, cols)
    south = (rows, -1)

    amber_face = (-1, 0)
    blue_face = (0, -1)
    behind = (-1, -1)

    # The walk visits each directed boundary edge at most once.
    for _ in range(6 * (rows + 2) * (cols + 2)):
        # The two faces touching both sides of the current edge are the
        # cyclic neighbors of the pair's offset; one of them is `behind`.
        dr = blue_face[0] - amber_face[0]
        dc = blue_face[1] - amber_face[1]
        k = _CYCLE_INDEX[(dr, dc)]
        first = (amber_face[0] + _CYCLE[k - 1][0], amber_face[1] + _CYCLE[k - 1][1])
        second = (
            amber_face[0] + _CYCLE[(k + 1) % 6][0],
            amber_face[1] + _CYCLE[(k + 1) % 6][1],
        )
        ahead = second if first == behind else first

        if ahead == north:
            return Color.BLUE
        if ahead == south:
            return Color.AMBER

        r, c = ahead
        if 0 <= r < rows and 0 <= c < cols:
            color = cells[r * cols + c]
        else:
            color = _border_color(rows, cols, r, c)
        if color is Color.AMBER:
            amber_face, blue_face, behind = ahead, blue_face, amber_face
        else:
            amber_face, blue_face, behind = amber_face, ahead, blue_face
    raise AssertionError("boundary walk failed to terminate")


def status(position: Position) -> GameStatus:
    """Game status of a (possibly partial) board.

    Equivalent to filling every empty cell amber and checking whether Blue
    wins (Blue's chain can only use placed stones then), and if not filling
    every empty cell blue and checking whether Amber wins.  Blue is checked
    first; with legal play both can never hold chains simultaneously.
    """
    if _chain_exists(position.rows, position.cols, position.cells, Color.BLUE):
        return GameStatus.BLUE_WON
    if _chain_exists(position.rows, position.cols, position.cells, Color.AMBER):
        return GameStatus.AMBER_WON
    return GameStatus.ONGOING


_CHARS = {".": None, "A": Color.AMBER, "B": Color.BLUE}
_CHARS_BACK = {None: ".", Color.AMBER: "A", Color.BLUE: "B"}


def parse_position(text: str) -> Position:
    """Parse ``"<N>:<row0>/.../<rowN-1>"`` (or ``"<R>x<C>:..."``) into a Position.

    Each row is exactly ``cols`` characters from ``.`` (empty), ``A`` (amber),
    ``B`` (blue).  ASCII only, no whitespace.  Errors carry the 1-based
    line/column of the first offending character.
    """
    head, sep, body = text.partition(":")
    if not sep:
        raise PositionParseError("missing ':' after the size header", column=len(text) + 1)
    if "x" in head:
        rs, _, cs = head.partition("x")
    else:
        rs = cs = head
    if not (rs.isdigit() and cs.isdigit()):
        raise PositionParseError(f"malformed size header {head!r}", column=1)
    rows, cols = int(rs), int(cs)
    if not (1 <= rows <= MAX_SIDE and 1 <= cols <= MAX_SIDE):
        raise PositionParseError(
            f"board dimensions must be within [1, {MAX_SIDE}], got {rows}x{cols}",
            column=1,
        )
    row_texts = body.split("/")
    if len(row_texts) != rows:
        raise PositionParseError(
            f"expected {rows} rows, got {len(row_texts)}", column=len(head) + 2
        )
    cells = []
    offset = len(head) + 2  # 1-based column of the first body character
    for r, row_text in enumerate(row_texts):
        if len(row_text) != cols:
            raise PositionParseError(
                f"row {r} has {len(row_text)} cells, expected {cols}", column=offset
            )
        for j, ch in enumerate(row_text):
            if ch not in _CHARS:
                raise PositionParseError(
                    f"invalid cell character {ch!r}", column=offset + j
                )
            cells.append(_CHARS[ch])
        offset += len(row_text) + 1
    return Position(rows, cols, tuple(cells))


def format_position(position: Position) -> str:
    """Inverse of :func:`parse_position`; square boards use the ``N:`` header."""
    rows = [
        "".join(
            _CHARS_BACK[position.cells[r * position.cols + c]]
            for c in range(position.cols)
        )
        for r in range(position.rows)
    ]
    if position.rows == position.cols:
        head = str(position.rows)
    else:
        head = f"{position.rows}x{position.cols}"
    return head + ":" + "/".join(rows)


def dual(position: Position) -> Position:
    """Transpose the board and swap colors.

    Exchanges the roles of the two players: the winner of any complete board
    flips under this map because the adjacency offsets are transpose-closed.
    """
    cells = []
    for r in range(position.cols):
        for c in range(position.rows):
            old = position.cells[c * position.cols + r]
            cells.append(None if old is None else old.opposite)
    return Position(position.cols, position.rows, tuple(cells))
