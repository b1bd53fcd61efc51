"""Monte Carlo criticality sampling, exact enumeration, and bid advice.

The sampling loop is the performance-critical path: it must fill a board
tens of thousands of times per second and determine each winner.  Fillings
are therefore processed in batches laid out as bit-planes: one uint64 word
per hex holds that hex's color across 64 boards, so a whole batch lives in
a small (rows, cols, words) cube and every step of the winner flood fill
(amber reachability from the top row) advances 64 boards per machine word.
Per-hex losing-color counts fall out of a single vectorized comparison
between each filling and its winner.

All randomness is counter-based (see :mod:`biddinghex.rng`): the filling of
trial ``i`` depends only on ``(seed, i)``, so results are independent of
batch size, worker count, and scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Optional

import numpy as np

from . import rng as _rng
from .board import Cell, Color, GameStatus, Position, status
from .errors import ConfigError, GameOverError, StaleStatsError, TooLargeError

ENUMERATION_CAP = 20
_BATCH = 8192


@dataclass(frozen=True)
class TrialConfig:
    """How to run a sampling pass: trial count, stream seed, worker count."""

    trials: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class CriticalityStats:
    """Per-hex losing-color counts over ``trials`` fillings.

    ``losing_count[h]`` is the number of fillings in which ``h`` carried the
    color opposite the filling's winner.  The losing rate ``L_h`` estimates
    the probability of that event; ``1 - 2 L_h`` estimates the probability
    that ``h`` is critical.

    Exact enumerations additionally carry ``not_critical_count`` (fillings
    whose winner survives recoloring ``h``) and ``amber_wins``.
    """

    trials: int
    losing_count: dict
    not_critical_count: Optional[dict] = None
    amber_wins: Optional[int] = None

    def losing_rate(self, cell: Cell) -> Fraction:
        return Fraction(self.losing_count[cell], self.trials)

    def criticality(self, cell: Cell) -> Fraction:
        return 1 - 2 * self.losing_rate(cell)

    def best_cells(self) -> list:
        """Cells with minimal losing count, in (row, col) order."""
        best = min(self.losing_count.values())
        return sorted(c for c, n in self.losing_count.items() if n == best)


@dataclass(frozen=True)
class BidAdvice:
    """Suggested move and chip bid from a criticality sample."""

    hex: Cell
    bid: int
    l_hat: Fraction
    criticality: Fraction
    position_status: GameStatus


def _require_ongoing(position: Position) -> GameStatus:
    st = status(position)
    if st is not GameStatus.ONGOING:
        raise GameOverError(f"game is already decided: {st.value}")
    return st


def _amber_template(position: Position) -> np.ndarray:
    t = np.zeros((position.rows, position.cols), dtype=bool)
    for i, color in enumerate(position.cells):
        if color is Color.AMBER:
            t[i // position.cols, i % position.cols] = True
    return t


def _pack_lanes(bools: np.ndarray) -> np.ndarray:
    """(n, lanes) bool -> (n, ceil(lanes / 64)) uint64, lane ``i`` in bit ``i % 64``."""
    packed = np.ascontiguousarray(np.packbits(bools, axis=-1, bitorder="little"))
    pad = -packed.shape[-1] % 8
    if pad:
        packed = np.pad(packed, [(0, 0)] * (packed.ndim - 1) + [(0, pad)])
    return packed.view("<u8")


def _unpack_lanes(words: np.ndarray, lanes: int) -> np.ndarray:
    """(words,) uint64 -> (lanes,) bool; inverse of one row of :func:`_pack_lanes`."""
    le = np.ascontiguousarray(words).astype("<u8", copy=False)
    return np.unpackbits(le.view(np.uint8), bitorder="little")[:lanes].view(np.bool_)


def _planes_from_template(template: np.ndarray, words: int) -> np.ndarray:
    """Broadcast a (rows, cols) bool board into bit-planes over ``words * 64`` lanes."""
    planes = np.zeros(template.shape + (words,), dtype=np.uint64)
    planes[template] = ~np.uint64(0)
    return planes


def _amber_wins_planes(planes: np.ndarray) -> np.ndarray:
    """Winners for a batch of complete boards held as bit-planes.

    Bit ``i`` of ``planes[r, c, w]`` is 1 when hex (r, c) of board
    ``64 * w + i`` carries an amber stone.  Grows the set of hexes amber can
    reach from the top row along the six hex directions until nothing
    changes, every board in parallel, then ORs the bottom row: returns the
    (words,) uint64 lane mask of boards where Amber wins.
    """
    rows = planes.shape[0]
    reach = np.zeros_like(planes)
    reach[0] = planes[0]
    while True:
        old = reach.copy()
        reach[1:, :, :] |= reach[:-1, :, :] & planes[1:, :, :]
        reach[1:, :-1, :] |= reach[:-1, 1:, :] & planes[1:, :-1, :]
        reach[:, 1:, :] |= reach[:, :-1, :] & planes[:, 1:, :]
        reach[:, :-1, :] |= reach[:, 1:, :] & planes[:, :-1, :]
        reach[:-1, 1:, :] |= reach[1:, :-1, :] & planes[:-1, 1:, :]
        reach[:-1, :, :] |= reach[1:, :, :] & planes[:-1, :, :]
        if np.array_equal(reach, old):
            break
    return np.bitwise_or.reduce(reach[rows - 1], axis=0)


def amber_wins_batch(amber: np.ndarray) -> np.ndarray:
    """Winners for a batch of complete boards.

    ``amber`` has shape (batch, rows, cols); True marks an amber stone and
    False a blue one.  Returns a bool vector: True where an amber chain
    connects the top row to the bottom row, i.e. where Amber wins.
    """
    trials, rows, cols = amber.shape
    planes = _pack_lanes(amber.reshape(trials, rows * cols).T).reshape(rows, cols, -1)
    return _unpack_lanes(_amber_wins_planes(planes), trials)


def sample_filling(position: Position, seed: int, trial: int = 0) -> Position:
    """Fill every empty cell independently amber or blue, fair-coin.

    A pure function of ``(position, seed, trial)``; trial ``i`` here is
    bit-identical to trial ``i`` of :func:`run_trials` with the same seed.
    """
    _require_ongoing(position)
    open_cells = position.empty_cells()
    bits = _rng.trial_bits(seed, trial, len(open_cells))
    cells = list(position.cells)
    for bit, cell in zip(bits, open_cells):
        cells[cell.row * position.cols + cell.col] = Color.AMBER if bit else Color.BLUE
    return Position(position.rows, position.cols, tuple(cells))


def _count_chunk(
    template: np.ndarray,
    open_r: np.ndarray,
    open_c: np.ndarray,
    seed: int,
    indices: np.ndarray,
    losing: np.ndarray,
) -> None:
    colors = _rng.trial_bits_batch(seed, indices, len(open_r))
    planes = _planes_from_template(template, (len(indices) + 63) // 64)
    planes[open_r, open_c, :] = _pack_lanes(colors.T)
    wins = _unpack_lanes(_amber_wins_planes(planes), len(indices))
    # A hex is of the losing color when its color differs from the winner's.
    losing += (colors ^ wins[:, None]).sum(axis=0, dtype=np.int64)


def run_trials(position: Position, config: TrialConfig) -> CriticalityStats:
    """Sample ``config.trials`` uniform fillings and tally losing colors.

    Worker ``w`` owns trial indices congruent to ``w`` modulo
    ``config.workers``.  Because every trial's bits are keyed by its index,
    the counts are identical for any worker count; the partition only
    controls parallelism.
    """
    _require_ongoing(position)
    open_cells = position.empty_cells()
    template = _amber_template(position)
    open_r = np.array([c.row for c in open_cells])
    open_c = np.array([c.col for c in open_cells])

    def worker_counts(w: int) -> np.ndarray:
        losing = np.zeros(len(open_cells), dtype=np.int64)
        indices = np.arange(w, config.trials, config.workers, dtype=np.uint64)
        for lo in range(0, len(indices), _BATCH):
            _count_chunk(
                template, open_r, open_c, config.seed, indices[lo : lo + _BATCH], losing
            )
        return losing

    if config.workers == 1:
        losing = worker_counts(0)
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            losing = sum(pool.map(worker_counts, range(config.workers)))

    return CriticalityStats(
        trials=config.trials,
        losing_count={cell: int(n) for cell, n in zip(open_cells, losing)},
    )


def enumerate_stats(position: Position) -> CriticalityStats:
    """Exact statistics over all ``2^k`` fillings of the ``k`` empty cells.

    Bit ``j`` of the filling index gives the color of the ``j``-th open cell
    (row-major order), 1 meaning amber.  Besides the losing-color counts this
    computes, for every open hex, the number of fillings whose winner is
    unchanged by recoloring that hex: recoloring hex ``j`` in filling ``i``
    yields filling ``i XOR 2^j``, so the flip test compares the winner array
    against itself under that index permutation.
    """
    open_cells = position.empty_cells()
    k = len(open_cells)
    if k > ENUMERATION_CAP:
        raise TooLargeError(
            f"{k} empty cells exceed the enumeration cap of {ENUMERATION_CAP}"
        )
    template = _amber_template(position)
    open_r = np.array([c.row for c in open_cells], dtype=np.intp)
    open_c = np.array([c.col for c in open_cells], dtype=np.intp)
    total = 1 << k
    win = np.empty(total, dtype=bool)
    losing = np.zeros(k, dtype=np.int64)
    for lo in range(0, total, _BATCH):
        hi = min(lo + _BATCH, total)
        ints = np.arange(lo, hi, dtype=np.uint64)
        colors = _rng.unpack_word_bits(ints[:, None], k)
        planes = _planes_from_template(template, (hi - lo + 63) // 64)
        planes[open_r, open_c, :] = _pack_lanes(colors.T)
        w = _unpack_lanes(_amber_wins_planes(planes), hi - lo)
        win[lo:hi] = w
        losing += (colors ^ w[:, None]).sum(axis=0, dtype=np.int64)

    indices = np.arange(total, dtype=np.uint64)
    not_critical = {}
    for j in range(k):
        flipped_win = win[indices ^ np.uint64(1 << j)]
        not_critical[open_cells[j]] = int((flipped_win == win).sum())

    return CriticalityStats(
        trials=total,
        losing_count={cell: int(n) for cell, n in zip(open_cells, losing)},
        not_critical_count=not_critical,
        amber_wins=int(win.sum()),
    )


def advise(
    position: Position,
    stats: CriticalityStats,
    total_chips: int,
    own_chips: int,
    tie_rng: Optional[Random] = None,
) -> BidAdvice:
    """Pick the best hex and an integer bid from criticality statistics.

    The hex is the open cell sampled least often with the losing color,
    ties broken by smallest (row, col), or uniformly by ``tie_rng`` when
    given.  The raw bid is ``floor((1/2 - L_h) * total_chips)``, computed in
    integer arithmetic, then clamped to ``[0, own_chips]``: a negative raw
    bid means the position looks lost, and conceding the move costs nothing.
    """
    if total_chips < 2:
        raise ConfigError(f"total_chips must be >= 2, got {total_chips}")
    if not 0 <= own_chips <= total_chips:
        raise ConfigError(
            f"own_chips must be within [0, {total_chips}], got {own_chips}"
        )
    st = _require_ongoing(position)
    if set(stats.losing_count) != set(position.empty_cells()):
        raise StaleStatsError("statistics do not match the position's open cells")
    best = stats.best_cells()
    cell = tie_rng.choice(best) if tie_rng is not None else best[0]
    t = stats.trials
    n_losing = stats.losing_count[cell]
    raw = (t - 2 * n_losing) * total_chips // (2 * t)
    return BidAdvice(
        hex=cell,
        bid=max(0, min(raw, own_chips)),
        l_hat=Fraction(n_losing, t),
        criticality=Fraction(t - 2 * n_losing, t),
        position_status=st,
    )
