"""Exact bidding values for small positions by memoized game-tree recursion.

Under real-valued bidding with optimal play, each position has a critical
share of the total wealth — the Richman value — above which the blue player
wins and below which the amber player does.  The value of a position is the
average of the best value Blue can move to (``r_plus``, maximizing) and the
best value Amber can move to (``r_minus``, minimizing); half their gap is
the optimal bid for both players.  Everything here is computed in exact
rational arithmetic: no floating point enters this module.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet

from .board import Cell, Color, GameStatus, Position, status
from .errors import TooLargeError

DEFAULT_CAP = 12


@dataclass(frozen=True)
class NodeEval:
    """Exact evaluation of one position.

    ``r_value`` is the blue player's critical share in [0, 1]: Amber wins
    real-valued bidding if and only if her share of the wealth exceeds it.
    ``r_minus`` / ``r_plus`` are the minimum / maximum of ``r_value`` over
    the positions reachable in one amber / blue move, ``delta`` the optimal
    bid ``(r_plus - r_minus) / 2`` as a fraction of the total wealth, and
    the optimal sets hold the cells achieving the min / max.  Terminal
    positions carry ``r_plus == r_minus == r_value``, zero ``delta``, and
    empty optimal sets.
    """

    r_value: Fraction
    r_plus: Fraction
    r_minus: Fraction
    delta: Fraction
    alice_optimal: FrozenSet[Cell]
    bob_optimal: FrozenSet[Cell]


class RichmanSolver:
    """Memoized evaluator with a configurable size cap.

    The cap bounds the number of empty cells a queried position may have
    (default 12; raising it is at the caller's risk — the reachable state
    space grows as 3^empty).  The memo table is shared across calls behind
    a lock, so a solver instance is safe to use from multiple threads;
    the :class:`NodeEval` results are immutable and freely shareable.
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self._memo: dict = {}
        self._lock = threading.Lock()

    def eval(self, position: Position) -> NodeEval:
        if position.empty_count > self.cap:
            raise TooLargeError(
                f"{position.empty_count} empty cells exceed the evaluation "
                f"cap of {self.cap}"
            )
        with self._lock:
            return self._eval(position)

    def random_turn_value(self, position: Position) -> Fraction:
        """Probability that Amber wins the random-turn game under optimal play.

        Equals one minus the bidding value; for Hex it also equals the
        fraction of uniform fillings of the empty cells that Amber wins,
        which is what the tests compare it against.
        """
        return 1 - self.eval(position).r_value

    def _eval(self, position: Position) -> NodeEval:
        key = (position.rows, position.cols, position.cells)
        hit = self._memo.get(key)
        if hit is not None:
            return hit

        st = status(position)
        if st is not GameStatus.ONGOING:
            r = Fraction(0) if st is GameStatus.AMBER_WON else Fraction(1)
            ev = NodeEval(r, r, r, Fraction(0), frozenset(), frozenset())
        else:
            r_minus = r_plus = None
            alice: list = []
            bob: list = []
            for cell in position.empty_cells():
                a = self._eval(position.place(cell, Color.AMBER)).r_value
                if r_minus is None or a < r_minus:
                    r_minus, alice = a, [cell]
                elif a == r_minus:
                    alice.append(cell)
                b = self._eval(position.place(cell, Color.BLUE)).r_value
                if r_plus is None or b > r_plus:
                    r_plus, bob = b, [cell]
                elif b == r_plus:
                    bob.append(cell)
            ev = NodeEval(
                r_value=(r_plus + r_minus) / 2,
                r_plus=r_plus,
                r_minus=r_minus,
                delta=(r_plus - r_minus) / 2,
                alice_optimal=frozenset(alice),
                bob_optimal=frozenset(bob),
            )

        self._memo[key] = ev
        return ev


_default_solver = RichmanSolver()


def richman_eval(position: Position) -> NodeEval:
    """Evaluate a position with the shared default solver (cap 12)."""
    return _default_solver.eval(position)


def random_turn_value(position: Position) -> Fraction:
    """Amber's random-turn win probability, via the shared default solver."""
    return _default_solver.random_turn_value(position)
