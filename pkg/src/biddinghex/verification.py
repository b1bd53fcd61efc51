"""Verification sweeps: the executable form of the project's claims.

Each check returns a :class:`CheckResult` so the CLI and the test suite
share one implementation: the CLI prints the results, the tests assert
``passed``.  All sampling is seed-driven and deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, List, Optional, Sequence, Tuple

from .board import (
    Color,
    GameStatus,
    Position,
    status,
    winner_connectivity,
    winner_trace,
)
from .mc import TrialConfig, enumerate_stats, run_trials, sample_filling
from .richman import RichmanSolver
from .rng import derive_seed

THROUGHPUT_FLOOR = 50_000  # fillings + winner determinations per second


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: int
    detail: str
    elapsed: float

    def line(self) -> str:
        word = "PASS" if self.passed else "FAIL"
        return f"{word} {self.name}: {self.detail} ({self.elapsed:.2f}s)"


def random_ongoing_positions(
    count: int,
    seed: int,
    max_empty: int,
    sizes: Sequence[int] = (2, 3, 4, 5),
) -> List[Position]:
    """Sample undecided positions with 1..max_empty empty cells.

    Colors are assigned by fair coin and decided boards are rejected, so
    every returned position is Ongoing.  Deterministic in ``seed``.
    """
    rnd = Random(seed)
    out: List[Position] = []
    while len(out) < count:
        n = rnd.choice(list(sizes))
        total = n * n
        empties = rnd.randint(1, min(max_empty, total - 1))
        order = list(range(total))
        rnd.shuffle(order)
        empty_set = set(order[:empties])
        cells = tuple(
            None
            if i in empty_set
            else (Color.AMBER if rnd.random() < 0.5 else Color.BLUE)
            for i in range(total)
        )
        p = Position(n, n, cells)
        if status(p) is GameStatus.ONGOING:
            out.append(p)
    return out


def check_prop1(positions: Iterable[Position]) -> CheckResult:
    """Exact identity: fillings where a hex is not critical = 2 × fillings
    where it carries the losing color, for every open hex."""
    t0 = time.perf_counter()
    cases = failures = hexes = 0
    for p in positions:
        cases += 1
        st = enumerate_stats(p)
        bad = sum(
            st.not_critical_count[h] != 2 * st.losing_count[h]
            for h in st.losing_count
        )
        hexes += len(st.losing_count)
        failures += bad > 0
    return CheckResult(
        name="prop1-identity",
        passed=failures == 0,
        cases=cases,
        failures=failures,
        detail=f"{cases} positions, {hexes} hexes, exact",
        elapsed=time.perf_counter() - t0,
    )


def check_richman_agreement(positions: Iterable[Position]) -> CheckResult:
    """Exact agreement: 1 − r_value = amber-winning fillings / 2^empties."""
    t0 = time.perf_counter()
    solver = RichmanSolver()
    cases = failures = 0
    for p in positions:
        cases += 1
        st = enumerate_stats(p)
        expected = Fraction(st.amber_wins, 1 << p.empty_count)
        if 1 - solver.eval(p).r_value != expected:
            failures += 1
    return CheckResult(
        name="richman-agreement",
        passed=failures == 0,
        cases=cases,
        failures=failures,
        detail=f"{cases} positions, exact rational equality",
        elapsed=time.perf_counter() - t0,
    )


def check_prop2(positions: Iterable[Position]) -> CheckResult:
    """Exact bid agreement on Ongoing positions.

    With L* the smallest losing rate over open hexes: ½ − L* equals the
    optimal bid fraction, 1 − 2L* equals r_plus − r_minus, and the argmin
    set equals both players' optimal-move sets.
    """
    t0 = time.perf_counter()
    solver = RichmanSolver()
    cases = failures = 0
    for p in positions:
        cases += 1
        st = enumerate_stats(p)
        ev = solver.eval(p)
        l_star = min(st.losing_rate(h) for h in st.losing_count)
        argmin = set(st.best_cells())
        ok = (
            Fraction(1, 2) - l_star == ev.delta
            and 1 - 2 * l_star == ev.r_plus - ev.r_minus
            and argmin == set(ev.alice_optimal) == set(ev.bob_optimal)
        )
        failures += not ok
    return CheckResult(
        name="prop2-bid-agreement",
        passed=failures == 0,
        cases=cases,
        failures=failures,
        detail=f"{cases} positions, exact rational equality",
        elapsed=time.perf_counter() - t0,
    )


def check_no_draw(
    seed: int = 0,
    samples_per_size: int = 10_000,
    random_sizes: Sequence[int] = (4, 5, 6, 7, 8, 9, 10, 11),
) -> CheckResult:
    """Boundary walk equals connectivity (and names a winner) on every
    filling of boards up to 3×3, then on seeded random fillings of larger
    boards."""
    t0 = time.perf_counter()
    cases = failures = 0
    for rows in (1, 2, 3):
        for cols in (1, 2, 3):
            n = rows * cols
            for i in range(1 << n):
                cells = tuple(
                    Color.AMBER if (i >> j) & 1 else Color.BLUE for j in range(n)
                )
                f = Position(rows, cols, cells)
                cases += 1
                w = winner_trace(f)
                if w is None or w is not winner_connectivity(f):
                    failures += 1
    for size in random_sizes:
        empty = Position.empty(size)
        size_seed = derive_seed(seed, size)
        for i in range(samples_per_size):
            f = sample_filling(empty, size_seed, i)
            cases += 1
            w = winner_trace(f)
            if w is None or w is not winner_connectivity(f):
                failures += 1
    return CheckResult(
        name="no-draw-equivalence",
        passed=failures == 0,
        cases=cases,
        failures=failures,
        detail=(
            f"{cases} fillings (exhaustive <=3x3 plus {samples_per_size} "
            f"per size {random_sizes[0]}-{random_sizes[-1]})"
        ),
        elapsed=time.perf_counter() - t0,
    )


def check_mc_convergence(
    trials: int = 100_000,
    seeds: int = 50,
    tolerance: float = 0.01,
    allowed_misses: int = 1,
) -> CheckResult:
    """Sampled losing rates on the empty 3×3 board approach the exact ones.

    Runs ``seeds`` independent samples of ``trials`` fillings; a run misses
    when any hex's estimate deviates from the exact rate by more than
    ``tolerance``.  Passes when at most ``allowed_misses`` runs miss.
    """
    t0 = time.perf_counter()
    pos = Position.empty(3)
    exact = enumerate_stats(pos)
    exact_rates = {h: float(exact.losing_rate(h)) for h in exact.losing_count}
    misses = 0
    worst = 0.0
    for s in range(seeds):
        st = run_trials(pos, TrialConfig(trials=trials, seed=s))
        dev = max(
            abs(st.losing_count[h] / trials - exact_rates[h]) for h in exact_rates
        )
        worst = max(worst, dev)
        if dev > tolerance:
            misses += 1
    return CheckResult(
        name="mc-convergence",
        passed=misses <= allowed_misses,
        cases=seeds,
        failures=misses,
        detail=(
            f"{seeds} seeds x {trials} trials, max deviation {worst:.4f}, "
            f"{misses} over {tolerance}"
        ),
        elapsed=time.perf_counter() - t0,
    )


@dataclass(frozen=True)
class ThroughputSample:
    workers: int
    trials: int
    seconds: float

    @property
    def rate(self) -> float:
        return self.trials / self.seconds


@dataclass(frozen=True)
class ThroughputReport:
    size: int
    samples: Tuple[ThroughputSample, ...]

    @property
    def single_worker_rate(self) -> float:
        return next(s.rate for s in self.samples if s.workers == 1)

    @property
    def passed(self) -> bool:
        return self.single_worker_rate >= THROUGHPUT_FLOOR


def measure_throughput(
    size: int = 11,
    seconds: float = 2.0,
    worker_counts: Sequence[int] = (1, 2, 4),
    seed: int = 0,
) -> ThroughputReport:
    """Time the sampling loop on an empty board at several worker counts.

    The measured call is the same :func:`run_trials` used everywhere else;
    the trial count is calibrated so each measurement runs for roughly
    ``seconds``.
    """
    pos = Position.empty(size)
    warm = 20_000
    run_trials(pos, TrialConfig(trials=warm, seed=seed))
    t0 = time.perf_counter()
    run_trials(pos, TrialConfig(trials=warm, seed=seed))
    per_trial = (time.perf_counter() - t0) / warm
    trials = max(10_000, int(seconds / per_trial))
    samples = []
    for w in worker_counts:
        t0 = time.perf_counter()
        run_trials(pos, TrialConfig(trials=trials, seed=seed, workers=w))
        dt = time.perf_counter() - t0
        samples.append(ThroughputSample(workers=w, trials=trials, seconds=dt))
    return ThroughputReport(size=size, samples=tuple(samples))


def check_throughput(
    size: int = 11, seconds: float = 2.0, worker_counts: Sequence[int] = (1, 2, 4)
) -> CheckResult:
    t0 = time.perf_counter()
    report = measure_throughput(size=size, seconds=seconds, worker_counts=worker_counts)
    scaling = ", ".join(f"{s.workers}w {s.rate:,.0f}/s" for s in report.samples)
    return CheckResult(
        name="throughput",
        passed=report.passed,
        cases=len(report.samples),
        failures=0 if report.passed else 1,
        detail=f"{size}x{size} floor {THROUGHPUT_FLOOR:,}/s: {scaling}",
        elapsed=time.perf_counter() - t0,
    )


def check_determinism(seed: int = 7, trials: int = 50_000) -> CheckResult:
    """run_trials is a pure function of (position, seed) for any worker count."""
    t0 = time.perf_counter()
    pos = random_ongoing_positions(1, seed=seed, max_empty=12, sizes=(5,))[0]
    base = run_trials(pos, TrialConfig(trials=trials, seed=seed, workers=1))
    same = all(
        run_trials(pos, TrialConfig(trials=trials, seed=seed, workers=w)) == base
        for w in (1, 2, 3, 8)
    )
    return CheckResult(
        name="determinism",
        passed=same,
        cases=4,
        failures=0 if same else 1,
        detail=f"{trials} trials, workers 1/2/3/8 bit-identical",
        elapsed=time.perf_counter() - t0,
    )
