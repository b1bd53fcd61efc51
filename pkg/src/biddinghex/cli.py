"""Command-line entry point: advice, exact solving, verification, benchmarks,
self-play, and the HTTP server.

Exit codes: 0 on success, 1 when a verification or benchmark claim fails,
2 on usage or input errors.  With ``--json``, output for a given set of
flags and seed is byte-identical across runs (benchmarks excepted — they
report wall-clock timings).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .board import Position, parse_position, format_position
from .errors import BiddingHexError
from .game import BidsResolved, GameConfig, MovePlaced
from .mc import TrialConfig, advise, run_trials
from .richman import RichmanSolver
from .selfplay import AdvisedPlayer, play_game
from .rng import derive_seed
from . import verification as verif

_FLOOR = verif.THROUGHPUT_FLOOR


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _cells(cells) -> List[List[int]]:
    return [[c.row, c.col] for c in sorted(cells)]


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _report_paths(paths) -> None:
    for p in paths:
        print(f"wrote {p}")


def cmd_advise(args: argparse.Namespace) -> int:
    position = parse_position(args.pos)
    config = TrialConfig(trials=args.trials, seed=args.seed, workers=args.workers)
    stats = run_trials(position, config)
    advice = advise(position, stats, args.total, args.own)
    if args.json:
        _emit_json(
            {
                "position": format_position(position),
                "hex": [advice.hex.row, advice.hex.col],
                "bid": advice.bid,
                "l_hat": _frac(advice.l_hat),
                "criticality": _frac(advice.criticality),
                "trials": args.trials,
                "seed": args.seed,
                "best_cells": _cells(stats.best_cells()),
            }
        )
    else:
        print(f"position  {format_position(position)}")
        print(f"play      ({advice.hex.row}, {advice.hex.col})")
        print(f"bid       {advice.bid}  (of {args.own} held, {args.total} total)")
        print(f"est. losing rate {_frac(advice.l_hat)}, criticality {_frac(advice.criticality)}")
    if args.report_dir:
        from .report import write_criticality_report

        _report_paths(write_criticality_report(position, stats, advice, Path(args.report_dir)))
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    position = parse_position(args.pos)
    solver = RichmanSolver(cap=args.max_empty)
    ev = solver.eval(position)
    if args.json:
        _emit_json(
            {
                "position": format_position(position),
                "r_value": _frac(ev.r_value),
                "r_plus": _frac(ev.r_plus),
                "r_minus": _frac(ev.r_minus),
                "delta": _frac(ev.delta),
                "alice_optimal": _cells(ev.alice_optimal),
                "bob_optimal": _cells(ev.bob_optimal),
            }
        )
    else:
        print(f"position  {format_position(position)}")
        print(f"r_value   {_frac(ev.r_value)}")
        print(f"r_plus    {_frac(ev.r_plus)}   r_minus {_frac(ev.r_minus)}")
        print(f"delta     {_frac(ev.delta)}")
        print(f"optimal   alice {_cells(ev.alice_optimal)}  bob {_cells(ev.bob_optimal)}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    standard = [Position.empty(1), Position.empty(2), Position.empty(2, 3), Position.empty(3)]
    sampled = verif.random_ongoing_positions(200, seed=args.seed, max_empty=args.max_empty)
    positions = standard + sampled
    small = [p for p in positions if p.empty_count <= min(8, args.max_empty)]
    results = [
        verif.check_prop1(positions),
        verif.check_richman_agreement(small),
        verif.check_prop2(small),
    ]
    ok = all(r.passed for r in results)
    if args.json:
        _emit_json(
            {
                "max_empty": args.max_empty,
                "seed": args.seed,
                "checks": [
                    {
                        "name": r.name,
                        "passed": r.passed,
                        "cases": r.cases,
                        "failures": r.failures,
                    }
                    for r in results
                ],
                "passed": ok,
            }
        )
    else:
        for r in results:
            print(r.line())
        print("all checks passed" if ok else "verification FAILED")
    return 0 if ok else 1


def cmd_bench(args: argparse.Namespace) -> int:
    counts = [1]
    while counts[-1] * 2 <= args.workers:
        counts.append(counts[-1] * 2)
    if args.workers not in counts:
        counts.append(args.workers)
    report = verif.measure_throughput(
        size=args.size, seconds=args.seconds, worker_counts=counts, seed=args.seed
    )
    ok = report.passed
    if args.json:
        _emit_json(
            {
                "size": args.size,
                "floor": _FLOOR,
                "passed": ok,
                "samples": [
                    {
                        "workers": s.workers,
                        "trials": s.trials,
                        "seconds": round(s.seconds, 4),
                        "fillings_per_second": round(s.rate, 1),
                    }
                    for s in report.samples
                ],
            }
        )
    else:
        for s in report.samples:
            print(
                f"workers {s.workers:2d}: {s.rate:12,.0f} fillings/sec "
                f"({s.trials} fillings in {s.seconds:.2f}s)"
            )
        verdict = "meets" if ok else "BELOW"
        print(f"single-worker rate {verdict} the {_FLOOR:,}/sec floor")
    if args.report_dir:
        from .report import write_bench_report

        _report_paths(write_bench_report(report, Path(args.report_dir)))
    return 0 if ok else 1


def _format_event(event) -> str:
    if isinstance(event, BidsResolved):
        return (
            f"bids  alice {event.alice_bid}, bob {event.bob_bid} -> "
            f"{event.winner.value} pays {event.transfer}"
        )
    if isinstance(event, MovePlaced):
        return f"move  {event.player.value} plays ({event.cell.row}, {event.cell.col})"
    return f"end   {event.winner.value} wins"


def cmd_selfplay(args: argparse.Namespace) -> int:
    config = GameConfig(size=args.size)
    record = play_game(
        config,
        AdvisedPlayer(trials=args.trials, seed=derive_seed(args.seed, 0), workers=args.workers),
        AdvisedPlayer(trials=args.trials, seed=derive_seed(args.seed, 1), workers=args.workers),
    )
    final = record.final
    if args.json:
        events = []
        for event in final.history:
            if isinstance(event, BidsResolved):
                events.append(
                    {
                        "type": "bids",
                        "alice_bid": event.alice_bid,
                        "bob_bid": event.bob_bid,
                        "winner": event.winner.value,
                        "transfer": event.transfer,
                    }
                )
            elif isinstance(event, MovePlaced):
                events.append(
                    {
                        "type": "move",
                        "player": event.player.value,
                        "cell": [event.cell.row, event.cell.col],
                    }
                )
            else:
                events.append({"type": "end", "winner": event.winner.value})
        _emit_json(
            {
                "size": args.size,
                "trials": args.trials,
                "seed": args.seed,
                "winner": record.winner.value,
                "rounds": record.rounds,
                "chips": {"alice": final.chips_alice, "bob": final.chips_bob},
                "position": format_position(final.position),
                "events": events,
            }
        )
    else:
        for event in final.history:
            print(_format_event(event))
        print(
            f"{record.winner.value} wins after {record.rounds} rounds; "
            f"chips alice {final.chips_alice} / bob {final.chips_bob}"
        )
    if args.report_dir:
        from .report import write_selfplay_report

        _report_paths(write_selfplay_report(record, Path(args.report_dir)))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import DEFAULT_TRIAL_BUDGET, create_app

    host = os.environ.get("BIDDINGHEX_HOST", "127.0.0.1")
    snapshot_dir = os.environ.get("BIDDINGHEX_SNAPSHOT_DIR")
    budget = int(os.environ.get("BIDDINGHEX_TRIAL_BUDGET", DEFAULT_TRIAL_BUDGET))
    app = create_app(
        snapshot_dir=Path(snapshot_dir) if snapshot_dir else None,
        default_trial_budget=budget,
    )
    uvicorn.run(app, host=host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biddinghex",
        description="Bidding Hex: sampling advisor, exact solver, game server.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *names: str) -> None:
        if "pos" in names:
            p.add_argument("--pos", required=True, help="position string, e.g. '3:.A./.../B..'")
        if "trials" in names:
            p.add_argument("--trials", type=int, default=100_000, help="fillings to sample")
        if "seed" in names:
            p.add_argument("--seed", type=int, default=0, help="random stream seed")
        if "workers" in names:
            p.add_argument("--workers", type=int, default=1, help="sampling worker threads")
        if "json" in names:
            p.add_argument("--json", action="store_true", help="machine-readable output")
        if "report" in names:
            p.add_argument("--report-dir", help="write CSV + figure report here")

    p = sub.add_parser("advise", help="suggest a move and bid for a position")
    add_common(p, "pos", "trials", "seed", "workers", "json", "report")
    p.add_argument("--total", type=int, required=True, help="total chips in play")
    p.add_argument("--own", type=int, required=True, help="chips held by the bidder")
    p.set_defaults(func=cmd_advise)

    p = sub.add_parser("exact", help="exact bidding values by full recursion")
    add_common(p, "pos", "json")
    p.add_argument("--max-empty", type=int, default=12, help="empty-cell cap")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="run the exact verification sweeps")
    add_common(p, "seed", "json")
    p.add_argument("--max-empty", type=int, default=12, help="largest sampled empty count")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="measure sampling throughput")
    add_common(p, "seed", "json", "report")
    p.add_argument("--size", type=int, default=11, help="board side length")
    p.add_argument("--seconds", type=float, default=2.0, help="target time per measurement")
    p.add_argument("--workers", type=int, default=4, help="largest worker count to scale to")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selfplay", help="play the advisor against itself")
    add_common(p, "trials", "seed", "workers", "json", "report")
    p.add_argument("--size", type=int, default=5, help="board side length")
    p.set_defaults(func=cmd_selfplay)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BiddingHexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
