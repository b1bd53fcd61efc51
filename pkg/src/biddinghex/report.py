"""Report rendering: figures and CSV files for the CLI's report path.

Every writer takes an output directory, writes a PNG figure next to the
matching CSV, and returns the paths it created.  Rendering is headless
(Agg backend); nothing here opens a window.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
from matplotlib.collections import PatchCollection  # noqa: E402
from matplotlib.patches import RegularPolygon  # noqa: E402

from .board import Cell, Color, Position  # noqa: E402
from .mc import BidAdvice, CriticalityStats  # noqa: E402
from .selfplay import GameRecord  # noqa: E402
from .verification import ThroughputReport  # noqa: E402

_AMBER = "#d98e04"
_BLUE = "#2e6f9e"
_HEX_RADIUS = 1 / math.sqrt(3)


def _hex_center(cell: Cell) -> tuple:
    # Slanted layout: each row shifts half a hex right, rows run downward.
    return (cell.col + 0.5 * cell.row, -cell.row * math.sqrt(3) / 2)


def write_criticality_report(
    position: Position,
    stats: CriticalityStats,
    advice: BidAdvice,
    out_dir: Path,
) -> List[Path]:
    """Per-hex criticality estimates: hex-map figure plus CSV table."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / "criticality.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "col", "losing_count", "trials", "losing_rate", "criticality"])
        for cell in sorted(stats.losing_count):
            writer.writerow(
                [
                    cell.row,
                    cell.col,
                    stats.losing_count[cell],
                    stats.trials,
                    f"{float(stats.losing_rate(cell)):.6f}",
                    f"{float(stats.criticality(cell)):.6f}",
                ]
            )

    fig, ax = plt.subplots(figsize=(1.2 * position.cols + 2, 1.1 * position.rows + 2))
    patches, values = [], []
    for row in range(position.rows):
        for col in range(position.cols):
            cell = Cell(row, col)
            center = _hex_center(cell)
            hexagon = RegularPolygon(center, numVertices=6, radius=_HEX_RADIUS)
            color = position.at(cell)
            if color is None:
                patches.append(hexagon)
                values.append(float(stats.criticality(cell)))
            else:
                face = _AMBER if color is Color.AMBER else _BLUE
                ax.add_patch(
                    RegularPolygon(
                        center, numVertices=6, radius=_HEX_RADIUS,
                        facecolor=face, edgecolor="black", linewidth=0.8,
                    )
                )
    collection = PatchCollection(patches, cmap="viridis", edgecolor="black", linewidth=0.8)
    collection.set_array(values)
    collection.set_clim(0.0, 1.0)
    ax.add_collection(collection)
    fig.colorbar(collection, ax=ax, label="estimated criticality")

    bx, by = _hex_center(advice.hex)
    ax.plot([bx], [by], marker="*", markersize=18, color="white", markeredgecolor="black")
    ax.set_title(
        f"play ({advice.hex.row}, {advice.hex.col}), bid {advice.bid} "
        f"({stats.trials:,} fillings)"
    )
    ax.set_xlim(-1.5, position.cols + 0.5 * position.rows + 0.5)
    ax.set_ylim(-position.rows * math.sqrt(3) / 2 - 1, 1.5)
    ax.set_aspect("equal")
    ax.axis("off")
    fig_path = out_dir / "criticality.png"
    fig.savefig(fig_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, fig_path]


def write_bench_report(report: ThroughputReport, out_dir: Path) -> List[Path]:
    """Throughput scaling: fillings/second against worker count."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / "throughput.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["workers", "trials", "seconds", "fillings_per_second"])
        for s in report.samples:
            writer.writerow([s.workers, s.trials, f"{s.seconds:.4f}", f"{s.rate:.1f}"])

    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [s.workers for s in report.samples]
    ys = [s.rate for s in report.samples]
    ax.plot(xs, ys, marker="o")
    ax.set_xlabel("workers")
    ax.set_ylabel("fillings / second")
    ax.set_title(f"{report.size}x{report.size} sampling throughput")
    ax.set_xticks(xs)
    ax.grid(True, alpha=0.3)
    ax.set_ylim(bottom=0)
    fig_path = out_dir / "throughput.png"
    fig.savefig(fig_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, fig_path]


def write_selfplay_report(record: GameRecord, out_dir: Path) -> List[Path]:
    """Chip trajectory of one game, round by round."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    total = record.final.total_chips

    csv_path = out_dir / "chips.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round", "chips_alice", "chips_bob"])
        for i, chips in enumerate(record.chips_alice_by_round):
            writer.writerow([i, chips, total - chips])

    fig, ax = plt.subplots(figsize=(6, 4))
    rounds = range(len(record.chips_alice_by_round))
    alice = record.chips_alice_by_round
    ax.plot(rounds, alice, marker="o", color=_AMBER, label="Alice (amber)")
    ax.plot(rounds, [total - c for c in alice], marker="o", color=_BLUE, label="Bob (blue)")
    ax.set_xlabel("round")
    ax.set_ylabel("chips")
    ax.set_title(f"chip trajectory — {record.winner.value} wins in {record.rounds} rounds")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig_path = out_dir / "chips.png"
    fig.savefig(fig_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, fig_path]
