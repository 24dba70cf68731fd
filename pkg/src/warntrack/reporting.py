"""CSV summaries and matplotlib figures for tracking and precision results."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluation import PrecisionReport
from .matching import TrackResult

__all__ = ["write_report"]

_STATUS_ORDER = ["persistent", "removed_fix", "removed_non_fix", "newly_introduced"]


def _status_counts(result: TrackResult) -> dict[str, int]:
    return {
        "persistent": len(result.matched_pairs),
        "removed_fix": len(result.removed_fix),
        "removed_non_fix": len(result.removed_non_fix),
        "newly_introduced": len(result.newly_introduced),
    }


def _write_summary_csv(path: Path, counts: dict[str, int]) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["status", "count"])
        for status in _STATUS_ORDER:
            writer.writerow([status, counts[status]])


def _write_precision_csv(path: Path, report: PrecisionReport) -> None:
    data = report.to_json_dict()
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["status", "tp", "fp", "tn", "fn", "precision"])
        for status, counts in data["per_status"].items():
            precision = counts["precision"]
            writer.writerow(
                [
                    status,
                    counts["tp"],
                    counts["fp"],
                    counts["tn"],
                    counts["fn"],
                    "" if precision is None else f"{precision:.4f}",
                ]
            )
        combined = data["combined"]
        writer.writerow(
            [
                "combined",
                combined["tp"],
                combined["predicted"] - combined["tp"],
                "",
                "",
                "" if combined["precision"] is None else f"{combined['precision']:.4f}",
            ]
        )


def _plot_status_counts(path: Path, counts: dict[str, int], mode: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    values = [counts[s] for s in _STATUS_ORDER]
    ax.bar(_STATUS_ORDER, values, color="#4878a8")
    ax.set_ylabel("warnings")
    ax.set_title(f"Warning evolution statuses ({mode})")
    ax.tick_params(axis="x", rotation=20)
    for idx, value in enumerate(values):
        ax.text(idx, value, str(value), ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _plot_precision(path: Path, report: PrecisionReport) -> None:
    data = report.to_json_dict()
    labels, values = [], []
    for status, counts in data["per_status"].items():
        if counts["precision"] is not None:
            labels.append(status)
            values.append(counts["precision"])
    combined = data["combined"]["precision"]
    if combined is not None:
        labels.append("combined")
        values.append(combined)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(labels, values, color="#60945f")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("precision")
    ax.set_title("Tracking precision by status")
    ax.tick_params(axis="x", rotation=20)
    for idx, value in enumerate(values):
        ax.text(idx, value, f"{value:.1%}", ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(
    result: TrackResult,
    out_dir: str | Path,
    precision: PrecisionReport | None = None,
) -> list[Path]:
    """Write the CSV summary and figures; returns the created paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    counts = _status_counts(result)

    created = []
    summary_csv = out / "summary.csv"
    _write_summary_csv(summary_csv, counts)
    created.append(summary_csv)

    counts_png = out / "status_counts.png"
    _plot_status_counts(counts_png, counts, result.mode.value)
    created.append(counts_png)

    if precision is not None:
        precision_csv = out / "precision.csv"
        _write_precision_csv(precision_csv, precision)
        created.append(precision_csv)

        precision_png = out / "precision.png"
        _plot_precision(precision_png, precision)
        created.append(precision_png)

    return created
