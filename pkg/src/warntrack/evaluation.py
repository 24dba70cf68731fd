"""Precision evaluation of a tracking result against ground-truth labels."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError
from .matching import TrackResult
from .model import EvolutionStatus

__all__ = ["GroundTruth", "PrecisionReport", "StatusCounts", "evaluate", "load_ground_truth"]

# Precision over these statuses is the headline "combined" number; persistent
# warnings are the overwhelming majority and would drown the signal.
COMBINED_STATUSES = (
    EvolutionStatus.REMOVED_FIX,
    EvolutionStatus.REMOVED_NON_FIX,
    EvolutionStatus.NEWLY_INTRODUCED,
)


@dataclass(frozen=True)
class GroundTruth:
    labels: dict[str, EvolutionStatus]


def load_ground_truth(path: str | Path) -> GroundTruth:
    """Read labels from a JSON array of ``{id, status}``."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValidationError("ground truth must be a JSON array")
    labels: dict[str, EvolutionStatus] = {}
    for idx, entry in enumerate(raw):
        if not isinstance(entry, dict) or "id" not in entry or "status" not in entry:
            raise ValidationError(f"ground-truth entry #{idx} must have id and status")
        try:
            labels[str(entry["id"])] = EvolutionStatus(entry["status"])
        except ValueError as exc:
            raise ValidationError(
                f"ground-truth entry #{idx} has unknown status {entry['status']!r}"
            ) from exc
    return GroundTruth(labels=labels)


@dataclass
class StatusCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def precision(self) -> float | None:
        predicted = self.tp + self.fp
        if predicted == 0:
            return None
        return self.tp / predicted


@dataclass
class PrecisionReport:
    per_status: dict[EvolutionStatus, StatusCounts] = field(default_factory=dict)
    combined_tp: int = 0
    combined_predicted: int = 0

    @property
    def combined_precision(self) -> float | None:
        if self.combined_predicted == 0:
            return None
        return self.combined_tp / self.combined_predicted

    def to_json_dict(self) -> dict:
        return {
            "per_status": {
                status.value: {
                    "tp": counts.tp,
                    "fp": counts.fp,
                    "tn": counts.tn,
                    "fn": counts.fn,
                    "precision": counts.precision,
                }
                for status, counts in sorted(
                    self.per_status.items(), key=lambda kv: kv[0].value
                )
            },
            "combined": {
                "tp": self.combined_tp,
                "predicted": self.combined_predicted,
                "precision": self.combined_precision,
            },
        }


def predictions_from_result(result: TrackResult) -> dict[str, EvolutionStatus]:
    """Predicted status per stable id; persistent covers both sides of a pair."""
    predicted: dict[str, EvolutionStatus] = {}
    for pre_id, post_id, _ in result.matched_pairs:
        predicted[pre_id] = EvolutionStatus.PERSISTENT
        predicted[post_id] = EvolutionStatus.PERSISTENT
    for wid in result.removed_fix:
        predicted[wid] = EvolutionStatus.REMOVED_FIX
    for wid in result.removed_non_fix:
        predicted[wid] = EvolutionStatus.REMOVED_NON_FIX
    for wid in result.newly_introduced:
        predicted[wid] = EvolutionStatus.NEWLY_INTRODUCED
    return predicted


def evaluate(result: TrackResult, truth: GroundTruth) -> PrecisionReport:
    """Per-status and combined precision of the tracking predictions.

    Ids predicted but absent from the labels default to persistent, the usual
    convention for the unlabeled majority.  A labeled id missing from the
    predictions is a validation error.
    """
    predicted = predictions_from_result(result)

    unknown = sorted(set(truth.labels) - set(predicted))
    if unknown:
        raise ValidationError(
            f"ground-truth id not present in the tracking result: {unknown[0]}"
        )

    actual = {
        wid: truth.labels.get(wid, EvolutionStatus.PERSISTENT) for wid in predicted
    }

    report = PrecisionReport()
    for status in EvolutionStatus:
        counts = StatusCounts()
        for wid, predicted_status in predicted.items():
            is_predicted = predicted_status == status
            is_actual = actual[wid] == status
            if is_predicted and is_actual:
                counts.tp += 1
            elif is_predicted:
                counts.fp += 1
            elif is_actual:
                counts.fn += 1
            else:
                counts.tn += 1
        report.per_status[status] = counts

    for status in COMBINED_STATUSES:
        counts = report.per_status[status]
        report.combined_tp += counts.tp
        report.combined_predicted += counts.tp + counts.fp
    return report
