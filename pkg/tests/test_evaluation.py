"""Precision arithmetic against ground-truth labels."""

import pytest

from warntrack import (
    EvolutionStatus,
    GroundTruth,
    Mode,
    TrackResult,
    ValidationError,
    evaluate,
)

FIX = EvolutionStatus.REMOVED_FIX
NON_FIX = EvolutionStatus.REMOVED_NON_FIX
NEW = EvolutionStatus.NEWLY_INTRODUCED
PERSISTENT = EvolutionStatus.PERSISTENT


def result_with(pairs=(), removed_fix=(), removed_non_fix=(), newly=()):
    result = TrackResult(mode=Mode.STATICTRACKER)
    for pre_id, post_id in pairs:
        result.matched_pairs.append((pre_id, post_id, "exact"))
        result.persistent_pre.add(pre_id)
        result.persistent_post.add(post_id)
    result.removed_fix = set(removed_fix)
    result.removed_non_fix = set(removed_non_fix)
    result.newly_introduced = set(newly)
    return result


def test_perfect_prediction_has_precision_one():
    result = result_with(
        pairs=[("pre:0", "post:0")], removed_fix=["pre:1"], newly=["post:1"]
    )
    truth = GroundTruth(labels={"pre:1": FIX, "post:1": NEW})
    report = evaluate(result, truth)
    assert report.per_status[FIX].precision == 1.0
    assert report.per_status[NEW].precision == 1.0
    assert report.combined_precision == 1.0


def test_wrong_fix_prediction_counts_as_fp_and_fn():
    result = result_with(removed_fix=["pre:0"], removed_non_fix=["pre:1"])
    truth = GroundTruth(labels={"pre:0": NON_FIX, "pre:1": NON_FIX})
    report = evaluate(result, truth)
    fix_counts = report.per_status[FIX]
    assert (fix_counts.tp, fix_counts.fp) == (0, 1)
    # The truth-fix population is empty, so nothing is a missed fix.
    assert fix_counts.fn == 0
    non_fix_counts = report.per_status[NON_FIX]
    assert (non_fix_counts.tp, non_fix_counts.fp, non_fix_counts.fn) == (1, 0, 1)


def test_unlabeled_predictions_default_to_persistent():
    result = result_with(pairs=[("pre:0", "post:0")], newly=["post:1"])
    truth = GroundTruth(labels={"post:1": PERSISTENT})
    report = evaluate(result, truth)
    new_counts = report.per_status[NEW]
    assert (new_counts.tp, new_counts.fp) == (0, 1)
    persistent = report.per_status[PERSISTENT]
    assert persistent.tp == 2  # both sides of the matched pair


def test_truth_id_missing_from_result_is_an_error():
    result = result_with(removed_fix=["pre:0"])
    truth = GroundTruth(labels={"pre:0": FIX, "ghost:1": NEW})
    with pytest.raises(ValidationError) as exc:
        evaluate(result, truth)
    assert "ghost:1" in str(exc.value)


def test_empty_prediction_sets_have_null_precision():
    result = result_with(pairs=[("pre:0", "post:0")])
    report = evaluate(result, GroundTruth(labels={}))
    assert report.per_status[FIX].precision is None
    assert report.per_status[NON_FIX].precision is None
    assert report.per_status[NEW].precision is None
    assert report.combined_precision is None
    assert report.to_json_dict()["combined"]["precision"] is None


def _bulk(status_counts):
    """Build a result plus truth realizing (predicted, correct) per status."""
    result = TrackResult(mode=Mode.STATICTRACKER)
    labels = {}
    serial = 0
    for status, (predicted, correct) in status_counts.items():
        for k in range(predicted):
            side = "post" if status is NEW else "pre"
            wid = f"{side}:{serial:06d}"
            serial += 1
            if status is FIX:
                result.removed_fix.add(wid)
            elif status is NON_FIX:
                result.removed_non_fix.add(wid)
            else:
                result.newly_introduced.add(wid)
            if k < correct:
                labels[wid] = status
            else:
                labels[wid] = PERSISTENT
    return result, GroundTruth(labels=labels)


def test_published_ratio_72_5():
    result, truth = _bulk({FIX: (171, 124)})
    report = evaluate(result, truth)
    assert abs(report.per_status[FIX].precision * 100 - 72.5) < 0.05


def test_published_ratio_90_3_combined():
    result, truth = _bulk({FIX: (171, 124), NON_FIX: (1220, 1104), NEW: (1072, 996)})
    report = evaluate(result, truth)
    assert report.combined_predicted == 2463
    assert report.combined_tp == 2224
    assert abs(report.combined_precision * 100 - 90.3) < 0.05


def test_self_labels_give_precision_one_everywhere():
    result = result_with(
        pairs=[("pre:0", "post:0")],
        removed_fix=["pre:1"],
        removed_non_fix=["pre:2"],
        newly=["post:1"],
    )
    truth = GroundTruth(
        labels={
            "pre:0": PERSISTENT,
            "post:0": PERSISTENT,
            "pre:1": FIX,
            "pre:2": NON_FIX,
            "post:1": NEW,
        }
    )
    report = evaluate(result, truth)
    for status in EvolutionStatus:
        assert report.per_status[status].precision == 1.0


def test_prediction_totals_are_consistent():
    result, truth = _bulk({FIX: (10, 4), NON_FIX: (20, 15), NEW: (5, 5)})
    report = evaluate(result, truth)
    total_predictions = sum(
        c.tp + c.fp for c in report.per_status.values()
    )
    assert total_predictions == 35
