"""Command-line interface."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigurationError, ReportParseError, ValidationError
from .evaluation import evaluate, load_ground_truth
from .matching import MatcherConfig, Mode, TrackResult
from .model import Detector, parse_report
from .pipeline import run_tracking
from .refactorings import RefactoringSet, parse_refactorings
from .snapshots import DEFAULT_EXTENSIONS, load_renames, load_snapshot

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_VALIDATION_ERROR = 3


def _fail(stage: str, message: str, code: int) -> int:
    print(f"error[{stage}]: {message}", file=sys.stderr)
    return code


def _read_text(path: str, stage: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"{stage} file not found: {path}")
    return p.read_text(encoding="utf-8")


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warntrack",
        description="Track static-analysis warnings between two source revisions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    track = sub.add_parser("track", help="match warnings between two revisions")
    track.add_argument("--mode", choices=[m.value for m in Mode], required=True)
    track.add_argument("--pre-report", required=True)
    track.add_argument("--post-report", required=True)
    track.add_argument("--pre-src", required=True)
    track.add_argument("--post-src", required=True)
    track.add_argument("--refactorings")
    track.add_argument("--renames")
    track.add_argument("--ground-truth")
    track.add_argument("--out", required=True)
    track.add_argument("--detector", choices=[d.value for d in Detector], default="spotbugs")
    track.add_argument("--location-threshold", type=int, default=3)
    track.add_argument("--hash-top-n", type=int, default=5)
    track.add_argument("--jobs", type=int, default=None)
    track.add_argument(
        "--extensions",
        default=",".join(DEFAULT_EXTENSIONS),
        help="comma-separated source extensions to load (default: .java,.scala)",
    )

    ev = sub.add_parser("evaluate", help="score a tracking result against labels")
    ev.add_argument("result", help="tracking result JSON file")
    ev.add_argument("truth", help="ground-truth JSON file")

    diff = sub.add_parser("diff", help="show the line diff and mapping of two files")
    diff.add_argument("pre_file")
    diff.add_argument("post_file")
    diff.add_argument(
        "--decl-index",
        action="store_true",
        help="also dump each file's class/method/field declaration index",
    )

    report = sub.add_parser("report", help="render CSV and figures for a result")
    report.add_argument("--result", required=True)
    report.add_argument("--ground-truth")
    report.add_argument("--out-dir", required=True)

    return parser


def _cmd_track(args: argparse.Namespace) -> int:
    stage = "config"
    try:
        cfg = MatcherConfig(
            location_threshold=args.location_threshold,
            hash_top_n=args.hash_top_n,
            mode=Mode(args.mode),
        )

        stage = "snapshots"
        extensions = tuple(
            ext if ext.startswith(".") else f".{ext}"
            for ext in args.extensions.split(",")
            if ext
        )
        pre_snapshot = load_snapshot(args.pre_src, "pre", extensions)
        post_snapshot = load_snapshot(args.post_src, "post", extensions)

        stage = "reports"
        detector = Detector(args.detector)
        pre_set = parse_report(_read_text(args.pre_report, "pre report"), detector, "pre")
        post_set = parse_report(_read_text(args.post_report, "post report"), detector, "post")

        stage = "renames"
        renames = load_renames(args.renames) if args.renames else {}

        stage = "refactorings"
        refs = (
            parse_refactorings(_read_text(args.refactorings, "refactorings"))
            if args.refactorings
            else RefactoringSet()
        )

        stage = "tracking"
        result = run_tracking(
            Mode(args.mode),
            pre_set,
            post_set,
            pre_snapshot,
            post_snapshot,
            renames=renames,
            refs=refs,
            cfg=cfg,
            jobs=args.jobs,
        )

        stage = "output"
        Path(args.out).write_text(_dump_json(result.to_json_dict()), encoding="utf-8")

        if args.ground_truth:
            stage = "evaluation"
            truth = load_ground_truth(args.ground_truth)
            report = evaluate(result, truth)
            sys.stdout.write(_dump_json(report.to_json_dict()))
        return EXIT_OK
    except (FileNotFoundError, ReportParseError, json.JSONDecodeError, OSError) as exc:
        return _fail(stage, str(exc), EXIT_INPUT_ERROR)
    except (ValidationError, ConfigurationError) as exc:
        return _fail(stage, str(exc), EXIT_VALIDATION_ERROR)


def _cmd_evaluate(args: argparse.Namespace) -> int:
    stage = "inputs"
    try:
        raw = json.loads(_read_text(args.result, "result"))
        result = TrackResult.from_json_dict(raw)
        truth = load_ground_truth(args.truth)
        stage = "evaluation"
        report = evaluate(result, truth)
        sys.stdout.write(_dump_json(report.to_json_dict()))
        return EXIT_OK
    except (FileNotFoundError, OSError, ReportParseError, json.JSONDecodeError) as exc:
        return _fail(stage, str(exc), EXIT_INPUT_ERROR)
    except (ValidationError, KeyError) as exc:
        return _fail(stage, str(exc), EXIT_VALIDATION_ERROR)


def _cmd_diff(args: argparse.Namespace) -> int:
    from .diffing import compute_diff

    try:
        pre_text = _read_text(args.pre_file, "pre")
        post_text = _read_text(args.post_file, "post")
    except (FileNotFoundError, OSError) as exc:
        return _fail("inputs", str(exc), EXIT_INPUT_ERROR)

    diff = compute_diff(pre_text, post_text, args.pre_file)
    pre_lines = pre_text.splitlines()
    post_lines = post_text.splitlines()
    for h in diff.hunks:
        header = f"@@ -{h.pre_start},{h.pre_len} +{h.post_start},{h.post_len} @@ {h.kind.value}"
        print(header)
        for line in pre_lines[h.pre_start - 1 : h.pre_start - 1 + h.pre_len]:
            print(f"-{line}")
        for line in post_lines[h.post_start - 1 : h.post_start - 1 + h.post_len]:
            print(f"+{line}")
    payload = diff.to_json_dict()
    if args.decl_index:
        from .declarations import build_decl_index

        payload["pre_decl_index"] = build_decl_index(pre_text, args.pre_file).to_json_dict()
        payload["post_decl_index"] = build_decl_index(post_text, args.post_file).to_json_dict()
    sys.stdout.write(_dump_json(payload))
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    from .reporting import write_report

    stage = "inputs"
    try:
        raw = json.loads(_read_text(args.result, "result"))
        result = TrackResult.from_json_dict(raw)
        precision = None
        if args.ground_truth:
            truth = load_ground_truth(args.ground_truth)
            stage = "evaluation"
            precision = evaluate(result, truth)
        stage = "rendering"
        created = write_report(result, args.out_dir, precision)
        for path in created:
            print(path)
        return EXIT_OK
    except (FileNotFoundError, OSError, json.JSONDecodeError) as exc:
        return _fail(stage, str(exc), EXIT_INPUT_ERROR)
    except (ValidationError, KeyError) as exc:
        return _fail(stage, str(exc), EXIT_VALIDATION_ERROR)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "track":
        return _cmd_track(args)
    if args.command == "evaluate":
        return _cmd_evaluate(args)
    if args.command == "diff":
        return _cmd_diff(args)
    if args.command == "report":
        return _cmd_report(args)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
