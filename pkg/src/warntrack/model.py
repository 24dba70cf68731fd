"""Warning data model and detector-report parsing.

A warning is one static-analysis finding located by file path, line range and
the class/method/field names the detector attached to it.  Reports are accepted
either as XML (``<WarningInstance>`` elements) or as a canonical JSON array;
both normalize into :class:`WarningSet` with deterministic ordering and stable
per-warning identifiers.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ElementTree
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import ReportParseError, ValidationError

__all__ = [
    "Detector",
    "EvolutionStatus",
    "ExactKey",
    "WarningInstance",
    "WarningSet",
    "exact_key",
    "normalize_volatile_identifiers",
    "parse_report",
    "warning_set_to_json",
]

# Compiler-generated numeric suffixes such as "opts$4"; stripped everywhere in
# an identifier because nested anonymous classes produce interior occurrences.
_VOLATILE_SUFFIX = re.compile(r"\$\d+")

# Zero-padded so lexicographic order of ids equals assignment order.
_ORDINAL_WIDTH = 6


class Detector(str, Enum):
    SPOTBUGS = "spotbugs"
    PMD = "pmd"


class EvolutionStatus(str, Enum):
    PERSISTENT = "persistent"
    REMOVED_FIX = "removed_fix"
    REMOVED_NON_FIX = "removed_non_fix"
    NEWLY_INTRODUCED = "newly_introduced"


class ExactKey(NamedTuple):
    """Identity used by exact matching: location plus all code names."""

    warning_type: str
    file_path: str
    class_name: str
    method_name: str
    field_name: str
    start_line: int
    end_line: int


@dataclass(frozen=True)
class WarningInstance:
    """One detector finding with the metadata used for matching."""

    detector: Detector
    warning_type: str
    project: str
    class_name: str
    method_name: str
    field_name: str
    file_path: str
    start_line: int
    end_line: int
    stable_id: str = ""

    def __post_init__(self) -> None:
        if not self.warning_type:
            raise ValidationError("warning_type must be non-empty")
        if not self.file_path:
            raise ValidationError("file_path must be non-empty")
        if self.file_path.startswith(("/", "\\")):
            raise ValidationError(f"file_path must be relative: {self.file_path!r}")
        if self.start_line < 1 or self.end_line < 1:
            raise ValidationError(
                f"line numbers must be positive in record "
                f"{self.warning_type}@{self.file_path}:{self.start_line}-{self.end_line}"
            )
        if self.start_line > self.end_line:
            raise ValidationError(
                f"start_line {self.start_line} exceeds end_line {self.end_line} in record "
                f"{self.warning_type}@{self.file_path}"
            )

    def sort_key(self) -> tuple:
        return (
            self.file_path,
            self.start_line,
            self.end_line,
            self.warning_type,
            self.stable_id,
        )


@dataclass(frozen=True)
class WarningSet:
    """Deterministically ordered collection of warnings for one revision."""

    revision_label: str
    warnings: tuple[WarningInstance, ...] = field(default_factory=tuple)

    @classmethod
    def from_instances(
        cls, revision_label: str, instances: Iterable[WarningInstance]
    ) -> "WarningSet":
        """Sort instances and assign stable ids ``<label>:<ordinal>``.

        The sort is stable, so duplicate records keep their input order and
        receive distinct ids.
        """
        ordered = sorted(
            instances,
            key=lambda w: (w.file_path, w.start_line, w.end_line, w.warning_type),
        )
        stamped = tuple(
            replace(w, stable_id=f"{revision_label}:{i:0{_ORDINAL_WIDTH}d}")
            for i, w in enumerate(ordered)
        )
        seen = set()
        for w in stamped:
            if w.stable_id in seen:
                raise ValidationError(f"duplicate stable_id {w.stable_id}")
            seen.add(w.stable_id)
        return cls(revision_label=revision_label, warnings=stamped)

    def __len__(self) -> int:
        return len(self.warnings)

    def __iter__(self):
        return iter(self.warnings)

    def by_id(self) -> dict[str, WarningInstance]:
        return {w.stable_id: w for w in self.warnings}


def exact_key(w: WarningInstance) -> ExactKey:
    """Key whose equality defines exact matching."""
    return ExactKey(
        warning_type=w.warning_type,
        file_path=w.file_path,
        class_name=w.class_name,
        method_name=w.method_name,
        field_name=w.field_name,
        start_line=w.start_line,
        end_line=w.end_line,
    )


def _strip_volatile(name: str) -> str:
    return _VOLATILE_SUFFIX.sub("", name)


def normalize_volatile_identifiers(warning_set: WarningSet) -> WarningSet:
    """Delete every ``$<digits>`` run from class/method/field names.

    Line numbers, paths, types and stable ids are untouched; the operation is
    idempotent.
    """
    normalized = tuple(
        replace(
            w,
            class_name=_strip_volatile(w.class_name),
            method_name=_strip_volatile(w.method_name),
            field_name=_strip_volatile(w.field_name),
        )
        for w in warning_set.warnings
    )
    return WarningSet(revision_label=warning_set.revision_label, warnings=normalized)


_XML_MANDATORY = ("WarningType", "FilePath", "StartLine", "EndLine")


def _xml_text(element: ElementTree.Element, tag: str) -> str | None:
    child = element.find(tag)
    if child is None:
        return None
    return (child.text or "").strip()


def _parse_xml(report_text: str, detector: Detector) -> list[WarningInstance]:
    try:
        root = ElementTree.fromstring(report_text)
    except ElementTree.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ReportParseError(f"malformed XML report: {exc.msg}", line, column) from exc

    elements = list(root.iter("WarningInstance"))
    instances = []
    for idx, element in enumerate(elements):
        missing = [tag for tag in _XML_MANDATORY if _xml_text(element, tag) in (None, "")]
        if missing:
            raise ValidationError(
                f"record #{idx} is missing mandatory element(s): {', '.join(missing)}"
            )
        try:
            start_line = int(_xml_text(element, "StartLine"))  # type: ignore[arg-type]
            end_line = int(_xml_text(element, "EndLine"))  # type: ignore[arg-type]
        except ValueError as exc:
            raise ValidationError(f"record #{idx} has non-integer line numbers") from exc
        instances.append(
            WarningInstance(
                detector=detector,
                warning_type=_xml_text(element, "WarningType") or "",
                project=_xml_text(element, "Project") or "",
                class_name=_xml_text(element, "Class") or "",
                method_name=_xml_text(element, "Method") or "",
                field_name=_xml_text(element, "Field") or "",
                file_path=_xml_text(element, "FilePath") or "",
                start_line=start_line,
                end_line=end_line,
            )
        )
    return instances


def _parse_json(report_text: str, detector: Detector) -> list[WarningInstance]:
    try:
        records = json.loads(report_text)
    except json.JSONDecodeError as exc:
        raise ReportParseError(
            f"malformed JSON report: {exc.msg}", exc.lineno, exc.colno
        ) from exc
    if not isinstance(records, list):
        raise ValidationError("JSON report must be an array of records")

    instances = []
    for idx, record in enumerate(records):
        if not isinstance(record, dict):
            raise ValidationError(f"record #{idx} is not an object")
        missing = [
            k
            for k in ("warning_type", "file_path", "start_line", "end_line")
            if record.get(k) in (None, "")
        ]
        if missing:
            raise ValidationError(
                f"record #{idx} is missing mandatory field(s): {', '.join(missing)}"
            )
        record_detector = detector
        if "detector" in record:
            try:
                record_detector = Detector(record["detector"])
            except ValueError as exc:
                raise ValidationError(
                    f"record #{idx} has unknown detector {record['detector']!r}"
                ) from exc
        try:
            start_line = int(record["start_line"])
            end_line = int(record["end_line"])
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"record #{idx} has non-integer line numbers") from exc
        instances.append(
            WarningInstance(
                detector=record_detector,
                warning_type=str(record["warning_type"]),
                project=str(record.get("project", "")),
                class_name=str(record.get("class_name", "")),
                method_name=str(record.get("method_name", "")),
                field_name=str(record.get("field_name", "")),
                file_path=str(record["file_path"]),
                start_line=start_line,
                end_line=end_line,
            )
        )
    return instances


def parse_report(report_text: str, detector: Detector, revision_label: str) -> WarningSet:
    """Parse an XML or JSON detector report into a :class:`WarningSet`.

    The format is sniffed from the first non-whitespace character: ``<`` means
    XML, anything else is treated as JSON.
    """
    stripped = report_text.lstrip()
    if stripped.startswith("<"):
        instances = _parse_xml(report_text, detector)
    else:
        instances = _parse_json(report_text, detector)
    return WarningSet.from_instances(revision_label, instances)


def warning_set_to_json(warning_set: WarningSet) -> str:
    """Serialize to the canonical JSON array; ``parse_report`` round-trips it."""
    records = [
        {
            "detector": w.detector.value,
            "warning_type": w.warning_type,
            "project": w.project,
            "class_name": w.class_name,
            "method_name": w.method_name,
            "field_name": w.field_name,
            "file_path": w.file_path,
            "start_line": w.start_line,
            "end_line": w.end_line,
        }
        for w in warning_set.warnings
    ]
    return json.dumps(records, indent=2, sort_keys=True) + "\n"
