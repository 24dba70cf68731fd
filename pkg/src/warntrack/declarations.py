"""Heuristic declaration index for Java-like sources.

A brace-balanced scan recovers class, method and field line ranges; it is not
a parser.  Regions it cannot bracket are omitted rather than guessed, which
downstream rules treat as "context unavailable" and handle conservatively.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dataclass_field
from enum import Enum

__all__ = ["Decl", "DeclIndex", "DeclKind", "build_decl_index", "locate_context"]


class DeclKind(str, Enum):
    CLASS = "class"
    METHOD = "method"
    FIELD = "field"


@dataclass(eq=False)
class Decl:
    name: str
    kind: DeclKind
    start_line: int
    end_line: int
    declaration_line: int
    enclosing: "Decl | None" = None

    def contains(self, line: int) -> bool:
        return self.start_line <= line <= self.end_line

    def range(self) -> tuple[int, int]:
        return (self.start_line, self.end_line)


@dataclass(eq=False)
class DeclIndex:
    file_path: str
    classes: list[Decl] = dataclass_field(default_factory=list)
    methods: list[Decl] = dataclass_field(default_factory=list)
    fields: list[Decl] = dataclass_field(default_factory=list)

    def to_json_dict(self) -> dict:
        def dump(decls: list[Decl]) -> list[dict]:
            return [
                {
                    "name": d.name,
                    "kind": d.kind.value,
                    "start_line": d.start_line,
                    "end_line": d.end_line,
                    "declaration_line": d.declaration_line,
                }
                for d in decls
            ]

        return {
            "file_path": self.file_path,
            "classes": dump(self.classes),
            "methods": dump(self.methods),
            "fields": dump(self.fields),
        }


_CLASS_RE = re.compile(
    r"\b(?:class|interface|enum|object|trait)\s+([A-Za-z_$][A-Za-z0-9_$]*)"
)
_SCALA_DEF_RE = re.compile(r"\bdef\s+([A-Za-z_$][A-Za-z0-9_$]*)")
_METHOD_NAME_RE = re.compile(r"([A-Za-z_$][A-Za-z0-9_$]*)\s*\(")
_ANNOTATION_RE = re.compile(r"@\s*[A-Za-z_$][\w$.]*\s*(?:\([^)]*\))?")
_SCALA_VALVAR_RE = re.compile(
    r"^\s*(?:(?:private|protected|public|final|lazy|override|implicit)\s+)*"
    r"(?:val|var)\s+([A-Za-z_$][A-Za-z0-9_$]*)"
)
_FIELD_NAME_RE = re.compile(r"([A-Za-z_$][A-Za-z0-9_$]*)\s*(?:\[\s*\])*\s*$")

_NOT_METHOD_NAMES = {
    "if", "for", "while", "switch", "catch", "synchronized", "do", "try",
    "else", "return", "new", "throw", "assert",
}
_NOT_FIELD_STARTS = {"return", "break", "continue", "throw", "package", "import", "case"}


def _mask_literals(text: str) -> str:
    """Blank out comments and string/char literals, preserving line structure."""
    out = []
    i = 0
    n = len(text)
    state = "code"
    while i < n:
        ch = text[i]
        nxt = text[i + 1] if i + 1 < n else ""
        if state == "code":
            if ch == "/" and nxt == "/":
                state = "line_comment"
                out.append("  ")
                i += 2
            elif ch == "/" and nxt == "*":
                state = "block_comment"
                out.append("  ")
                i += 2
            elif ch == '"':
                state = "string"
                out.append(" ")
                i += 1
            elif ch == "'":
                state = "char"
                out.append(" ")
                i += 1
            else:
                out.append(ch)
                i += 1
        elif state == "line_comment":
            if ch == "\n":
                state = "code"
                out.append("\n")
            else:
                out.append(" ")
            i += 1
        elif state == "block_comment":
            if ch == "*" and nxt == "/":
                state = "code"
                out.append("  ")
                i += 2
            else:
                out.append("\n" if ch == "\n" else " ")
                i += 1
        elif state == "string":
            if ch == "\\":
                out.append("  ")
                i += 2
            elif ch == '"':
                state = "code"
                out.append(" ")
                i += 1
            else:
                out.append("\n" if ch == "\n" else " ")
                i += 1
        else:  # char literal
            if ch == "\\":
                out.append("  ")
                i += 2
            elif ch == "'":
                state = "code"
                out.append(" ")
                i += 1
            else:
                out.append("\n" if ch == "\n" else " ")
                i += 1
    return "".join(out)


class _Block:
    __slots__ = ("decl",)

    def __init__(self, decl: Decl | None):
        self.decl = decl


def _classify_signature(signature: str, enclosing: Decl | None) -> tuple[DeclKind, str] | None:
    stripped = _ANNOTATION_RE.sub(" ", signature)
    class_match = _CLASS_RE.search(stripped)
    if class_match:
        return DeclKind.CLASS, class_match.group(1)
    if enclosing is None or enclosing.kind is not DeclKind.CLASS:
        return None
    scala_def = _SCALA_DEF_RE.search(stripped)
    if scala_def:
        return DeclKind.METHOD, scala_def.group(1)
    method_match = _METHOD_NAME_RE.search(stripped)
    if method_match and method_match.group(1) not in _NOT_METHOD_NAMES:
        return DeclKind.METHOD, method_match.group(1)
    return None


def _field_name(statement: str) -> str | None:
    body = statement.strip().rstrip(";").strip()
    if not body:
        return None
    first_word = body.split(None, 1)[0] if body.split() else ""
    if first_word in _NOT_FIELD_STARTS:
        return None
    declarator = body.split("=", 1)[0].strip()
    if "(" in declarator or ")" in declarator:
        return None
    match = _FIELD_NAME_RE.search(declarator)
    if not match:
        return None
    if declarator == match.group(1):
        # A bare identifier is an expression statement, not a declaration.
        return None
    return match.group(1)


def build_decl_index(text: str, file_path: str) -> DeclIndex:
    """Best-effort scan of class/method/field declarations with line ranges."""
    index = DeclIndex(file_path=file_path)
    masked = _mask_literals(text).splitlines()

    stack: list[_Block] = []
    statement: list[str] = []
    statement_start: int | None = None

    def enclosing_decl() -> Decl | None:
        for block in reversed(stack):
            if block.decl is not None:
                return block.decl
        return None

    def in_class_body() -> bool:
        return bool(stack) and stack[-1].decl is not None and stack[-1].decl.kind is DeclKind.CLASS

    def flush_statement() -> tuple[str, int | None]:
        text_value = " ".join(statement)
        start = statement_start
        statement.clear()
        return text_value, start

    def note_statement(fragment: str, line_no: int) -> None:
        nonlocal statement_start
        if fragment.strip():
            if not statement:
                statement_start = line_no
            statement.append(fragment.strip())

    for line_no, raw in enumerate(masked, start=1):
        if in_class_body() and not statement:
            scala_field = _SCALA_VALVAR_RE.match(raw)
            if scala_field and "{" not in raw and "(" not in raw.split("=", 1)[0]:
                index.fields.append(
                    Decl(
                        name=scala_field.group(1),
                        kind=DeclKind.FIELD,
                        start_line=line_no,
                        end_line=line_no,
                        declaration_line=line_no,
                        enclosing=enclosing_decl(),
                    )
                )
                continue

        seg_start = 0
        for col, ch in enumerate(raw):
            if ch == "{":
                note_statement(raw[seg_start:col], line_no)
                signature, start = flush_statement()
                parent = enclosing_decl()
                classified = _classify_signature(signature, parent)
                decl = None
                if classified is not None:
                    kind, name = classified
                    decl = Decl(
                        name=name,
                        kind=kind,
                        start_line=start or line_no,
                        end_line=line_no,
                        declaration_line=start or line_no,
                        enclosing=parent,
                    )
                stack.append(_Block(decl))
                seg_start = col + 1
            elif ch == "}":
                note_statement(raw[seg_start:col], line_no)
                flush_statement()
                if stack:
                    block = stack.pop()
                    if block.decl is not None:
                        block.decl.end_line = line_no
                        if block.decl.kind is DeclKind.CLASS:
                            index.classes.append(block.decl)
                        else:
                            index.methods.append(block.decl)
                seg_start = col + 1
            elif ch == ";":
                note_statement(raw[seg_start : col + 1], line_no)
                stmt, start = flush_statement()
                if in_class_body():
                    name = _field_name(stmt)
                    if name:
                        index.fields.append(
                            Decl(
                                name=name,
                                kind=DeclKind.FIELD,
                                start_line=start or line_no,
                                end_line=line_no,
                                declaration_line=start or line_no,
                                enclosing=enclosing_decl(),
                            )
                        )
                seg_start = col + 1
        note_statement(raw[seg_start:], line_no)

    # Unbalanced blocks at EOF are dropped: we cannot bracket them.
    index.classes.sort(key=lambda d: (d.start_line, -d.end_line))
    index.methods.sort(key=lambda d: (d.start_line, -d.end_line))
    index.fields.sort(key=lambda d: d.start_line)
    return index


def _simple_names(qualified: str) -> list[str]:
    if not qualified:
        return []
    names = [qualified]
    dotted = qualified.split(".")[-1]
    if dotted != qualified:
        names.append(dotted)
    nested = dotted.split("$")[-1]
    if nested and nested not in names:
        names.append(nested)
    return names


def _innermost(decls: list[Decl], line: int) -> Decl | None:
    containing = [d for d in decls if d.contains(line)]
    if not containing:
        return None
    return max(containing, key=lambda d: (d.start_line, -d.end_line))


def locate_context(w, pre_index: DeclIndex) -> tuple[Decl | None, Decl | None, Decl | None]:
    """Resolve the class, method and field declarations for a warning.

    Name matches win; containment of the warning's start line is the fallback
    (and the tiebreak among same-named declarations).  Absent matches yield
    ``None`` rather than errors.
    """
    cls: Decl | None = None
    if w.class_name:
        wanted = _simple_names(w.class_name)
        named = [d for d in pre_index.classes if d.name in wanted]
        if named:
            containing = [d for d in named if d.contains(w.start_line)]
            pool = containing or named
            cls = max(pool, key=lambda d: (d.start_line, -d.end_line))
    if cls is None:
        cls = _innermost(pre_index.classes, w.start_line)

    mth: Decl | None = None
    if w.method_name:
        named = [
            d
            for d in pre_index.methods
            if d.name == w.method_name and d.contains(w.start_line)
        ]
        if named:
            mth = max(named, key=lambda d: (d.start_line, -d.end_line))
    if mth is None:
        mth = _innermost(pre_index.methods, w.start_line)

    fld: Decl | None = None
    if w.field_name and cls is not None:
        for d in pre_index.fields:
            if d.name == w.field_name and cls.contains(d.start_line):
                fld = d
                break

    return cls, mth, fld
