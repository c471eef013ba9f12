"""JSON brace files and report documents.

Brace files hold both Cayley tables row-major. Serialization is canonical
(sorted keys, compact separators, trailing newline) so that a write/read/write
cycle reproduces the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

import numpy as np

from .brace import SkewBrace, build_brace
from .errors import BraceForgeError, DomainError
from .groups import GroupTable, validate_group

FORMAT_VERSION = 1
SCHEMA_VERSION = 1


class FileFormatError(BraceForgeError):
    """The file could not be parsed into a well-formed brace file."""


@dataclass
class BraceFile:
    order: int
    dot_table: list[int]
    circle_table: list[int]
    label: str = ""
    provenance: dict[str, Any] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_brace(cls, br: SkewBrace, provenance: Optional[Mapping[str, Any]] = None) -> "BraceFile":
        return cls(
            order=br.order,
            dot_table=br.dot.mul.reshape(-1).tolist(),
            circle_table=br.circle.mul.reshape(-1).tolist(),
            label=br.label,
            provenance=dict(provenance or {}),
        )

    def to_dict(self) -> dict:
        d = {
            "format_version": self.format_version,
            "order": self.order,
            "label": self.label,
            "dot_table": self.dot_table,
            "circle_table": self.circle_table,
        }
        if self.provenance:
            d["provenance"] = self.provenance
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def subsets(self) -> dict[str, list[int]]:
        return dict(self.provenance.get("subsets", {}))

    def tables(self) -> tuple[GroupTable, GroupTable]:
        n = self.order
        dot = GroupTable.from_mul(np.array(self.dot_table, dtype=np.intp).reshape(n, n), f"{self.label}:dot")
        circle = GroupTable.from_mul(np.array(self.circle_table, dtype=np.intp).reshape(n, n), f"{self.label}:circle")
        return dot, circle

    def to_brace(self) -> SkewBrace:
        """Full validation: both group axioms, then the brace relation."""
        dot, circle = self.tables()
        for name, g in (("dot", dot), ("circle", circle)):
            report = validate_group(g)
            if not report:
                raise DomainError(f"{name} table: {report.axiom} fails", report.witness)
        return build_brace(dot, circle, self.label, check_groups=False)


def _int_list(doc: Mapping, key: str) -> list[int]:
    seq = doc.get(key)
    if not isinstance(seq, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in seq):
        raise FileFormatError(f"{key} must be a list of integers")
    return seq


def loads(text: str) -> BraceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {version!r}")
    order = doc.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise FileFormatError("order must be a positive integer")
    dot, circle = _int_list(doc, "dot_table"), _int_list(doc, "circle_table")
    for key, seq in (("dot_table", dot), ("circle_table", circle)):
        if len(seq) != order * order:
            raise FileFormatError(f"{key} has {len(seq)} entries, expected {order * order}")
        bad = next((i for i, x in enumerate(seq) if not 0 <= x < order), None)
        if bad is not None:
            raise FileFormatError(f"{key}[{bad}] = {seq[bad]} out of range")
    label = doc.get("label", "")
    provenance = doc.get("provenance", {})
    if not isinstance(label, str) or not isinstance(provenance, dict):
        raise FileFormatError("label must be a string and provenance an object")
    return BraceFile(order, dot, circle, label, provenance, version)


def read(path: str | Path) -> BraceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def report_document(command: list[str], checks: list[dict], elapsed_ms: int, **extra: Any) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "checks": checks, "elapsed_ms": elapsed_ms}
    doc.update(extra)
    return doc
