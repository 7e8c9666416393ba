"""Validation report: ordered, machine-readable problem list.

A document is valid iff its report has no error-severity item. Reports are
canonically ordered by (document, path, code, message) so identical inputs
always produce byte-identical serialized reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class ReportItem:
    severity: str   # "error" | "warning"
    code: str
    path: str       # document pointer, e.g. data_chains[0].num_data_source_chains
    message: str
    document: str = ""  # "<kind>/<id>" when validating multiple documents

    def format(self) -> str:
        doc = f"[{self.document}] " if self.document else ""
        where = f" at {self.path}" if self.path else ""
        return f"{self.severity}: {doc}{self.code}{where}: {self.message}"


@dataclass
class ValidationReport:
    items: list[ReportItem] = field(default_factory=list)

    def add(self, severity: str, code: str, path: str, message: str,
            document: str = "") -> None:
        self.items.append(ReportItem(severity, code, path, message, document))

    def error(self, code: str, path: str, message: str, document: str = "") -> None:
        self.add("error", code, path, message, document)

    def warning(self, code: str, path: str, message: str, document: str = "") -> None:
        self.add("warning", code, path, message, document)

    def extend(self, other: "ValidationReport") -> None:
        self.items.extend(other.items)

    def errors(self) -> list[ReportItem]:
        return [i for i in self.items if i.severity == "error"]

    def warnings(self) -> list[ReportItem]:
        return [i for i in self.items if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors()

    def sorted(self) -> "ValidationReport":
        return ValidationReport(sorted(
            self.items, key=lambda i: (i.document, i.path, i.code, i.message)))

    def to_text(self) -> str:
        rep = self.sorted()
        lines = [item.format() for item in rep.items]
        lines.append(f"{len(self.errors())} errors, {len(self.warnings())} warnings")
        return "\n".join(lines)

    def to_json(self) -> str:
        rep = self.sorted()
        payload = {
            "valid": self.ok,
            "errors": len(self.errors()),
            "warnings": len(self.warnings()),
            "items": [
                {
                    "severity": i.severity,
                    "code": i.code,
                    "path": i.path,
                    "document": i.document,
                    "message": i.message,
                }
                for i in rep.items
            ],
        }
        return json.dumps(payload, indent=2)
