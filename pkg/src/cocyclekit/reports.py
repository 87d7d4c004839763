"""Deterministic report documents.

A report is an ordered list of key-value entries plus at most one table.
Serialization is byte-identical for identical inputs: entry order is
fixed by the producing command, floats go through repr, and every report
names the tool version, the sha256 of the input text, and the tolerances
in force.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field

from .errors import InputError

TOOL_VERSION = "0.1.0"

FORMATS = ("structured", "csv")


def sha256_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class Report:
    command: str
    digest: str
    entries: list[tuple[str, str]] = field(default_factory=list)
    columns: tuple[str, ...] | None = None
    rows: list[tuple[str, ...]] = field(default_factory=list)

    def add(self, key: str, value) -> None:
        self.entries.append((key, str(value)))

    def set_table(self, columns, rows) -> None:
        self.columns = tuple(columns)
        self.rows = [tuple(str(c) for c in row) for row in rows]


def emit_report(report: Report, fmt: str = "structured") -> bytes:
    if fmt == "structured":
        lines = [
            f"tool: cocyclekit {TOOL_VERSION}",
            f"command: {report.command}",
            f"input-sha256: {report.digest}",
        ]
        lines += [f"{key}: {value}" for key, value in report.entries]
        if report.columns is not None:
            lines.append("table.columns: " + ",".join(report.columns))
            for i, row in enumerate(report.rows):
                lines.append(f"table.row.{i}: " + ",".join(row))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if report.columns is not None:
            writer.writerow(report.columns)
            writer.writerows(report.rows)
        else:
            writer.writerow(("key", "value"))
            writer.writerows(report.entries)
        return buf.getvalue().encode("utf-8")
    raise InputError(f"unknown report format {fmt!r}; expected one of {FORMATS}")
