"""Per-paper metric table shared by the contribution and analytics stages."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputFormatError

METRICS = ("citations", "readers", "contribution")
TABLE_HEADER = ("doi", "citations", "readers", "contribution")


def fmt_real(x: float) -> str:
    """Render a real with 12 significant digits."""
    return format(x, ".12g")


def write_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_real(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


@dataclass(frozen=True)
class MetricRow:
    doi: str
    citations: int
    readers: int
    contribution: float | None = None

    def get(self, metric: str) -> float | None:
        if metric not in METRICS:
            raise KeyError(f"unknown metric {metric!r}")
        return getattr(self, metric)


@dataclass(frozen=True)
class MetricTable:
    rows: tuple[MetricRow, ...] = ()

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def column(self, metric: str) -> list:
        return [row.get(metric) for row in self.rows]

    def defined(self) -> "MetricTable":
        """Rows with a defined contribution score."""
        return MetricTable(tuple(r for r in self.rows if r.contribution is not None))

    def to_csv(self) -> str:
        return write_csv(
            TABLE_HEADER,
            (
                (r.doi, r.citations, r.readers, "" if r.contribution is None else r.contribution)
                for r in self.rows
            ),
        )

    @classmethod
    def from_csv(cls, text: str) -> "MetricTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or tuple(header) != TABLE_HEADER:
            raise InputFormatError(f"metric table header must be {','.join(TABLE_HEADER)}")
        rows = []
        for lineno, fields in enumerate(reader, start=2):
            if len(fields) != 4:
                raise InputFormatError(f"line {lineno}: expected 4 fields, got {len(fields)}")
            try:
                contribution = float(fields[3]) if fields[3] else None
                row = MetricRow(fields[0], int(fields[1]), int(fields[2]), contribution)
            except ValueError as exc:
                raise InputFormatError(f"line {lineno}: {exc}") from exc
            if row.citations < 0 or row.readers < 0:
                raise InputFormatError(f"line {lineno}: negative count")
            if contribution is not None and not math.isfinite(contribution):
                raise InputFormatError(f"line {lineno}: non-finite contribution")
            rows.append(row)
        return cls(tuple(rows))
