"""Journal ranking tables: parsing, validation and rank-quotient lookup.

Tables arrive as CSV (fixed header ``field,journal,rank,total,
impact_factor``) or as a JSON array of objects with the same keys.
Parsing is strict and locale independent: the decimal separator is
always ``.`` and thousands separators are rejected.  The impact factor
is carried for display only; credit computation consumes rank/total.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, TextIO

from .core import RankFraction

CSV_HEADER = ("field", "journal", "rank", "total", "impact_factor")

_INT_RE = re.compile(r"[0-9]+")
# plain or scientific notation; commas, underscores and spaces all fail
_FLOAT_RE = re.compile(r"[0-9.]+(?:[eE][+-]?[0-9]+)?")


class RankingError(ValueError):
    """Malformed ranking input or a failed journal lookup."""


@dataclass(frozen=True)
class RankingEntry:
    """One journal's position within one subject field."""

    field_name: str
    journal_name: str
    rank: int
    total: int
    impact_factor: float

    def __post_init__(self) -> None:
        if not self.field_name.strip():
            raise ValueError("field name must be non-empty")
        if not self.journal_name.strip():
            raise ValueError("journal name must be non-empty")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if self.total < self.rank:
            raise ValueError("rank cannot exceed the journal total")
        if not (math.isfinite(self.impact_factor) and self.impact_factor >= 0):
            raise ValueError("impact factor must be non-negative")

    @property
    def key(self) -> tuple[str, str]:
        """Case-insensitive, whitespace-trimmed lookup key."""
        return (self.field_name.strip().lower(), self.journal_name.strip().lower())


class RankingTable:
    """Immutable collection of ranking entries, keyed by (field, journal).

    Keys are case-insensitive and whitespace-trimmed.  Partial tables
    are fine (ranks need not be contiguous), but all entries of one
    field must agree on the field's journal total.
    """

    def __init__(self, entries: Iterable[RankingEntry]):
        self.entries: tuple[RankingEntry, ...] = tuple(entries)
        index: dict[tuple[str, str], RankingEntry] = {}
        field_totals: dict[str, int] = {}
        for entry in self.entries:
            key = entry.key
            if key in index:
                raise RankingError(
                    f"duplicate ranking entry for field {entry.field_name!r}, "
                    f"journal {entry.journal_name!r}"
                )
            seen_total = field_totals.setdefault(key[0], entry.total)
            if seen_total != entry.total:
                raise RankingError(
                    f"inconsistent journal total in field {entry.field_name!r}: "
                    f"{seen_total} vs {entry.total}"
                )
            index[key] = entry
        self._index = index

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def lookup(self, field: str, journal: str) -> RankingEntry:
        """Find one journal's entry; raises with near-miss suggestions."""
        field_key = field.strip().lower()
        journal_key = journal.strip().lower()
        entry = self._index.get((field_key, journal_key))
        if entry is not None:
            return entry
        near = sorted(
            e.journal_name
            for e in self.entries
            if e.key[0] == field_key
            and (journal_key in e.key[1] or e.key[1] in journal_key)
            and journal_key
        )
        message = f"journal not found in field: {journal!r} in {field!r}"
        if near:
            message += "; close matches: " + ", ".join(repr(n) for n in near)
        raise RankingError(message)


def parse_ranking_table(source: str | TextIO, format: str = "csv") -> RankingTable:
    """Parse CSV or JSON ranking data into a validated table.

    ``source`` is the text itself or an open text stream.  Entirely
    empty input yields an empty table; anything else must carry the
    full schema.  Errors name the offending 1-based line or record.
    """
    text = source if isinstance(source, str) else source.read()
    if not text.strip():
        return RankingTable(())
    if format == "csv":
        entries = _parse_csv(text)
    elif format == "json":
        entries = _parse_json(text)
    else:
        raise ValueError(f"unknown ranking format: {format!r}")
    return RankingTable(entries)


def serialize_ranking_table(table: RankingTable, format: str = "csv") -> str:
    """Render a table back to CSV or JSON; parsing the result returns
    record-equivalent entries."""
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for e in table:
            writer.writerow(
                (e.field_name, e.journal_name, str(e.rank), str(e.total),
                 repr(e.impact_factor))
            )
        return buffer.getvalue()
    if format == "json":
        records = [
            {
                "field": e.field_name,
                "journal": e.journal_name,
                "rank": e.rank,
                "total": e.total,
                "impact_factor": e.impact_factor,
            }
            for e in table
        ]
        return json.dumps(records, indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown ranking format: {format!r}")


def rank_fraction(table: RankingTable, field: str, journal: str) -> RankFraction:
    """Resolve a journal to its full-precision rank quotient."""
    entry = table.lookup(field, journal)
    return RankFraction.from_rank(entry.rank, entry.total)


def _parse_positive_int(cell: str, what: str, where: str) -> int:
    cell = cell.strip()
    if not _INT_RE.fullmatch(cell):
        raise RankingError(f"{where}: {what} must be a positive integer, got {cell!r}")
    return int(cell)


def _parse_impact_factor(cell: str, where: str) -> float:
    cell = cell.strip()
    if not _FLOAT_RE.fullmatch(cell):
        raise RankingError(
            f"{where}: impact factor must be a non-negative number, got {cell!r}"
        )
    try:
        value = float(cell)
    except ValueError:
        raise RankingError(
            f"{where}: impact factor must be a non-negative number, got {cell!r}"
        ) from None
    if not (math.isfinite(value) and value >= 0):
        raise RankingError(f"{where}: impact factor out of range: {cell!r}")
    return value


def _build_entry(
    field: str, journal: str, rank: int, total: int, impact: float, where: str
) -> RankingEntry:
    try:
        return RankingEntry(field, journal, rank, total, impact)
    except ValueError as exc:
        raise RankingError(f"{where}: {exc}") from None


def _parse_csv(text: str) -> list[RankingEntry]:
    reader = csv.reader(io.StringIO(text, newline=""))
    entries: list[RankingEntry] = []
    header_seen = False
    for row in reader:
        if not row:
            continue
        where = f"line {reader.line_num}"
        if not header_seen:
            if tuple(c.strip() for c in row) != CSV_HEADER:
                raise RankingError(
                    f"{where}: expected header {','.join(CSV_HEADER)!r}, "
                    f"got {','.join(row)!r}"
                )
            header_seen = True
            continue
        if len(row) != len(CSV_HEADER):
            raise RankingError(
                f"{where}: expected {len(CSV_HEADER)} columns, got {len(row)}"
            )
        field, journal = row[0], row[1]
        rank = _parse_positive_int(row[2], "rank", where)
        total = _parse_positive_int(row[3], "total", where)
        impact = _parse_impact_factor(row[4], where)
        entries.append(_build_entry(field, journal, rank, total, impact, where))
    return entries


def _parse_json(text: str) -> list[RankingEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RankingError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise RankingError("expected a JSON array of ranking records")
    entries: list[RankingEntry] = []
    expected_keys = {"field", "journal", "rank", "total", "impact_factor"}
    for number, record in enumerate(data, start=1):
        where = f"record {number}"
        if not isinstance(record, dict):
            raise RankingError(f"{where}: expected an object")
        if set(record) != expected_keys:
            raise RankingError(
                f"{where}: expected exactly the keys "
                f"{sorted(expected_keys)}, got {sorted(record)}"
            )
        field, journal = record["field"], record["journal"]
        if not isinstance(field, str) or not isinstance(journal, str):
            raise RankingError(f"{where}: field and journal must be strings")
        rank, total = record["rank"], record["total"]
        for name, value in (("rank", rank), ("total", total)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise RankingError(f"{where}: {name} must be a positive integer")
        impact = record["impact_factor"]
        if isinstance(impact, bool) or not isinstance(impact, (int, float)):
            raise RankingError(f"{where}: impact factor must be a number")
        if not (math.isfinite(impact) and impact >= 0):
            raise RankingError(f"{where}: impact factor out of range")
        entries.append(_build_entry(field, journal, rank, total, float(impact), where))
    return entries
