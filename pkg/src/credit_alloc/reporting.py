"""Payout tables, machine-readable exports and figure-data grids.

Rounding uses largest-remainder apportionment so the per-author minor
unit counts always sum exactly to the independently rounded scheme
total.  The quantisation runs on exact rationals derived from the
double-precision amounts; the allocation engine itself stays in
doubles.  All renderers are deterministic: identical inputs give
byte-identical text.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .core import (
    AllocationReport,
    CreditPolicy,
    RankFraction,
    WeightScheme,
    cantor_weights,
    harmonic_weights,
    scheme_weights,
    total_credit,
)


@dataclass(frozen=True)
class RoundingPolicy:
    """Currency quantum, e.g. 0.01 for cents or 1 for whole units.

    The strategy is fixed: largest-remainder apportionment with ties
    broken in favour of earlier authors.
    """

    minor_unit: float = 0.01

    def __post_init__(self) -> None:
        if not (math.isfinite(self.minor_unit) and self.minor_unit > 0):
            raise ValueError("minor unit must be positive and finite")


@dataclass(frozen=True)
class RoundedReport:
    """Minor-unit payout counts that sum exactly to ``total_minor``.

    ``total_minor`` is the independently rounded distributable total:
    the full pool for the equal, harmonic and adjusted schemes, and the
    pool minus the withheld residual for the plain geometric scheme.
    """

    policy: CreditPolicy
    rank: RankFraction
    scheme: WeightScheme
    minor_unit: float
    amounts_minor: tuple[int, ...]
    total_minor: int
    epsilon: float

    @property
    def n(self) -> int:
        return len(self.amounts_minor)


@dataclass(frozen=True)
class SurfaceGrid:
    """Credit pool evaluated over a (base share, rank fraction) lattice."""

    total: float
    p_values: tuple[float, ...]
    r_values: tuple[float, ...]
    q_values: tuple[tuple[float, ...], ...]


def _round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def round_allocations(
    report: AllocationReport, policy: RoundingPolicy
) -> RoundedReport:
    """Quantise a report to minor units without losing or inventing any.

    Each amount is floored to minor units; the shortfall against the
    rounded distributable total is then handed out one unit at a time
    to the largest fractional remainders, earlier authors first on
    ties.  Every rounded amount stays within one minor unit of its
    unrounded value.
    """
    unit = Fraction(str(policy.minor_unit))
    if report.scheme is WeightScheme.CANTOR:
        distributable = report.total_credit - report.epsilon
    else:
        distributable = report.total_credit
    counts = [Fraction(amount) / unit for amount in report.amounts]
    floors = [math.floor(c) for c in counts]
    remainders = [c - f for c, f in zip(counts, floors)]
    total_minor = _round_half_up(Fraction(distributable) / unit)
    shortfall = total_minor - sum(floors)
    order = sorted(range(report.n), key=lambda i: (-remainders[i], i))
    minor = list(floors)
    if shortfall >= 0:
        for j in range(shortfall):
            minor[order[j % report.n]] += 1
    else:
        # only reachable for hand-built reports whose amounts disagree
        # with the distributable total by more than half a minor unit
        giving = list(reversed(order))
        for j in range(-shortfall):
            minor[giving[j % report.n]] -= 1
    return RoundedReport(
        policy=report.policy,
        rank=report.rank,
        scheme=report.scheme,
        minor_unit=policy.minor_unit,
        amounts_minor=tuple(minor),
        total_minor=total_minor,
        epsilon=report.epsilon,
    )


def _quantum(minor_unit: float) -> Decimal:
    return Decimal(str(minor_unit))


def _amount_decimal(count: int, quantum: Decimal) -> Decimal:
    return Decimal(count) * quantum


def _epsilon_minor(report: RoundedReport) -> int:
    return _round_half_up(Fraction(report.epsilon) / Fraction(str(report.minor_unit)))


def render_report(
    report: RoundedReport, format: str = "table", include_weights: bool = True
) -> str:
    """Render a rounded report as an aligned table, CSV or JSON.

    The table and CSV forms list one row per author plus a totals row;
    the plain geometric scheme adds a line for the undistributed
    residual.  Weights print to three decimals, amounts at minor-unit
    precision.
    """
    if format == "table":
        return _render_table(report, include_weights)
    if format == "csv":
        return _render_csv(report, include_weights)
    if format == "json":
        return _render_json(report)
    raise ValueError(f"unknown report format: {format!r}")


def _report_cells(
    report: RoundedReport,
) -> tuple[list[str], list[Decimal], str, Decimal, Decimal | None]:
    quantum = _quantum(report.minor_unit)
    weights = scheme_weights(report.scheme, report.n).weights
    weight_cells = [f"{w:.3f}" for w in weights]
    weight_total = f"{math.fsum(weights):.3f}"
    amounts = [_amount_decimal(c, quantum) for c in report.amounts_minor]
    amount_total = _amount_decimal(report.total_minor, quantum)
    residual = None
    if report.scheme is WeightScheme.CANTOR:
        residual = _amount_decimal(_epsilon_minor(report), quantum)
    return weight_cells, amounts, weight_total, amount_total, residual


def _render_table(report: RoundedReport, include_weights: bool) -> str:
    weight_cells, amounts, weight_total, amount_total, residual = _report_cells(report)
    rows = [
        (str(i + 1), weight_cells[i], format(amounts[i], ","))
        for i in range(report.n)
    ]
    rows.append(("total", weight_total, format(amount_total, ",")))
    if residual is not None:
        rows.append(("undistributed", "", format(residual, ",")))
    header = ("author", "weight", "amount")
    if not include_weights:
        header = ("author", "amount")
        rows = [(r[0], r[2]) for r in rows]
    table = [header, *rows]
    widths = [max(len(row[col]) for row in table) for col in range(len(header))]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])]
        cells += [row[col].rjust(widths[col]) for col in range(1, len(header))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(report: RoundedReport, include_weights: bool) -> str:
    weight_cells, amounts, weight_total, amount_total, residual = _report_cells(report)
    rows = [
        (str(i + 1), weight_cells[i], str(amounts[i]))
        for i in range(report.n)
    ]
    rows.append(("total", weight_total, str(amount_total)))
    if residual is not None:
        rows.append(("undistributed", "", str(residual)))
    header = ("author", "weight", "amount")
    if not include_weights:
        header = ("author", "amount")
        rows = [(r[0], r[2]) for r in rows]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _render_json(report: RoundedReport) -> str:
    quantum = _quantum(report.minor_unit)
    weights = scheme_weights(report.scheme, report.n).weights
    payload = {
        "inputs": {
            "total": report.policy.total,
            "base_share": report.policy.base_share,
            "rank_fraction": report.rank.value,
            "authors": report.n,
            "scheme": report.scheme.value,
            "minor_unit": report.minor_unit,
        },
        "weights": list(weights),
        "amounts": [
            float(_amount_decimal(c, quantum)) for c in report.amounts_minor
        ],
        "total": float(_amount_decimal(report.total_minor, quantum)),
        "epsilon": report.epsilon,
    }
    return json.dumps(payload, indent=2) + "\n"


def surface_grid(total: float, p_steps: int, r_steps: int) -> SurfaceGrid:
    """Evaluate the credit pool on uniform base-share and rank grids.

    Base shares span [0, 1] over ``p_steps`` points; rank fractions
    span (0, 1] over ``r_steps`` points starting at 1/r_steps.
    """
    if p_steps < 2 or r_steps < 2:
        raise ValueError("step counts must be at least 2")
    if not (math.isfinite(total) and total > 0):
        raise ValueError("total credit must be positive and finite")
    p_values = tuple(k / (p_steps - 1) for k in range(p_steps))
    r_values = tuple(m / r_steps for m in range(1, r_steps + 1))
    q_values = tuple(
        tuple(
            total_credit(CreditPolicy(total, p), RankFraction.explicit(r))
            for r in r_values
        )
        for p in p_values
    )
    return SurfaceGrid(total, p_values, r_values, q_values)


def _plain_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def render_surface_grid(grid: SurfaceGrid) -> str:
    """CSV with rank fractions across the first row and base shares down
    the first column."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + [_plain_number(r) for r in grid.r_values])
    for p, row in zip(grid.p_values, grid.q_values):
        writer.writerow([_plain_number(p)] + [_plain_number(q) for q in row])
    return buffer.getvalue()


def weight_comparison(n: int) -> tuple[tuple[int, float, float], ...]:
    """Per-position harmonic and geometric shares, side by side.

    For 20 authors the two successions cross near position 6: the
    geometric one pays the front of the list more, the harmonic one
    pays the tail more.
    """
    harmonic = harmonic_weights(n).weights
    cantor = cantor_weights(n).weights
    return tuple((i + 1, harmonic[i], cantor[i]) for i in range(n))


def render_weight_comparison(rows: tuple[tuple[int, float, float], ...]) -> str:
    """Full-precision CSV of a weight comparison, ready for plotting."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("author", "harmonic", "cantor"))
    for index, harmonic, cantor in rows:
        writer.writerow((str(index), repr(harmonic), repr(cantor)))
    return buffer.getvalue()
