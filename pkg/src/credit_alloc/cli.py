"""Command-line front end: one invocation computes one payout report.

Exit codes: 0 on success, 2 for argument problems, 3 for ranking-file
problems (unreadable, malformed, or journal not found).  Data goes to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .core import CreditPolicy, RankFraction, WeightScheme, allocate
from .rankings import RankingError, parse_ranking_table, rank_fraction
from .reporting import (
    RoundingPolicy,
    render_report,
    render_surface_grid,
    round_allocations,
    surface_grid,
)

CONFIG_ENV_VAR = "CREDIT_ALLOC_CONFIG"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RANKING = 3

SCHEME_NAMES = {
    "equal": WeightScheme.EQUAL,
    "harmonic": WeightScheme.HARMONIC,
    "hci": WeightScheme.HARMONIC,
    "cantor": WeightScheme.CANTOR,
    "csi": WeightScheme.CANTOR,
    "acsi": WeightScheme.ADJUSTED_CANTOR,
    "adjusted-cantor": WeightScheme.ADJUSTED_CANTOR,
}

OUTPUT_FORMATS = ("table", "csv", "json")

# config-file keys, normalised to underscores; mirrors the long options
CONFIG_KEYS = (
    "t", "p", "r", "rank", "total", "ranking_file", "field", "journal",
    "authors", "scheme", "minor_unit", "format", "show_weights",
)


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


@dataclass(frozen=True)
class CliConfig:
    """Fully resolved invocation: flags merged over config over defaults."""

    t: float
    p: float
    authors: int
    scheme: WeightScheme
    minor_unit: float
    output_format: str
    show_weights: bool
    r: float | None
    rank: int | None
    total: int | None
    ranking_file: str | None
    field: str | None
    journal: str | None

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise CliError("t must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise CliError("p must lie in [0, 1]")
        if self.authors < 1:
            raise CliError("author count must be at least 1")
        if not self.minor_unit > 0:
            raise CliError("minor unit must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise CliError(f"unknown output format: {self.output_format!r}")
        sources = [
            self.r is not None,
            self.rank is not None or self.total is not None,
            any(v is not None for v in (self.ranking_file, self.field, self.journal)),
        ]
        if sum(sources) > 1:
            raise CliError(
                "conflicting rank sources: give only one of --r, "
                "--rank/--total, or --ranking-file/--field/--journal"
            )
        if not any(sources):
            raise CliError(
                "no rank source: give --r, --rank/--total, "
                "or --ranking-file/--field/--journal"
            )
        if sources[1] and (self.rank is None or self.total is None):
            raise CliError("--rank and --total must be given together")
        if sources[2] and None in (self.ranking_file, self.field, self.journal):
            raise CliError(
                "--ranking-file, --field and --journal must be given together"
            )

    def resolve_rank(self) -> RankFraction:
        if self.r is not None:
            try:
                return RankFraction.explicit(self.r)
            except ValueError as exc:
                raise CliError(str(exc)) from None
        if self.rank is not None:
            try:
                return RankFraction.from_rank(self.rank, self.total)
            except ValueError as exc:
                raise CliError(str(exc)) from None
        try:
            with open(self.ranking_file, encoding="utf-8") as handle:
                fmt = "json" if self.ranking_file.endswith(".json") else "csv"
                table = parse_ranking_table(handle, fmt)
            return rank_fraction(table, self.field, self.journal)
        except OSError as exc:
            raise CliError(f"cannot read ranking file: {exc}", EXIT_RANKING) from None
        except RankingError as exc:
            raise CliError(str(exc), EXIT_RANKING) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credit-alloc",
        description="Compute a paper's credit pool and split it across "
        "its ordered author list.",
    )
    parser.add_argument("--t", type=float, help="total credit available for the paper")
    parser.add_argument("--p", type=float, help="base share paid regardless of rank (default 0.5)")
    parser.add_argument("--r", type=float, help="explicit journal rank fraction in (0, 1]")
    parser.add_argument("--rank", type=int, help="journal rank within its field")
    parser.add_argument("--total", type=int, help="number of journals in the field")
    parser.add_argument("--ranking-file", help="CSV or JSON ranking table to look the journal up in")
    parser.add_argument("--field", help="subject field for the ranking-file lookup")
    parser.add_argument("--journal", help="journal name for the ranking-file lookup")
    parser.add_argument("--authors", type=int, help="number of authors, in list order")
    parser.add_argument(
        "--scheme",
        choices=sorted(SCHEME_NAMES),
        help="weighting scheme (default acsi)",
    )
    parser.add_argument("--minor-unit", type=float, help="currency quantum (default 0.01)")
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        dest="output_format",
        help="output format (default table)",
    )
    parser.add_argument(
        "--show-weights",
        action="store_true",
        default=None,
        help="print the per-author weight column alongside amounts",
    )
    parser.add_argument(
        "--config",
        help=f"key=value policy file; falls back to ${CONFIG_ENV_VAR}",
    )
    subcommands = parser.add_subparsers(dest="command")
    grid = subcommands.add_parser(
        "grid", help="emit the credit-pool surface over (p, r) as CSV"
    )
    grid.add_argument("--t", type=float, required=True, help="total credit")
    grid.add_argument("--p-steps", type=int, required=True, help="grid points for p in [0, 1]")
    grid.add_argument("--r-steps", type=int, required=True, help="grid points for r in (0, 1]")
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from None
    values: dict[str, str] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{number}: expected key = value")
        key = key.strip().lower().replace("-", "_")
        value = value.strip()
        if value[:1] in ("'", '"'):
            closing = value.find(value[0], 1)
            if closing == -1:
                raise CliError(f"{path}:{number}: unterminated quote")
            value = value[1:closing]
        else:
            value = value.split("#", 1)[0].strip()
        if key not in CONFIG_KEYS:
            raise CliError(f"{path}:{number}: unknown config key {key!r}")
        values[key] = value
    return values


def _convert(key: str, raw: str):
    try:
        if key in ("t", "p", "r", "minor_unit"):
            return float(raw)
        if key in ("rank", "total", "authors"):
            return int(raw)
        if key == "scheme":
            return _parse_scheme(raw)
        if key == "format":
            if raw not in OUTPUT_FORMATS:
                raise ValueError(f"unknown output format: {raw!r}")
            return raw
        if key == "show_weights":
            lowered = raw.strip().lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"expected a boolean, got {raw!r}")
        return raw
    except ValueError as exc:
        raise CliError(f"config value {key} = {raw!r}: {exc}") from None


def _parse_scheme(name: str) -> WeightScheme:
    try:
        return SCHEME_NAMES[name.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown scheme {name!r}; choose from {', '.join(sorted(SCHEME_NAMES))}"
        ) from None


_RANK_SOURCE_KEYS = ("r", "rank", "total", "ranking_file", "field", "journal")


def _resolve_config(args: argparse.Namespace) -> CliConfig:
    config_path = args.config or os.environ.get(CONFIG_ENV_VAR)
    file_values: dict[str, str] = {}
    if args.config or (config_path and os.path.exists(config_path)):
        file_values = _load_config_file(config_path)

    merged: dict[str, object] = {}
    for key in CONFIG_KEYS:
        attr = "output_format" if key == "format" else key
        value = getattr(args, attr)
        if value is None and key in file_values:
            value = _convert(key, file_values[key])
        merged[attr] = value

    # a rank source given on the command line silences any source keys
    # from the config file instead of conflicting with them
    cli_sourced = any(
        getattr(args, key) is not None for key in _RANK_SOURCE_KEYS
    )
    if cli_sourced:
        for key in _RANK_SOURCE_KEYS:
            merged[key] = getattr(args, key)

    if merged["t"] is None:
        raise CliError("--t is required")
    if merged["authors"] is None:
        raise CliError("--authors is required")
    if isinstance(merged["scheme"], str):
        try:
            merged["scheme"] = _parse_scheme(merged["scheme"])
        except ValueError as exc:
            raise CliError(str(exc)) from None
    if merged["p"] is None:
        merged["p"] = 0.5
    if merged["scheme"] is None:
        merged["scheme"] = WeightScheme.ADJUSTED_CANTOR
    if merged["minor_unit"] is None:
        merged["minor_unit"] = 0.01
    if merged["output_format"] is None:
        merged["output_format"] = "table"
    if merged["show_weights"] is None:
        merged["show_weights"] = False
    return CliConfig(**merged)


def _run_allocation(args: argparse.Namespace) -> str:
    config = _resolve_config(args)
    rank = config.resolve_rank()
    try:
        policy = CreditPolicy(config.t, config.p)
        report = allocate(policy, rank, config.authors, config.scheme)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    rounded = round_allocations(report, RoundingPolicy(config.minor_unit))
    return render_report(
        rounded, config.output_format, include_weights=config.show_weights
    )


def _run_grid(args: argparse.Namespace) -> str:
    try:
        grid = surface_grid(args.t, args.p_steps, args.r_steps)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    return render_surface_grid(grid)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "grid":
            output = _run_grid(args)
        else:
            output = _run_allocation(args)
    except CliError as err:
        print(f"credit-alloc: {err}", file=sys.stderr)
        return err.exit_code
    sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
