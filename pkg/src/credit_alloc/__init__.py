"""Publication payout computation and per-author distribution."""

from .core import (
    MAX_AUTHORS,
    AllocationReport,
    CreditPolicy,
    RankFraction,
    WeightScheme,
    WeightVector,
    allocate,
    cantor_weights,
    equal_weights,
    harmonic_weights,
    residual_epsilon,
    scheme_weights,
    total_credit,
)
from .rankings import (
    RankingEntry,
    RankingError,
    RankingTable,
    parse_ranking_table,
    rank_fraction,
    serialize_ranking_table,
)
from .reporting import (
    RoundedReport,
    RoundingPolicy,
    SurfaceGrid,
    render_report,
    render_surface_grid,
    render_weight_comparison,
    round_allocations,
    surface_grid,
    weight_comparison,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_AUTHORS",
    "AllocationReport",
    "CreditPolicy",
    "RankFraction",
    "WeightScheme",
    "WeightVector",
    "allocate",
    "cantor_weights",
    "equal_weights",
    "harmonic_weights",
    "residual_epsilon",
    "scheme_weights",
    "total_credit",
    "RankingEntry",
    "RankingError",
    "RankingTable",
    "parse_ranking_table",
    "rank_fraction",
    "serialize_ranking_table",
    "RoundedReport",
    "RoundingPolicy",
    "SurfaceGrid",
    "render_report",
    "render_surface_grid",
    "render_weight_comparison",
    "round_allocations",
    "surface_grid",
    "weight_comparison",
    "__version__",
]
