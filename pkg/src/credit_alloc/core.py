"""Publication credit totals and their distribution across an author list.

The credit pool for a single paper is a base share of the institutional
amount plus a bonus that grows as the journal's rank fraction shrinks
(rank 1 of many pays the most, rank == total pays only the base).  The
pool is then split over the ordered author list by one of four schemes:

* ``equal``            - every author gets the same share.
* ``harmonic``         - author i gets a share proportional to 1/i,
                         normalised so the shares sum to 1.
* ``cantor``           - author i gets 2^(i-1)/3^i, the middle-thirds
                         geometric succession; the shares sum to
                         1 - (2/3)^n, so part of the pool is withheld.
* ``adjusted-cantor``  - the geometric succession plus the withheld
                         residual returned in equal parts, so the full
                         pool is distributed again.

Everything here is a pure function of its inputs; all types are
immutable and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, unique

#: Hard cap on supported author counts.  Harmonic shares are computed by
#: direct summation, which keeps the error analysis trivial at this size.
MAX_AUTHORS = 10_000

_TWO_THIRDS = 2.0 / 3.0


@dataclass(frozen=True)
class CreditPolicy:
    """Institutional payout parameters.

    ``total`` is the full amount available for one paper (monetary
    units, > 0).  ``base_share`` is the proportion of it paid out
    regardless of journal rank (in [0, 1]); the remainder is scaled by
    journal standing.
    """

    total: float
    base_share: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.total) and self.total > 0):
            raise ValueError("total credit must be positive and finite")
        if not 0.0 <= self.base_share <= 1.0:
            raise ValueError("base share must lie in [0, 1]")


@dataclass(frozen=True)
class RankFraction:
    """A journal's rank quotient, in (0, 1]; lower means more prestigious.

    Either built from an explicit quotient (as printed in ranking
    reports, often rounded) or from a (rank, total) pair, in which case
    ``value`` is the full-precision quotient.  ``rank``/``total`` are
    kept for provenance.
    """

    value: float
    rank: int | None = None
    total: int | None = None

    def __post_init__(self) -> None:
        if (self.rank is None) != (self.total is None):
            raise ValueError("rank and total must be given together")
        if self.rank is not None:
            if self.rank < 1:
                raise ValueError("rank must be at least 1")
            if self.total < self.rank:
                raise ValueError("rank cannot exceed the journal total")
            if self.value != self.rank / self.total:
                raise ValueError("rank fraction does not match rank/total")
        if not 0.0 < self.value <= 1.0:
            raise ValueError("rank fraction must lie in (0, 1]")

    @classmethod
    def explicit(cls, value: float) -> "RankFraction":
        """Wrap an already-known quotient, e.g. one quoted in a report."""
        return cls(value)

    @classmethod
    def from_rank(cls, rank: int, total: int) -> "RankFraction":
        """Build the full-precision quotient rank/total."""
        if total < 1:
            raise ValueError("journal total must be at least 1")
        return cls(rank / total, rank, total)

    @property
    def source(self) -> str:
        return "explicit" if self.rank is None else "quotient"


@unique
class WeightScheme(Enum):
    """How the credit pool is split across the ordered author list."""

    EQUAL = "equal"
    HARMONIC = "harmonic"
    CANTOR = "cantor"
    ADJUSTED_CANTOR = "adjusted-cantor"


@dataclass(frozen=True)
class WeightVector:
    """Ordered per-author shares; index i (1-based) is author position."""

    n: int
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("empty author list")
        if len(self.weights) != self.n:
            raise ValueError("weight count does not match author count")
        if any(not w > 0.0 for w in self.weights):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class AllocationReport:
    """Unrounded allocation result.

    ``amounts`` are per-author monetary amounts in author order.
    ``epsilon`` is the withheld residual: positive for the plain
    geometric scheme (whose shares do not sum to 1), echoed for the
    adjusted scheme (where it has been folded back into the amounts),
    and exactly 0.0 for the equal and harmonic schemes.
    """

    policy: CreditPolicy
    rank: RankFraction
    scheme: WeightScheme
    total_credit: float
    amounts: tuple[float, ...]
    epsilon: float

    @property
    def n(self) -> int:
        return len(self.amounts)

    @property
    def weights(self) -> WeightVector:
        """The share succession behind this report's scheme."""
        return scheme_weights(self.scheme, self.n)


def total_credit(policy: CreditPolicy, rank: RankFraction) -> float:
    """Total pool for one paper: base share plus rank-scaled bonus.

    Always within [0, policy.total]; equals ``policy.total`` when the
    base share is 1, and 0 when the base share is 0 and the journal
    sits at the bottom of its field.
    """
    bonus = (1.0 - policy.base_share) * (1.0 - rank.value) * policy.total
    pool = policy.base_share * policy.total + bonus
    # one-ulp guard: the two rounded terms may overshoot the exact bound
    return min(pool, policy.total)


def _check_author_count(n: int) -> None:
    if n < 1:
        raise ValueError("empty author list")
    if n > MAX_AUTHORS:
        raise ValueError("author count exceeds supported maximum")


def equal_weights(n: int) -> WeightVector:
    """Uniform shares 1/n."""
    _check_author_count(n)
    return WeightVector(n, (1.0 / n,) * n)


def harmonic_weights(n: int) -> WeightVector:
    """Shares proportional to 1/i, normalised to sum to 1.

    Strictly decreasing for n >= 2.  The share at a fixed position
    shrinks as authors are added, since the normaliser grows.
    """
    _check_author_count(n)
    norm = math.fsum(1.0 / j for j in range(1, n + 1))
    return WeightVector(n, tuple((1.0 / i) / norm for i in range(1, n + 1)))


def cantor_weights(n: int) -> WeightVector:
    """Middle-thirds geometric shares 2^(i-1)/3^i, summing to 1 - (2/3)^n.

    The first share is always 1/3, independent of the author count, and
    consecutive shares shrink by a factor of exactly 2/3.
    """
    _check_author_count(n)
    # built by repeated multiplication: this keeps the consecutive-ratio
    # property exact in floating point, which evaluating 2**(i-1)/3**i
    # per term does not
    shares: list[float] = []
    share = 1.0 / 3.0
    for _ in range(n):
        shares.append(share)
        share *= _TWO_THIRDS
    return WeightVector(n, tuple(shares))


def scheme_weights(scheme: WeightScheme, n: int) -> WeightVector:
    """Share succession for a scheme; the adjusted variant reuses the
    geometric one, since its correction acts on amounts, not shares."""
    if scheme is WeightScheme.EQUAL:
        return equal_weights(n)
    if scheme is WeightScheme.HARMONIC:
        return harmonic_weights(n)
    return cantor_weights(n)


def residual_epsilon(total_credit: float, cantor: WeightVector) -> float:
    """Credit withheld by the geometric succession: pool * (1 - sum of shares).

    ``cantor`` must come from :func:`cantor_weights`, whose shares sum
    to 1 - (2/3)^n; the closed form below avoids the cancellation that
    would flush small residuals to zero.  Always >= 0, vanishing as the
    author count grows.
    """
    return total_credit * _TWO_THIRDS ** cantor.n


def allocate(
    policy: CreditPolicy,
    rank: RankFraction,
    n: int,
    scheme: WeightScheme,
) -> AllocationReport:
    """Compute the credit pool and split it over ``n`` authors.

    For the equal, harmonic and plain geometric schemes each author
    gets share * pool.  The adjusted geometric scheme adds the withheld
    residual back in equal parts, so the amounts sum to the full pool.
    """
    pool = total_credit(policy, rank)
    vector = scheme_weights(scheme, n)
    if scheme is WeightScheme.ADJUSTED_CANTOR:
        epsilon = residual_epsilon(pool, vector)
        top_up = epsilon / n
        amounts = tuple(w * pool + top_up for w in vector.weights)
    elif scheme is WeightScheme.CANTOR:
        epsilon = residual_epsilon(pool, vector)
        amounts = tuple(w * pool for w in vector.weights)
    else:
        epsilon = 0.0
        amounts = tuple(w * pool for w in vector.weights)
    return AllocationReport(
        policy=policy,
        rank=rank,
        scheme=scheme,
        total_credit=pool,
        amounts=amounts,
        epsilon=epsilon,
    )
