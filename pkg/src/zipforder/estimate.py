"""Scale estimation from observed rank-count tables.

The decay exponent alpha is always user-supplied (chosen by inspecting the
log-log plot); only the scale N is estimated, either from the total count
via the zeta normalisation or locally per rank via N_i = X_i i^alpha.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterator, Sequence

from .bounds import threshold_n_prime
from .errors import DomainError
from .special import DEFAULT_PRECISION, Precision, hurwitz_zeta

__all__ = [
    "RankedCounts",
    "ScaleEstimates",
    "SensitivityRow",
    "SensitivityReport",
    "estimate_N_total",
    "local_scale_estimates",
    "sensitivity_sweep",
]


@dataclass(frozen=True)
class RankedCounts:
    """An ordered table of per-rank counts, rank i = position i (1-based).

    For observed data tables rank is defined by count order, so counts must
    be nonincreasing; construction rejects violations.  Draws from a count
    ensemble instead carry true-rank indexing where inversions are the
    object of study: they are built with ``index_ranked=True``, which skips
    the monotonicity check.

    ``total`` defaults to the table sum but may be supplied larger for
    truncated tables (published lists often stop at a count floor while the
    full corpus total is known).
    """

    counts: tuple[float, ...]
    labels: tuple[str, ...] | None = None
    total: float | None = None
    index_ranked: bool = False

    def __post_init__(self):
        if len(self.counts) == 0:
            raise DomainError("RankedCounts needs at least one entry")
        for c in self.counts:
            if not (c >= 0.0) or math.isinf(c):
                raise DomainError(f"counts must be finite and >= 0, got {c}")
        if not self.index_ranked:
            for i in range(len(self.counts) - 1):
                if self.counts[i] < self.counts[i + 1]:
                    raise DomainError(
                        f"counts must be nonincreasing (rank is count order); "
                        f"rank {i + 1} has {self.counts[i]} < {self.counts[i + 1]}"
                    )
        if self.labels is not None and len(self.labels) != len(self.counts):
            raise DomainError("labels and counts must have equal length")
        observed = math.fsum(self.counts)
        if self.total is None:
            object.__setattr__(self, "total", observed)
        elif math.isnan(self.total) or math.isinf(self.total):
            raise DomainError(f"total must be finite, got {self.total}")
        elif self.total < observed * (1.0 - 1e-12):
            raise DomainError(
                f"total {self.total} is smaller than the table sum {observed}"
            )

    def __len__(self) -> int:
        return len(self.counts)

    def count(self, rank: int) -> float:
        """Count at 1-based rank."""
        if not 1 <= rank <= len(self.counts):
            raise DomainError(f"rank {rank} outside table of length {len(self.counts)}")
        return self.counts[rank - 1]

    def rows(self) -> Iterator[tuple[int, str | None, float]]:
        """Iterate (rank, label, count)."""
        for i, c in enumerate(self.counts, start=1):
            yield i, (self.labels[i - 1] if self.labels else None), c


@dataclass(frozen=True)
class ScaleEstimates:
    """Per-rank scale estimates N_i = X_i i^alpha with summary statistics."""

    rows: tuple[tuple[int, float], ...]
    minimum: float
    median: float
    maximum: float


@dataclass(frozen=True)
class SensitivityRow:
    alpha: float
    N_est: float
    n_prime: float


@dataclass(frozen=True)
class SensitivityReport:
    """Scale and threshold estimates across a grid of decay exponents."""

    rows: tuple[SensitivityRow, ...]

    def __post_init__(self):
        if not self.rows:
            raise DomainError("sensitivity report needs at least one row")
        alphas = [r.alpha for r in self.rows]
        if any(a2 <= a1 for a1, a2 in zip(alphas, alphas[1:])):
            raise DomainError("alphas must be strictly increasing")


def estimate_N_total(
    T: float, alpha: float, k: float, prec: Precision = DEFAULT_PRECISION
) -> float:
    """Scale estimate N = T / zeta(alpha, k+1) from the corpus total T.

    The expected total of the ensemble is N sum over i >= 1 of (i+k)^-alpha,
    and that sum is the Hurwitz zeta value at offset k + 1 (plain zeta when
    k = 0).
    """
    if not (T > 0.0) or math.isinf(T) or math.isnan(T):
        raise DomainError(f"T must be finite and > 0, got {T}")
    if not (k >= 0.0) or math.isinf(k) or math.isnan(k):
        raise DomainError(f"k must be finite and >= 0, got {k}")
    return T / hurwitz_zeta(alpha, k + 1.0, prec)


def local_scale_estimates(
    counts: RankedCounts, alpha: float, lo: int, hi: int
) -> ScaleEstimates:
    """Per-rank estimates N_i = X_i i^alpha over the rank window [lo, hi]."""
    if not (alpha > 1.0) or math.isinf(alpha) or math.isnan(alpha):
        raise DomainError(f"alpha must be finite and > 1, got {alpha}")
    if not 1 <= lo <= hi <= len(counts):
        raise DomainError(
            f"window [{lo}, {hi}] invalid for a table of length {len(counts)}"
        )
    rows = []
    for i in range(lo, hi + 1):
        x = counts.count(i)
        if x <= 0.0:
            raise DomainError(f"rank {i} has count 0; no scale estimate there")
        rows.append((i, x * i**alpha))
    values = [v for _, v in rows]
    return ScaleEstimates(
        rows=tuple(rows),
        minimum=min(values),
        median=statistics.median(values),
        maximum=max(values),
    )


def sensitivity_sweep(
    counts: RankedCounts, alphas: Sequence[float], lo: int, hi: int
) -> SensitivityReport:
    """Sweep alpha over a grid, re-estimating N and the ordering threshold.

    The scale for each alpha is the window minimum of the N_i, the
    conservative choice (smaller N gives a smaller threshold).
    """
    rows = []
    for alpha in alphas:
        est = local_scale_estimates(counts, alpha, lo, hi)
        n_prime = threshold_n_prime(est.minimum, alpha).n_prime
        rows.append(SensitivityRow(alpha=alpha, N_est=est.minimum, n_prime=n_prime))
    return SensitivityReport(rows=tuple(rows))
