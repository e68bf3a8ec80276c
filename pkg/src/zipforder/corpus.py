"""Rank-count table ingestion and whole-corpus ordering analysis.

Input format: UTF-8 TSV or CSV with columns (label, count) or
(rank, label, count); '#' lines are comments and a header row is detected
by a non-numeric count field.  The analysis composes the scale estimators,
ordering thresholds and diagnostics into one self-describing report; plot
rendering is left to external tools, only plot data is emitted.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .bounds import EnsembleParams, pick_n, threshold_n_hat, threshold_n_prime
from .errors import DomainError, ParseError
from .estimate import (
    RankedCounts,
    SensitivityReport,
    estimate_N_total,
    local_scale_estimates,
    sensitivity_sweep,
)

__all__ = [
    "CountsSummary",
    "ReferenceLine",
    "ZipfPlotData",
    "AnalysisReport",
    "load_rank_counts",
    "adjacent_se",
    "zipf_plot_data",
    "analyze",
    "write_zipf_csv",
    "write_se_csv",
]

DEFAULT_WINDOW = (10, 100)
DEFAULT_SLOPES = (-1.0, -1.1)
_ANCHOR_OFFSET = 0.5  # vertical gap of the reference lines, in log space


@dataclass(frozen=True)
class CountsSummary:
    length: int
    total: float
    top: tuple[tuple[int, str | None, float], ...]


@dataclass(frozen=True)
class ReferenceLine:
    slope: float
    intercept: float


@dataclass(frozen=True)
class ZipfPlotData:
    """Log-log rank/count points plus two reference lines bracketing them."""

    points: tuple[tuple[int, float, float], ...]  # (rank, ln rank, ln count)
    skipped_ranks: tuple[int, ...]  # zero counts have no log point
    lines: tuple[ReferenceLine, ReferenceLine]


@dataclass(frozen=True)
class AnalysisReport:
    """Full corpus analysis; echoes its inputs so the output is self-describing."""

    counts_summary: CountsSummary
    params_used: EnsembleParams
    n_prime: float
    n_hat: float
    pick_n_result: int
    pick_n_cap_reached: bool
    adjacent_se: tuple[float, ...]
    zipf_points: ZipfPlotData
    reference_slopes: tuple[float, float]
    sensitivity: SensitivityReport
    window: tuple[int, int]
    epsilon: float
    window_scale_min: float

    def to_dict(self) -> dict:
        return {
            "counts_summary": {
                "length": self.counts_summary.length,
                "total": self.counts_summary.total,
                "top": [list(row) for row in self.counts_summary.top],
            },
            "params_used": {
                "N": self.params_used.N,
                "alpha": self.params_used.alpha,
                "k": self.params_used.k,
            },
            "n_prime": self.n_prime,
            "n_hat": self.n_hat,
            "pick_n_result": self.pick_n_result,
            "pick_n_cap_reached": self.pick_n_cap_reached,
            "adjacent_se": list(self.adjacent_se),
            "zipf_points": {
                "points": [list(p) for p in self.zipf_points.points],
                "skipped_ranks": list(self.zipf_points.skipped_ranks),
                "lines": [
                    {"slope": ln.slope, "intercept": ln.intercept}
                    for ln in self.zipf_points.lines
                ],
            },
            "reference_slopes": list(self.reference_slopes),
            "sensitivity": [
                {"alpha": r.alpha, "N_est": r.N_est, "n_prime": r.n_prime}
                for r in self.sensitivity.rows
            ],
            "window": list(self.window),
            "epsilon": self.epsilon,
            "window_scale_min": self.window_scale_min,
        }


def _text_lines(source: str | Path | IO[bytes] | IO[str] | Iterable[str]) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8").splitlines()
    if isinstance(source, io.TextIOBase):
        return source
    data = source.read() if hasattr(source, "read") else source
    if isinstance(data, bytes):
        return data.decode("utf-8").splitlines()
    if isinstance(data, str):
        return data.splitlines()
    return data


def load_rank_counts(
    source, fmt: str = "tsv", total: float | None = None
) -> RankedCounts:
    """Parse a (label, count) or (rank, label, count) table into ranked form.

    Records are sorted by count descending and ranks reassigned 1..len; the
    sort is stable, so ties keep their input order.  ``total`` overrides the
    table sum for truncated tables.
    """
    if fmt not in ("tsv", "csv"):
        raise DomainError(f"format must be 'tsv' or 'csv', got {fmt!r}")
    delimiter = "\t" if fmt == "tsv" else ","
    labels: list[str] = []
    counts: list[int] = []
    saw_data = False
    header_skipped = False
    for line_no, row in enumerate(
        csv.reader(_text_lines(source), delimiter=delimiter), start=1
    ):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        fields = [f.strip() for f in row]
        if len(fields) == 2:
            label, count_field = fields
        elif len(fields) == 3:
            _, label, count_field = fields
        else:
            raise ParseError(
                f"expected 2 or 3 columns, got {len(fields)}", line=line_no
            )
        try:
            count = int(count_field)
        except ValueError:
            if not saw_data and not header_skipped:
                header_skipped = True  # a single leading header row is allowed
                continue
            raise ParseError(
                f"count field {count_field!r} is not an integer", line=line_no
            ) from None
        if count < 0:
            raise ParseError(f"count must be >= 0, got {count}", line=line_no)
        saw_data = True
        labels.append(label)
        counts.append(count)
    if not counts:
        raise ParseError("no data records found in input")
    order = sorted(range(len(counts)), key=lambda j: -counts[j])  # stable
    return RankedCounts(
        counts=tuple(float(counts[j]) for j in order),
        labels=tuple(labels[j] for j in order),
        total=total,
    )


def adjacent_se(counts: RankedCounts) -> tuple[float, ...]:
    """Standard-error separation (X_i - X_{i+1}) / sqrt(X_i + X_{i+1}) per pair.

    Under Poisson sampling this is the number of estimated standard
    deviations separating consecutive counts.  Pairs summing to zero get a
    0 sentinel.
    """
    out = []
    for i in range(len(counts) - 1):
        a, b = counts.counts[i], counts.counts[i + 1]
        out.append((a - b) / math.sqrt(a + b) if a + b > 0 else 0.0)
    return tuple(out)


def zipf_plot_data(
    counts: RankedCounts, slopes: tuple[float, float] = DEFAULT_SLOPES
) -> ZipfPlotData:
    """Log-log plot points with reference lines anchored around the data.

    The first line passes through (0, max ln X + 0.5), the second through
    (0, ln X_1 - 0.5); both offsets are presentation constants.  Zero counts
    cannot be plotted on a log scale and are reported as skipped.
    """
    if counts.counts[0] <= 0.0:
        raise DomainError("rank 1 has count 0; nothing to anchor the plot on")
    points = []
    skipped = []
    for i, c in enumerate(counts.counts, start=1):
        if c > 0.0:
            points.append((i, math.log(i), math.log(c)))
        else:
            skipped.append(i)
    if skipped:
        warnings.warn(
            f"{len(skipped)} zero count(s) skipped in the log-log plot", stacklevel=2
        )
    top = max(p[2] for p in points)
    lines = (
        ReferenceLine(slope=slopes[0], intercept=top + _ANCHOR_OFFSET),
        ReferenceLine(slope=slopes[1], intercept=math.log(counts.counts[0]) - _ANCHOR_OFFSET),
    )
    return ZipfPlotData(points=tuple(points), skipped_ranks=tuple(skipped), lines=lines)


def _default_alpha_grid(alpha: float) -> tuple[float, ...]:
    offsets = (-0.05, -0.025, 0.0, 0.025, 0.05)
    grid = sorted({round(alpha + d, 9) for d in offsets if alpha + d > 1.0 + 1e-9})
    return tuple(grid)


def analyze(
    counts: RankedCounts,
    alpha: float,
    k: float = 0.0,
    window: tuple[int, int] = DEFAULT_WINDOW,
    epsilon: float = 0.01,
    alphas: Sequence[float] | None = None,
    slopes: tuple[float, float] = DEFAULT_SLOPES,
    pick_n_cap: int = 100_000,
) -> AnalysisReport:
    """Run the full ordering analysis of one rank-count table.

    The scale used for the error bounds comes from the recorded total
    (N = T / zeta(alpha, k+1)); the ``n_prime`` threshold is additionally
    evaluated at the conservative window-minimum scale estimate, mirroring
    how a corpus with local power-law fit is handled.  The requested window
    is clamped to the table length.
    """
    total = counts.total
    n_total = estimate_N_total(total, alpha, k)
    params = EnsembleParams(n_total, alpha, k)

    lo, hi = window
    hi = min(hi, len(counts))
    if not 1 <= lo <= hi:
        raise DomainError(
            f"window {window} does not intersect a table of length {len(counts)}"
        )
    scales = local_scale_estimates(counts, alpha, lo, hi)
    n_prime = threshold_n_prime(scales.minimum, alpha).n_prime
    n_hat = threshold_n_hat(total, alpha)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # the cap is reported as a field instead
        picked = pick_n(params, epsilon, pick_n_cap)

    grid = tuple(alphas) if alphas is not None else _default_alpha_grid(alpha)
    report = AnalysisReport(
        counts_summary=CountsSummary(
            length=len(counts),
            total=total,
            top=tuple(list(counts.rows())[:10]),
        ),
        params_used=params,
        n_prime=n_prime,
        n_hat=n_hat,
        pick_n_result=picked,
        pick_n_cap_reached=picked == pick_n_cap,
        adjacent_se=adjacent_se(counts),
        zipf_points=zipf_plot_data(counts, slopes),
        reference_slopes=slopes,
        sensitivity=sensitivity_sweep(counts, grid, lo, hi),
        window=(lo, hi),
        epsilon=epsilon,
        window_scale_min=scales.minimum,
    )
    return report


def write_zipf_csv(plot: ZipfPlotData, out: IO[str]) -> None:
    """Emit the log-log points as CSV with header i,ln_rank,ln_count."""
    out.write("i,ln_rank,ln_count\n")
    for i, ln_rank, ln_count in plot.points:
        out.write(f"{i},{ln_rank!r},{ln_count!r}\n")


def write_se_csv(se: Sequence[float], out: IO[str]) -> None:
    """Emit the adjacent standard errors as CSV with header i,se."""
    out.write("i,se\n")
    for i, value in enumerate(se, start=1):
        out.write(f"{i},{value!r}\n")
