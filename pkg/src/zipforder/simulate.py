"""Monte Carlo simulation of the power-law Poisson count ensemble.

Reproducibility contract: replicate r of a run with seed s draws from a
counter-based Philox stream keyed by (s, r), so any partition of the
replicates across workers produces bit-identical results.

Correct-prefix rule
-------------------
For a draw X_1..X_M the correct prefix length L is the largest n >= 0 with

    X_1 > X_2 > ... > X_n   and   X_n > X_i for every i in (n, M].

The second clause makes interlopers observable: rank n only counts as
settled if nothing later ties or beats it.  When L < M the chain is intact
through position c = L + 1 and the failure is always that X_c fails to
dominate the rest; the blocker b is the first index attaining
max over (L, M] of X.  The first error is classified as

* ``tie`` when b = c (X_c equals the best of the rest),
* ``transposition`` when b = c + 1 (the immediate successor overtook X_c),
* ``jump(d)`` with d = b - c >= 2 otherwise (a deeper entity overtook X_c).

A full-length prefix (L = M) reports ``none``: the draw was ordered out to
the truncation horizon, which the caller should treat as a horizon hit,
not a perfectly ordered infinite ensemble.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bounds import EnsembleParams, poisson_upper_tail_bound, threshold_n_prime
from .errors import ConfigurationError, DomainError
from .estimate import RankedCounts

__all__ = [
    "OrderingOutcome",
    "ExperimentSummary",
    "replicate_stream",
    "sample_poisson",
    "truncation_index",
    "sample_ensemble",
    "ordering_outcome",
    "run_experiment",
]

_ERROR_KINDS = ("none", "transposition", "tie", "jump")
_U64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class OrderingOutcome:
    """Correct-prefix length and the first rank error of one draw."""

    correct_prefix_len: int
    first_error: str  # one of "none", "transposition", "tie", "jump"
    jump_offset: int | None = None  # b - (L+1) >= 2, for jumps only
    blocker_index: int | None = None  # 1-based rank that stopped the prefix


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate of ordering outcomes over independent replicates."""

    reps: int
    histogram: dict[int, int]  # correct prefix length -> frequency
    error_kind_counts: dict[str, int]
    seed: int
    truncation_m: int
    n_focus: int

    def to_dict(self) -> dict:
        """JSON-ready form with the histogram as sorted [L, count] pairs."""
        return {
            "reps": self.reps,
            "seed": self.seed,
            "n_focus": self.n_focus,
            "truncation_m": self.truncation_m,
            "histogram": [[l, c] for l, c in sorted(self.histogram.items())],
            "error_kind_counts": {k: self.error_kind_counts[k] for k in _ERROR_KINDS},
        }


def replicate_stream(seed: int, replicate: int) -> np.random.Generator:
    """Independent Philox stream for one (seed, replicate) pair."""
    key = np.array([seed & _U64, replicate & _U64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_poisson(lam: float, stream: np.random.Generator) -> int:
    """One exact Poisson(lam) draw; constant expected cost in lam."""
    if not (lam >= 0.0) or math.isinf(lam) or math.isnan(lam):
        raise DomainError(f"lam must be finite and >= 0, got {lam}")
    return int(stream.poisson(lam))


def _means(params: EnsembleParams, m: int) -> np.ndarray:
    ranks = np.arange(1, m + 1, dtype=np.float64)
    return params.N * (ranks + params.k) ** -params.alpha


def _tail_mass_below_safety(
    params: EnsembleParams, m: int, tau: float, safety: float
) -> bool:
    """Decide whether sum over i > m of Pr(X_i > tau) is certified <= safety.

    Uses the exponential upper tail bound per rank.  Once enough leading
    terms are accumulated, the rest is majorised in closed form: the factor
    exp(-lam) lam^tau is increasing in lam below tau, so the remaining sum
    is at most C N^tau / Gamma(tau+1) times the power-sum tail of
    (i+k)^(-alpha tau), handled by an integral bound.
    """
    inv = 1.0 / (params.alpha * tau - 1.0)  # requires alpha * tau > 1
    lg_tau = math.lgamma(tau + 1.0)
    acc = 0.0
    i = m
    for _ in range(200_000):
        i += 1
        lam = params.mean_of(i)
        # closed-form majorant for everything from rank i on
        rest_log = (
            -math.log(1.0 - lam / (tau + 1.0))
            + tau * math.log(params.N)
            - lg_tau
            + math.log1p((i + params.k) * inv)
            + (-params.alpha * tau) * math.log(i + params.k)
        )
        rest = math.exp(rest_log) if rest_log < 700.0 else math.inf
        if acc + rest <= safety:
            return True
        term = poisson_upper_tail_bound(lam, tau)
        acc += term
        if acc > safety:
            return False
    raise ConfigurationError(
        f"tail mass at horizon {m} did not resolve against safety {safety}"
    )


def truncation_index(params: EnsembleParams, n_focus: int, safety: float) -> int:
    """Smallest horizon M >= 4 n_focus whose beyond-horizon entities are negligible.

    Negligible means: the probability that any entity of rank > M reaches the
    low reference level tau = lambda at rank 2 n_focus is certified <= safety.
    Ranks beyond M then perturb prefix outcomes with probability <= safety
    and the infinite ensemble can be simulated on 1..M.
    """
    if n_focus < 1:
        raise DomainError(f"n_focus must be >= 1, got {n_focus}")
    if not (0.0 < safety < 1.0):
        raise DomainError(f"safety must lie in (0, 1), got {safety}")
    tau = params.mean_of(2 * n_focus)
    if params.alpha * tau <= 1.0:
        raise ConfigurationError(
            f"reference level tau={tau} too low to certify any finite horizon "
            f"(need alpha * tau > 1)"
        )
    m = 4 * n_focus
    for _ in range(10_000):
        if _tail_mass_below_safety(params, m, tau, safety):
            return m
        m += max(1, m // 8)
    raise ConfigurationError(
        f"no horizon below {m} certifies safety {safety} for {params}"
    )


def sample_ensemble(
    params: EnsembleParams, m: int, stream: np.random.Generator
) -> RankedCounts:
    """Draw counts for ranks 1..M in index order (index is the true rank).

    The draws are intentionally not re-sorted; inversions relative to the
    index order are exactly what the ordering analysis studies.
    """
    if m < 1:
        raise DomainError(f"M must be >= 1, got {m}")
    draws = stream.poisson(_means(params, m))
    return RankedCounts(
        counts=tuple(int(x) for x in draws),
        total=float(draws.sum()),
        index_ranked=True,
    )


def ordering_outcome(counts: Sequence[int] | np.ndarray | RankedCounts) -> OrderingOutcome:
    """Correct-prefix length and first-error classification of one draw."""
    if isinstance(counts, RankedCounts):
        counts = counts.counts
    x = np.asarray(counts)
    if x.ndim != 1 or x.size == 0:
        raise DomainError("counts must be a nonempty one-dimensional sequence")
    m = x.size

    # chain length: largest K with x_1 > x_2 > ... > x_K
    non_desc = np.nonzero(np.diff(x) >= 0)[0]
    chain = int(non_desc[0]) + 1 if non_desc.size else m

    # suffix maxima: suffix_max[j] = max(x[j:]) (0-based)
    suffix_max = np.maximum.accumulate(x[::-1])[::-1]

    # P(n) for n <= chain reduces to the dominance clause; P is monotone, so
    # the first success scanning downward is the largest valid prefix.
    prefix = 0
    for n in range(min(chain, m), 0, -1):
        if n == m or x[n - 1] > suffix_max[n]:
            prefix = n
            break

    if prefix == m:
        return OrderingOutcome(prefix, "none")

    failed = prefix + 1  # 1-based rank that could not be confirmed
    blocker = prefix + 1 + int(np.argmax(x[prefix:]))  # first maximiser of the rest
    if blocker == failed:
        return OrderingOutcome(prefix, "tie", blocker_index=blocker)
    if blocker == failed + 1:
        return OrderingOutcome(prefix, "transposition", blocker_index=blocker)
    return OrderingOutcome(
        prefix, "jump", jump_offset=blocker - failed, blocker_index=blocker
    )


def _simulate_chunk(
    params: EnsembleParams, seed: int, start: int, stop: int, m: int
) -> tuple[dict[int, int], dict[str, int]]:
    lam = _means(params, m)
    hist: dict[int, int] = {}
    kinds = dict.fromkeys(_ERROR_KINDS, 0)
    for r in range(start, stop):
        draws = replicate_stream(seed, r).poisson(lam)
        outcome = ordering_outcome(draws)
        hist[outcome.correct_prefix_len] = hist.get(outcome.correct_prefix_len, 0) + 1
        kinds[outcome.first_error] += 1
    return hist, kinds


def run_experiment(
    params: EnsembleParams,
    reps: int,
    seed: int,
    n_focus: int | None = None,
    workers: int = 1,
) -> ExperimentSummary:
    """Aggregate ordering outcomes over seeded independent replicates.

    Deterministic given (seed, reps, params, n_focus): outcomes depend only
    on per-replicate streams, and per-chunk aggregates merge by addition, so
    the worker count changes nothing but wall time.
    """
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    if n_focus is None:
        n_focus = math.ceil(threshold_n_prime(params.N, params.alpha).n_prime)
    m = truncation_index(params, n_focus, 1e-6)

    if workers == 1:
        parts = [_simulate_chunk(params, seed, 0, reps, m)]
    else:
        bounds = np.linspace(0, reps, workers + 1).astype(int)
        jobs = [
            (params, seed, int(lo), int(hi), m)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_simulate_chunk_star, jobs))

    histogram: dict[int, int] = {}
    kinds = dict.fromkeys(_ERROR_KINDS, 0)
    for part_hist, part_kinds in parts:
        for length, freq in part_hist.items():
            histogram[length] = histogram.get(length, 0) + freq
        for kind, freq in part_kinds.items():
            kinds[kind] += freq
    return ExperimentSummary(
        reps=reps,
        histogram=dict(sorted(histogram.items())),
        error_kind_counts=kinds,
        seed=seed,
        truncation_m=m,
        n_focus=n_focus,
    )


def _simulate_chunk_star(args) -> tuple[dict[int, int], dict[str, int]]:
    return _simulate_chunk(*args)
