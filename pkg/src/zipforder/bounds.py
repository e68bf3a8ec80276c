"""Analytic ordering bounds for Poisson counts with power-law means.

The ensemble is an infinite family of independent counts
``X_i ~ Poisson(N (i+k)^(-alpha))`` for ranks i = 1, 2, ...  Everything here
is a closed-form probability bound or threshold on how many of the
top-ranked entities keep their true order in a sample:

* a Chernoff bound for the difference of two Poisson variables (the
  Skellam distribution), which drives all pairwise comparisons;
* exponential Poisson tail bounds valid for real-valued thresholds;
* the Bonferroni prefix bound summing the pairwise terms, with its looser
  closed form, and the largest prefix length holding that bound below a
  target;
* the ``(A N / ln N)^(1/(alpha+2))`` ordering threshold with
  ``A = alpha^2 (alpha+2) / 4``, plus its variant driven by the observed
  total count;
* tail-jumper and interloper bounds controlling entities from deep ranks
  overtaking the head, and a computable lower bound on adjacent swaps.

All functions are pure; "log" is the natural log throughout.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError
from .special import DEFAULT_PRECISION, Precision, ln_gamma, normal_cdf, riemann_zeta

__all__ = [
    "EnsembleParams",
    "BoundReport",
    "ThresholdReport",
    "skellam_order_bound",
    "poisson_upper_tail_bound",
    "poisson_lower_tail_bound",
    "prefix_error_bound",
    "prefix_error_closed_form",
    "pick_n",
    "threshold_A",
    "threshold_n_prime",
    "threshold_n_hat",
    "jumper_bound",
    "interloper_bound",
    "swap_lower_bound",
    "teicher_floor",
]


@dataclass(frozen=True)
class EnsembleParams:
    """Scale N, decay exponent alpha and shift k of the mean law N (i+k)^-alpha."""

    N: float
    alpha: float
    k: float = 0.0

    def __post_init__(self):
        if not (self.N > 0.0) or math.isinf(self.N):
            raise DomainError(f"N must be finite and > 0, got {self.N}")
        if not (self.alpha > 1.0) or math.isinf(self.alpha):
            raise DomainError(f"alpha must be finite and > 1, got {self.alpha}")
        if not (self.k >= 0.0) or math.isinf(self.k):
            raise DomainError(f"k must be finite and >= 0, got {self.k}")

    def mean_of(self, i: int) -> float:
        """Expected count of the rank-i entity, lambda_i = N (i+k)^-alpha."""
        if i < 1:
            raise DomainError(f"rank must be >= 1, got {i}")
        return self.N * (i + self.k) ** -self.alpha


@dataclass(frozen=True)
class BoundReport:
    """Per-pair misordering terms for one prefix and their Bonferroni total."""

    n: int
    per_pair_terms: tuple[float, ...]
    bonferroni_sum: float
    clamped_probability: float


@dataclass(frozen=True)
class ThresholdReport:
    """The ordering threshold (A N / ln N)^(1/(alpha+2)) and its ingredients."""

    A_const: float
    n_prime: float
    n_prime_floor: int
    inputs: EnsembleParams
    log_N: float


def _require_k_zero(params: EnsembleParams, op: str) -> None:
    if params.k != 0.0:
        raise DomainError(f"{op} is only defined for k = 0, got k = {params.k}")


def skellam_order_bound(lam: float, nu: float) -> float:
    """Chernoff bound on Pr(X <= Y) for independent X~Poi(lam), Y~Poi(nu).

    Requires lam >= nu > 0 and returns exp(-(sqrt(lam) - sqrt(nu))^2),
    obtained by minimising the Laplace transform of the difference X - Y.
    """
    if not (nu > 0.0) or math.isinf(nu) or math.isnan(nu):
        raise DomainError(f"nu must be finite and > 0, got {nu}")
    if not (lam >= nu) or math.isinf(lam) or math.isnan(lam):
        raise DomainError(f"need lam >= nu > 0, got lam={lam}, nu={nu}")
    return math.exp(-((math.sqrt(lam) - math.sqrt(nu)) ** 2))


def _poisson_point_mass(lam: float, t: float) -> float:
    # e^-lam lam^t / t! with t! read as Gamma(t+1) for real t
    return math.exp(-lam + t * math.log(lam) - ln_gamma(t + 1.0))


def poisson_upper_tail_bound(lam: float, t: float) -> float:
    """Exponential bound on Pr(Poi(lam) >= t), valid for real t >= lam > 0."""
    if not (lam > 0.0) or math.isinf(lam) or math.isnan(lam):
        raise DomainError(f"lam must be finite and > 0, got {lam}")
    if not (t >= lam) or math.isinf(t):
        raise DomainError(f"upper tail bound needs t >= lam, got t={t}, lam={lam}")
    return _poisson_point_mass(lam, t) / (1.0 - lam / (t + 1.0))


def poisson_lower_tail_bound(lam: float, t: float) -> float:
    """Exponential bound on Pr(Poi(lam) <= t), valid for real 0 <= t < lam."""
    if not (lam > 0.0) or math.isinf(lam) or math.isnan(lam):
        raise DomainError(f"lam must be finite and > 0, got {lam}")
    if not (0.0 <= t < lam):
        raise DomainError(f"lower tail bound needs 0 <= t < lam, got t={t}, lam={lam}")
    if t == 0.0:
        return math.exp(-lam)  # log(lam) term vanishes with t
    return _poisson_point_mass(lam, t) / (1.0 - t / lam)


def _pair_term(params: EnsembleParams, i: int) -> float:
    # skellam_order_bound(lambda_i, lambda_{i+1}) written directly in (i+k)
    half = params.alpha / 2.0
    diff = (i + params.k) ** -half - (i + 1 + params.k) ** -half
    return math.exp(-params.N * diff * diff)


def prefix_error_bound(n: int, params: EnsembleParams) -> BoundReport:
    """Bonferroni bound on any misordering among the first n ranks.

    Term i (for i = 1..n-1) is the Skellam Chernoff bound on
    Pr(X_{i+1} >= X_i); their sum bounds the probability that the sampled
    counts fail to satisfy X_1 > X_2 > ... > X_n.  n = 1 gives an empty sum.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    terms = tuple(_pair_term(params, i) for i in range(1, n))
    total = math.fsum(terms)
    return BoundReport(n, terms, total, min(total, 1.0))


def prefix_error_closed_form(n: int, params: EnsembleParams) -> float:
    """Looser closed form n exp(-(N alpha^2 / 4) n^(-alpha-2)), k = 0 only.

    Dominates the sharper Bonferroni sum because every pairwise exponent is
    replaced by the smallest one over the prefix.
    """
    _require_k_zero(params, "prefix_error_closed_form")
    if n < 2:
        raise DomainError(f"closed form needs n >= 2, got {n}")
    expo = (params.N * params.alpha**2 / 4.0) * n ** (-params.alpha - 2.0)
    return n * math.exp(-expo)


def pick_n(params: EnsembleParams, epsilon: float, n_max: int) -> int:
    """Largest n <= n_max whose prefix error bound stays at or below epsilon.

    The Bonferroni sum is nondecreasing in n (its terms are nonnegative), so
    the scan stops at the first n whose sum exceeds epsilon.  The empty bound
    for n = 1 is 0, hence the result is always >= 1.  Hitting n_max is
    reported with a warning since a larger prefix might still qualify.
    """
    if not (0.0 < epsilon < 1.0):
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    best = 1
    terms: list[float] = []
    for n in range(2, n_max + 1):
        terms.append(_pair_term(params, n - 1))
        if math.fsum(terms) <= epsilon:
            best = n
        else:
            break
    if best == n_max:
        warnings.warn(
            f"pick_n reached the search cap n_max={n_max}; "
            "the admissible prefix may extend further",
            stacklevel=2,
        )
    return best


def threshold_A(alpha: float) -> float:
    """The threshold constant A(alpha) = alpha^2 (alpha + 2) / 4 (> 3/4 for alpha > 1)."""
    if not (alpha > 1.0) or math.isinf(alpha) or math.isnan(alpha):
        raise DomainError(f"alpha must be finite and > 1, got {alpha}")
    return alpha * alpha * (alpha + 2.0) / 4.0


def threshold_n_prime(N: float, alpha: float) -> ThresholdReport:
    """Ordering threshold n' = (A(alpha) N / ln N)^(1/(alpha+2))."""
    a_const = threshold_A(alpha)
    if not (N > 1.0) or math.isinf(N) or math.isnan(N):
        raise DomainError(f"threshold needs finite N > 1, got {N}")
    log_n = math.log(N)
    n_prime = (a_const * N / log_n) ** (1.0 / (alpha + 2.0))
    return ThresholdReport(
        A_const=a_const,
        n_prime=n_prime,
        n_prime_floor=math.floor(n_prime),
        inputs=EnsembleParams(N, alpha, 0.0),
        log_N=log_n,
    )


def threshold_n_hat(T: float, alpha: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """Ordering threshold driven by the total count: n' evaluated at N = T / zeta(alpha)."""
    if not (T > 0.0) or math.isinf(T) or math.isnan(T):
        raise DomainError(f"T must be finite and > 0, got {T}")
    scale = T / riemann_zeta(alpha, prec)
    if scale <= 1.0:
        raise DomainError(f"T/zeta(alpha) must exceed 1, got {scale}")
    return threshold_n_prime(scale, alpha).n_prime


def jumper_bound(n: int, tau: float, params: EnsembleParams) -> float:
    """Bound on Pr(max over ranks i > n of X_i exceeds the level tau), k = 0 only.

    Sums per-rank upper tails, majorises the sum by a gamma integral and
    bounds the resulting ratio of gamma values with Gautschi's inequality:
    (N^(1/alpha)/alpha) ((tau+1)/(tau+1-lambda_n)) (tau^(-1/alpha)/(tau-1/alpha)).
    """
    _require_k_zero(params, "jumper_bound")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if math.isinf(tau) or math.isnan(tau):
        raise DomainError(f"tau must be finite, got {tau}")
    lam_n = params.mean_of(n)
    inv_alpha = 1.0 / params.alpha
    if tau < lam_n:
        raise DomainError(f"jumper level must satisfy tau >= lambda_n={lam_n}, got {tau}")
    if tau <= inv_alpha:
        raise DomainError(f"jumper level must exceed 1/alpha={inv_alpha}, got {tau}")
    return (
        (params.N**inv_alpha / params.alpha)
        * ((tau + 1.0) / (tau + 1.0 - lam_n))
        * (tau**-inv_alpha / (tau - inv_alpha))
    )


def interloper_bound(m: int, n: int, params: EnsembleParams) -> float:
    """Bound on Pr(max over ranks i > n of X_i >= X_m) for 1 <= m < n, k = 0 only.

    Splits at the level tau = sqrt(lambda_m lambda_n), between the two means:
    either some tail entity jumps above tau (jumper bound) or X_m falls to
    tau or below (Chebyshev term lambda_m / (tau - lambda_m)^2).
    """
    _require_k_zero(params, "interloper_bound")
    if m < 1 or n < 1:
        raise DomainError(f"ranks must be >= 1, got m={m}, n={n}")
    if m >= n:
        raise DomainError(f"need m < n so the level separates the means, got m={m}, n={n}")
    lam_m = params.mean_of(m)
    lam_n = params.mean_of(n)
    tau = math.sqrt(lam_m * lam_n)
    chebyshev = lam_m / (tau - lam_m) ** 2
    return jumper_bound(n, tau, params) + chebyshev


def swap_lower_bound(i: int, params: EnsembleParams) -> float:
    """Computable lower bound on Pr(X_{i+1} >= X_i), k = 0 only.

    Pr(X_{i+1} >= X_i) >= Pr(X_{i+1} > lambda_i) Pr(X_i <= lambda_i); the
    first factor is bounded below through the normal approximation with a
    Berry-Esseen correction of 0.8/sqrt(lambda), the second by the uniform
    floor exp(-1).  The result clamps at 0 when the correction dominates.
    """
    _require_k_zero(params, "swap_lower_bound")
    if i < 1:
        raise DomainError(f"i must be >= 1, got {i}")
    lam_i = params.mean_of(i)
    lam_next = params.mean_of(i + 1)
    sd = math.sqrt(lam_next)
    phi = normal_cdf((lam_next - lam_i) / sd)
    return math.exp(-1.0) * max(0.0, phi - 0.8 / sd)


def teicher_floor() -> float:
    """Uniform lower bound exp(-1) on Pr(Poi(lambda) <= lambda)."""
    return math.exp(-1.0)
