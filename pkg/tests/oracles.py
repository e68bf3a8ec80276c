"""Independent brute-force oracles shared by the test modules.

Everything here recomputes probabilities from first principles (pmf
recurrences, double sums, literal definitions) so the analytic code under
test is checked against a genuinely different computation path.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import stats


def poisson_pmf_array(lam: float, kmax: int) -> np.ndarray:
    """pmf of Poisson(lam) on 0..kmax via the multiplicative recurrence.

    The recurrence starts at exp(-lam), so it is only used at test scale
    (lam below ~700, where that seed does not underflow).
    """
    assert lam < 700.0, "recurrence oracle only valid below the exp underflow"
    out = np.empty(kmax + 1)
    out[0] = math.exp(-lam)
    for k in range(1, kmax + 1):
        out[k] = out[k - 1] * lam / k
    return out


def poisson_cdf(lam: float, t: float) -> float:
    """Exact Pr(Poi(lam) <= t) by pmf summation (t may be real)."""
    if t < 0:
        return 0.0
    return float(poisson_pmf_array(lam, math.floor(t)).sum())


def poisson_sf(lam: float, t: float) -> float:
    """Exact Pr(Poi(lam) >= t) for real t via the complement."""
    return 1.0 - poisson_cdf(lam, math.ceil(t) - 1)


def poisson_sf_extreme(lam: float, t: float) -> float:
    """Pr(Poi(lam) >= t) through the incomplete gamma, valid for any scale."""
    return float(stats.poisson.sf(math.ceil(t) - 1, lam))


def skellam_leq_prob(lam: float, nu: float, tail: float = 1e-13) -> float:
    """Pr(X <= Y) for independent X~Poi(lam), Y~Poi(nu) by truncated double sum.

    The cut keeps Pr(Y > ymax) below ``tail``, and dropping those terms can
    only underestimate, so a dominance assertion needs no slack.
    """
    ymax = int(nu + 20.0 * math.sqrt(nu) + 60.0)
    pmf_y = poisson_pmf_array(nu, ymax)
    cdf_x = np.cumsum(poisson_pmf_array(lam, ymax))
    assert 1.0 - pmf_y.sum() < tail
    return float(np.dot(pmf_y, cdf_x))


def jumper_tail_sum(params, n: int, tau: float, imax: int = 300_000) -> float:
    """Truncated exact tail sum over ranks i > n of Pr(X_i > tau)."""
    total = 0.0
    for i in range(n + 1, imax):
        lam = params.mean_of(i)
        term = poisson_sf_extreme(lam, math.floor(tau) + 1)
        total += term
        if term < 1e-16 and lam < tau / 4.0:
            break
    return total


def brute_force_outcome(x) -> tuple[int, str, int | None, int | None]:
    """Literal all-prefixes evaluation of the correct-prefix/first-error rule.

    Checks every n directly against the definition (descending chain plus
    dominance over everything later) instead of the incremental scan used by
    the implementation.
    """
    x = list(x)
    m = len(x)
    best = 0
    for n in range(1, m + 1):
        chain = all(x[i - 1] > x[i] for i in range(1, n))
        dominance = all(x[n - 1] > x[j] for j in range(n, m))
        if chain and dominance:
            best = max(best, n)
    if best == m:
        return best, "none", None, None
    rest = x[best:]
    blocker = best + 1 + rest.index(max(rest))
    failed = best + 1
    if blocker == failed:
        return best, "tie", None, blocker
    if blocker == failed + 1:
        return best, "transposition", None, blocker
    return best, "jump", blocker - failed, blocker


def wilson_upper(successes: int, trials: int, z: float = 2.576) -> float:
    """Upper end of the Wilson score interval (z = 2.576 gives 99%)."""
    phat = successes / trials
    denom = 1.0 + z * z / trials
    centre = phat + z * z / (2 * trials)
    spread = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return (centre + spread) / denom
