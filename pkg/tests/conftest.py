from pathlib import Path

import numpy as np
import pytest

from zipforder import RankedCounts, load_rank_counts, riemann_zeta

DATA_DIR = Path(__file__).parent / "data"

# The British National Corpus has ~1e8 words; the published list is
# truncated, so the total is supplied rather than summed from the table.
BNC_TOTAL = 1e8


@pytest.fixture(scope="session")
def bnc_top10_path() -> Path:
    return DATA_DIR / "bnc_top10.tsv"


@pytest.fixture(scope="session")
def bnc_top10(bnc_top10_path) -> RankedCounts:
    return load_rank_counts(bnc_top10_path, fmt="tsv", total=BNC_TOTAL)


def make_zipf_table(n_scale: float, alpha: float, length: int, noisy: bool = False,
                    seed: int = 0) -> RankedCounts:
    """Synthetic table with counts round(N i^-alpha), optionally Poisson-noised."""
    ranks = np.arange(1, length + 1, dtype=float)
    means = n_scale * ranks**-alpha
    if noisy:
        rng = np.random.default_rng(seed)
        counts = rng.poisson(means).astype(float)
        counts = np.sort(counts)[::-1]  # data tables are ranked by count
    else:
        counts = np.round(means)
    total = n_scale * riemann_zeta(alpha)
    return RankedCounts(counts=tuple(counts), total=max(total, float(counts.sum())))


@pytest.fixture(scope="session")
def synthetic_bnc_like() -> RankedCounts:
    """Zipf-with-noise stand-in for the full BNC frequency list."""
    return make_zipf_table(1.25e7, 1.106, 800, noisy=True, seed=11)
