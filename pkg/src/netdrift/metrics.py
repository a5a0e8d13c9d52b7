"""Per-run and network-level statistics.

Choice identifiers are dense: the initial choices are 0..N-1 and every
innovation takes the next integer, so a RunRecord stores its per-choice
table as arrays indexed by choice id.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class RunRecord:
    """Everything recorded from a single run.

    first_period / last_period / total_selections are indexed by choice id
    (length = distinct_choices_ever). active_ge[p, t-1] is the number of
    choices selected by at least t agents in period p, tracked for
    t = 1..threshold_cap; column t-1 is the usual per-period active count
    for activity threshold t.
    """

    n_agents: int
    periods: int
    first_period: np.ndarray      # int32
    last_period: np.ndarray       # int32
    total_selections: np.ndarray  # int64
    active_ge: np.ndarray         # int32, shape (periods, threshold_cap)

    @property
    def distinct_choices_ever(self) -> int:
        return self.total_selections.size

    @property
    def threshold_cap(self) -> int:
        return self.active_ge.shape[1]


@dataclass(frozen=True)
class DegreeStats:
    mean: float
    variance: float
    skewness: float


def rank_size(rec: RunRecord) -> np.ndarray:
    """Cumulative selection counts sorted descending (rank 1 first)."""
    return np.sort(rec.total_selections)[::-1]


def lifespans(rec: RunRecord) -> np.ndarray:
    """Lifespan of every choice: last_period - first_period + 1."""
    return (rec.last_period - rec.first_period + 1).astype(np.int64)


def lifespan(rec: RunRecord, choice_id: int) -> int:
    if not 0 <= choice_id < rec.distinct_choices_ever:
        raise KeyError(f"unknown choice id {choice_id}")
    return int(rec.last_period[choice_id] - rec.first_period[choice_id] + 1)


def _top_ids(values: np.ndarray, k: int) -> np.ndarray:
    """Ids of the k largest values; ties broken by ascending id."""
    ids = np.arange(values.size)
    order = np.lexsort((ids, -values))
    return order[:k]


def top_survivors(rec: RunRecord, k: int) -> list[tuple[int, int]]:
    """The k longest-lived choices as (choice_id, lifespan) pairs."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    life = lifespans(rec)
    ids = _top_ids(life, k)
    return [(int(c), int(life[c])) for c in ids]


def top_popular(rec: RunRecord, k: int) -> list[tuple[int, int]]:
    """The k most selected choices as (choice_id, total_selections) pairs."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ids = _top_ids(rec.total_selections, k)
    return [(int(c), int(rec.total_selections[c])) for c in ids]


def top_overlap(rec: RunRecord, k: int) -> int:
    """Size of the intersection of the top-k survivor and top-k popular sets."""
    surv = {c for c, _ in top_survivors(rec, k)}
    pop = {c for c, _ in top_popular(rec, k)}
    return len(surv & pop)


def active_choices(rec: RunRecord, threshold: int = 5) -> float:
    """Mean per-period count of choices selected by >= threshold agents."""
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    if threshold > rec.threshold_cap:
        raise ValueError(f"threshold {threshold} exceeds the tracked cap "
                         f"{rec.threshold_cap}; rerun with a larger threshold_cap")
    return float(rec.active_ge[:, threshold - 1].sum() / rec.periods)


def expected_choice_count(n: int, mu: float, periods: int) -> float:
    """Expected number of distinct choices ever seen: n * (1 + mu*(T-1))."""
    return n * (1.0 + mu * (periods - 1))


def degree_stats(net) -> DegreeStats:
    """Population mean, variance and standardized skewness of the degrees.

    Skewness of a regular graph (zero variance) is defined as 0.
    """
    deg = net.degrees.astype(np.float64)
    mean = deg.mean()
    var = ((deg - mean) ** 2).mean()
    if var == 0.0:
        return DegreeStats(mean=float(mean), variance=0.0, skewness=0.0)
    skew = ((deg - mean) ** 3).mean() / var ** 1.5
    return DegreeStats(mean=float(mean), variance=float(var), skewness=float(skew))
