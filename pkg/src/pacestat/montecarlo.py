"""Monte Carlo rejection rates: one omnibus test versus all pairwise t-tests.

Every replication draws from its own generator seeded by
``(seed, replication_index)``, so results do not depend on how
replications are split across workers.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from pacestat.distributions import f_survival, student_t_cdf
from pacestat.errors import DomainError
from pacestat.hypothesis_tests import GroupSummary, oneway_anova, welch_anova

__all__ = ["SimulationConfig", "SimulationOutcome", "simulate_type1_error", "pooled_t_test_p"]


@dataclass(frozen=True)
class SimulationConfig:
    group_sizes: tuple[int, ...]
    group_means: tuple[float, ...]
    group_sds: tuple[float, ...]
    replications: int = 10_000
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self):
        k = len(self.group_sizes)
        if k < 2:
            raise DomainError("need at least 2 groups")
        if len(self.group_means) != k or len(self.group_sds) != k:
            raise DomainError("group_sizes, group_means and group_sds must have equal length")
        if any(n < 2 for n in self.group_sizes):
            raise DomainError("every group needs at least 2 observations")
        if any(not s > 0 for s in self.group_sds):
            raise DomainError("group standard deviations must be positive")
        if self.replications < 1:
            raise DomainError("replications must be >= 1")
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (0 <= self.seed < 2**64):
            raise DomainError("seed must be a 64-bit unsigned integer")

    @classmethod
    def null(cls, group_count: int = 3, n: int = 20, replications: int = 10_000,
             alpha: float = 0.05, seed: int = 0) -> "SimulationConfig":
        """Equal-mean standard normal groups of equal size."""
        return cls((n,) * group_count, (0.0,) * group_count, (1.0,) * group_count,
                   replications, alpha, seed)

    @property
    def group_count(self) -> int:
        return len(self.group_sizes)


@dataclass(frozen=True)
class SimulationOutcome:
    anova_rejection_rate: float
    welch_rejection_rate: float
    uncorrected_ttest_familywise_rate: float
    replications: int
    seed: int

    def as_dict(self) -> dict:
        return asdict(self)


def pooled_t_test_p(a: GroupSummary, b: GroupSummary) -> float:
    """Two-sided p of the equal-variance two-sample t-test."""
    df = a.n + b.n - 2
    sp2 = ((a.n - 1) * a.variance + (b.n - 1) * b.variance) / df
    se = math.sqrt(sp2 * (1.0 / a.n + 1.0 / b.n))
    if se == 0:
        return 0.0 if a.mean != b.mean else 1.0
    t = abs(a.mean - b.mean) / se
    return 2.0 * (1.0 - student_t_cdf(t, df))


def _summaries(samples: list[np.ndarray]) -> list[GroupSummary]:
    return [GroupSummary(str(i), x.size, float(x.mean()), float(x.var(ddof=1)))
            for i, x in enumerate(samples)]


def _replicate_block(config: SimulationConfig, start: int, stop: int) -> tuple[int, int, int]:
    anova_hits = welch_hits = family_hits = 0
    sizes = config.group_sizes
    means = np.asarray(config.group_means, dtype=float)
    sds = np.asarray(config.group_sds, dtype=float)
    for rep in range(start, stop):
        rng = np.random.default_rng([config.seed, rep])
        samples = [rng.normal(m, s, n) for m, s, n in zip(means, sds, sizes)]
        groups = _summaries(samples)
        anova, _ = oneway_anova(groups)
        anova_hits += anova.p < config.alpha
        welch_hits += welch_anova(groups).p < config.alpha
        family_hits += any(pooled_t_test_p(a, b) < config.alpha
                           for a, b in itertools.combinations(groups, 2))
    return anova_hits, welch_hits, family_hits


def simulate_type1_error(config: SimulationConfig, workers: int = 1) -> SimulationOutcome:
    """Estimate rejection rates of ANOVA, Welch ANOVA and uncorrected pairwise t-tests.

    With equal group means these are Type I error rates; the pairwise rate
    counts a replication once if any of the k(k-1)/2 tests rejects.

    Parameters
    ----------
    config : SimulationConfig
    workers : int
        Processes to spread replications over. The outcome is identical for
        any value.
    """
    if workers < 1:
        raise DomainError("workers must be >= 1")
    reps = config.replications
    if workers == 1:
        totals = _replicate_block(config, 0, reps)
    else:
        edges = np.linspace(0, reps, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_replicate_block, [config] * workers, edges[:-1], edges[1:]))
        totals = tuple(sum(col) for col in zip(*parts))
    anova_hits, welch_hits, family_hits = totals
    return SimulationOutcome(
        anova_rejection_rate=anova_hits / reps,
        welch_rejection_rate=welch_hits / reps,
        uncorrected_ttest_familywise_rate=family_hits / reps,
        replications=reps,
        seed=config.seed,
    )
