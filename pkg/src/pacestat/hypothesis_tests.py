"""Group summaries and omnibus tests: Levene, one-way ANOVA, Welch ANOVA.

ANOVA and Welch ANOVA need only ``(n, mean, variance)`` per group, so they
take :class:`GroupSummary` values. Levene's test works on absolute
deviations and therefore needs the raw observations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from pacestat.distributions import f_survival
from pacestat.errors import DegenerateError, DomainError, InsufficientDataError, ZeroVarianceError

__all__ = [
    "GroupSummary",
    "OmnibusResult",
    "AnovaDecomposition",
    "summarize",
    "levene_test",
    "anova_decomposition",
    "oneway_anova",
    "welch_anova",
]

OmnibusKind = Literal["levene", "anova", "welch"]


@dataclass(frozen=True)
class GroupSummary:
    """Size, mean and sample variance (``n - 1`` denominator) of one group."""

    label: str
    n: int
    mean: float
    variance: float

    def __post_init__(self):
        if self.n < 2:
            raise InsufficientDataError(f"group {self.label!r} needs n >= 2, got {self.n}")
        if not self.variance >= 0:
            raise DomainError(f"group {self.label!r} has negative variance {self.variance}")

    @classmethod
    def from_sd(cls, label: str, n: int, mean: float, sd: float) -> "GroupSummary":
        """Build from a published ``mean ± sd`` pair."""
        return cls(label, n, mean, sd * sd)

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class OmnibusResult:
    kind: OmnibusKind
    statistic: float
    df1: float
    df2: float
    p: float
    # Set when the within-group spread is zero but the between-group spread
    # is not: statistic is +inf and p is 0.
    degenerate: bool = False


@dataclass(frozen=True)
class AnovaDecomposition:
    ss_between: float
    ss_within: float
    ss_total: float
    df_between: int
    df_within: int

    @property
    def ms_between(self) -> float:
        return self.ss_between / self.df_between

    @property
    def ms_within(self) -> float:
        return self.ss_within / self.df_within


def summarize(values: Sequence[float], label: str = "") -> GroupSummary:
    """Mean and unbiased variance of ``values``.

    Sums use ``math.fsum`` so the result does not depend on the order of the
    observations.
    """
    x = [float(v) for v in np.asarray(values, dtype=float).ravel()]
    n = len(x)
    if n < 2:
        raise InsufficientDataError(f"group {label!r} needs at least 2 values, got {n}")
    mean = math.fsum(x) / n
    variance = math.fsum((v - mean) ** 2 for v in x) / (n - 1)
    return GroupSummary(label, n, mean, variance)


_EPS = np.finfo(float).eps


def _check_arity(k: int) -> None:
    if k < 2:
        raise DomainError(f"need at least 2 groups, got {k}")


def levene_test(
    groups: Sequence[Sequence[float]], center: Literal["mean", "median"] = "mean"
) -> OmnibusResult:
    """Levene's test for equal variances.

    Each observation is replaced by its absolute deviation from the group
    center (mean, or median for the Brown-Forsythe variant) and a one-way
    ANOVA F is computed on the deviations. ``p`` comes from F(k-1, N-k).

    Raises
    ------
    DegenerateError
        If every deviation equals its group's mean deviation, so the F
        denominator vanishes.
    """
    if center not in ("mean", "median"):
        raise DomainError(f"center must be 'mean' or 'median', got {center!r}")
    _check_arity(len(groups))
    devs = []
    for idx, g in enumerate(groups):
        x = np.asarray(g, dtype=float).ravel()
        if x.size < 2:
            raise InsufficientDataError(f"group {idx} needs at least 2 values, got {x.size}")
        c = math.fsum(x) / x.size if center == "mean" else float(np.median(x))
        devs.append(np.abs(x - c))
    k = len(devs)
    n_total = sum(d.size for d in devs)
    zbar_i = [math.fsum(d) / d.size for d in devs]
    zbar = math.fsum(math.fsum(d) for d in devs) / n_total
    ssb = math.fsum(d.size * (zi - zbar) ** 2 for d, zi in zip(devs, zbar_i))
    ssw = math.fsum(math.fsum((d - zi) ** 2) for d, zi in zip(devs, zbar_i))
    # Deviations carry rounding error of order eps * max|x|; spread below that
    # floor is noise (e.g. every group of size 2 is exactly degenerate).
    scale = max(float(np.max(np.abs(np.asarray(g, dtype=float)))) for g in groups)
    if ssw <= n_total * (16 * _EPS * scale) ** 2:
        raise DegenerateError("Levene: absolute deviations have no within-group spread")
    df1, df2 = k - 1, n_total - k
    w = (df2 / df1) * ssb / ssw
    return OmnibusResult("levene", w, df1, df2, f_survival(w, df1, df2))


def anova_decomposition(groups: Sequence[GroupSummary]) -> AnovaDecomposition:
    """Between/within sums of squares from group summaries."""
    _check_arity(len(groups))
    k = len(groups)
    n_total = sum(g.n for g in groups)
    if n_total <= k:
        raise InsufficientDataError("total sample size must exceed the number of groups")
    grand = math.fsum(g.n * g.mean for g in groups) / n_total
    ssb = math.fsum(g.n * (g.mean - grand) ** 2 for g in groups)
    ssw = math.fsum((g.n - 1) * g.variance for g in groups)
    return AnovaDecomposition(ssb, ssw, ssb + ssw, k - 1, n_total - k)


def oneway_anova(groups: Sequence[GroupSummary]) -> tuple[OmnibusResult, AnovaDecomposition]:
    """Classic one-way ANOVA F test from group summaries.

    Zero within-group spread with nonzero between-group spread gives
    ``statistic=inf``, ``p=0`` and ``degenerate=True`` instead of raising.

    Raises
    ------
    DegenerateError
        If both sums of squares are zero.
    """
    dec = anova_decomposition(groups)
    df1, df2 = dec.df_between, dec.df_within
    if dec.ss_within == 0:
        if dec.ss_between == 0:
            raise DegenerateError("ANOVA: all observations are identical")
        return OmnibusResult("anova", math.inf, df1, df2, 0.0, degenerate=True), dec
    f = dec.ms_between / dec.ms_within
    return OmnibusResult("anova", f, df1, df2, f_survival(f, df1, df2)), dec


def welch_anova(groups: Sequence[GroupSummary]) -> OmnibusResult:
    """Welch's heteroscedastic one-way ANOVA.

    Weights are ``n_i / s_i^2``; the statistic is asymptotically
    F(k-1, df2) with a fractional ``df2``.
    """
    _check_arity(len(groups))
    for g in groups:
        if g.variance <= 0:
            raise ZeroVarianceError(f"Welch ANOVA: group {g.label!r} has zero variance")
    k = len(groups)
    w = [g.n / g.variance for g in groups]
    w_sum = math.fsum(w)
    mean_w = math.fsum(wi * g.mean for wi, g in zip(w, groups)) / w_sum
    a = math.fsum(wi * (g.mean - mean_w) ** 2 for wi, g in zip(w, groups)) / (k - 1)
    lam = math.fsum((1.0 - wi / w_sum) ** 2 / (g.n - 1) for wi, g in zip(w, groups))
    b = 1.0 + 2.0 * (k - 2) / (k * k - 1) * lam
    stat = a / b
    df1 = k - 1
    df2 = (k * k - 1) / (3.0 * lam)
    return OmnibusResult("welch", stat, df1, df2, f_survival(stat, df1, df2))

