"""Pairwise multiple comparisons: Tukey-Kramer and Games-Howell.

Both procedures report the standard error of the mean difference without
the 1/sqrt(2) factor, so the studentized range statistic is
``q = sqrt(2) * |diff| / SE`` and confidence limits are
``diff ± q_crit * SE / sqrt(2)``.

Rows are emitted for every ordered pair ``(i, j)``, ``i != j``, in the order
the groups were given, mirroring the layout of the usual SPSS-style tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from pacestat.distributions import studentized_range_cdf, studentized_range_quantile
from pacestat.errors import DomainError, ZeroVarianceError
from pacestat.hypothesis_tests import GroupSummary

__all__ = ["PairwiseComparison", "tukey_kramer", "games_howell"]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PairwiseComparison:
    group_i: str
    group_j: str
    mean_difference: float
    std_error: float
    df: float
    p: float
    ci_lower: float
    ci_upper: float
    significant: bool


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def _p_value(diff: float, se: float, k: int, df: float) -> float:
    q = _SQRT2 * abs(diff) / se
    return min(1.0, max(0.0, 1.0 - studentized_range_cdf(q, k, df)))


def _row(gi: GroupSummary, gj: GroupSummary, se: float, df: float, p: float,
         q_crit: float, alpha: float) -> PairwiseComparison:
    diff = gi.mean - gj.mean
    half = q_crit * se / _SQRT2
    return PairwiseComparison(
        group_i=gi.label,
        group_j=gj.label,
        mean_difference=diff,
        std_error=se,
        df=df,
        p=p,
        ci_lower=diff - half,
        ci_upper=diff + half,
        significant=p < alpha,
    )


def _pairs(groups: Sequence[GroupSummary]):
    for i, gi in enumerate(groups):
        for j, gj in enumerate(groups):
            if i != j:
                yield i, j, gi, gj


def tukey_kramer(groups: Sequence[GroupSummary], ms_within: float, df_within: float,
                 alpha: float = 0.05) -> list[PairwiseComparison]:
    """Tukey-Kramer comparisons using the pooled within-group mean square.

    Parameters
    ----------
    groups : sequence of GroupSummary
        At least two groups; sizes may differ.
    ms_within : float
        Pooled error mean square from the one-way ANOVA.
    df_within : float
        Its degrees of freedom, ``N - k``.
    alpha : float
        Familywise level for the intervals and the ``significant`` flag.
    """
    if len(groups) < 2:
        raise DomainError(f"need at least 2 groups, got {len(groups)}")
    if not ms_within > 0:
        raise DomainError(f"ms_within must be positive, got {ms_within}")
    _check_alpha(alpha)
    k = len(groups)
    q_crit = studentized_range_quantile(1.0 - alpha, k, df_within)
    p_cache = {}
    out = []
    for i, j, gi, gj in _pairs(groups):
        se = math.sqrt(ms_within * (1.0 / gi.n + 1.0 / gj.n))
        key = (min(i, j), max(i, j))
        if key not in p_cache:
            p_cache[key] = _p_value(gi.mean - gj.mean, se, k, df_within)
        out.append(_row(gi, gj, se, df_within, p_cache[key], q_crit, alpha))
    return out


def welch_satterthwaite_df(gi: GroupSummary, gj: GroupSummary) -> float:
    """Effective df of ``s_i^2/n_i + s_j^2/n_j``."""
    vi, vj = gi.variance / gi.n, gj.variance / gj.n
    return (vi + vj) ** 2 / (vi * vi / (gi.n - 1) + vj * vj / (gj.n - 1))


def games_howell(groups: Sequence[GroupSummary], alpha: float = 0.05) -> list[PairwiseComparison]:
    """Games-Howell comparisons for unequal variances and sizes.

    Each pair gets its own standard error and Welch-Satterthwaite df; the
    p-value and interval use the studentized range with ``k = len(groups)``.
    """
    if len(groups) < 2:
        raise DomainError(f"need at least 2 groups, got {len(groups)}")
    _check_alpha(alpha)
    for g in groups:
        if g.variance <= 0:
            raise ZeroVarianceError(f"Games-Howell: group {g.label!r} has zero variance")
    k = len(groups)
    # Mirrored rows share SE, df, p and the critical value.
    per_pair = {}
    out = []
    for i, j, gi, gj in _pairs(groups):
        key = (min(i, j), max(i, j))
        if key not in per_pair:
            se = math.sqrt(gi.variance / gi.n + gj.variance / gj.n)
            df = welch_satterthwaite_df(gi, gj)
            per_pair[key] = (se, df, _p_value(gi.mean - gj.mean, se, k, df),
                             studentized_range_quantile(1.0 - alpha, k, df))
        se, df, p, q_crit = per_pair[key]
        out.append(_row(gi, gj, se, df, p, q_crit, alpha))
    return out
