import math

import numpy as np
import pytest
from scipy import stats

from pacestat.errors import DomainError, ZeroVarianceError
from pacestat.hypothesis_tests import GroupSummary, oneway_anova, summarize
from pacestat.posthoc import games_howell, tukey_kramer, welch_satterthwaite_df

LABELS = ("Fast", "FM", "MF")
SIZES = (62, 168, 55)


def published(means, sds):
    return [GroupSummary.from_sd(lab, n, m, s) for lab, n, m, s in zip(LABELS, SIZES, means, sds)]


AV = published((32.08, 36.59, 42.58), (9.58, 10.38, 13.52))
SR = published((58.58, 70.02, 81.52), (13.10, 17.15, 25.44))
TOP = published((1.14, 1.05, 0.85), (0.33, 0.37, 0.45))


def row(rows, i, j):
    return next(r for r in rows if (r.group_i, r.group_j) == (i, j))


class TestTukeyKramer:
    def test_layout(self):
        rows = tukey_kramer(TOP, 0.143, 282)
        assert [(r.group_i, r.group_j) for r in rows] == [
            ("Fast", "FM"), ("Fast", "MF"), ("FM", "Fast"), ("FM", "MF"), ("MF", "Fast"), ("MF", "FM")]

    def test_top_order_fast_mf(self):
        r = row(tukey_kramer(TOP, 0.143, 282), "Fast", "MF")
        assert r.mean_difference == pytest.approx(0.2971, abs=0.01)
        assert r.std_error == pytest.approx(0.0700, abs=0.002)
        assert r.p < 0.001
        assert r.ci_lower == pytest.approx(0.132, abs=0.01)
        assert r.ci_upper == pytest.approx(0.462, abs=0.01)

    def test_top_order_fast_fm_not_significant(self):
        r = row(tukey_kramer(TOP, 0.143, 282), "Fast", "FM")
        assert r.std_error == pytest.approx(0.0561342972, abs=0.002)
        assert not r.significant
        assert r.ci_lower < 0 < r.ci_upper

    def test_identical_groups(self):
        g = [GroupSummary("a", 10, 3.0, 2.0), GroupSummary("b", 10, 3.0, 2.0)]
        (r, _) = tukey_kramer(g, 2.0, 18)
        assert r.mean_difference == 0
        assert r.p == pytest.approx(1.0, abs=1e-9)
        assert r.ci_lower == pytest.approx(-r.ci_upper, abs=1e-15)

    def test_bad_ms_within(self):
        with pytest.raises(DomainError):
            tukey_kramer(TOP, 0.0, 282)

    def test_equal_n_is_tukey_hsd(self):
        groups = [GroupSummary(str(i), 8, m, 1.5) for i, m in enumerate((0.0, 0.4, 1.7, 2.0))]
        for r in tukey_kramer(groups, 1.5, 28):
            assert r.std_error == pytest.approx(math.sqrt(2 * 1.5 / 8), rel=1e-12)

    def test_matches_scipy_tukey_hsd(self):
        rng = np.random.default_rng(21)
        raw = [rng.normal(m, 1, n) for m, n in [(0, 12), (0.9, 9), (0.2, 20)]]
        sums = [summarize(x, str(i)) for i, x in enumerate(raw)]
        _, dec = oneway_anova(sums)
        rows = tukey_kramer(sums, dec.ms_within, dec.df_within)
        ref = stats.tukey_hsd(*raw)
        ci = ref.confidence_interval(0.95)
        for r in rows:
            i, j = int(r.group_i), int(r.group_j)
            assert r.p == pytest.approx(ref.pvalue[i, j], abs=1e-6)
            assert r.ci_lower == pytest.approx(ci.low[i, j], abs=1e-5)
            assert r.ci_upper == pytest.approx(ci.high[i, j], abs=1e-5)


class TestGamesHowell:
    def test_average_fast_fm(self):
        r = row(games_howell(AV), "Fast", "FM")
        assert r.mean_difference == pytest.approx(-4.514, abs=0.03)
        assert r.std_error == pytest.approx(1.456, abs=0.02)
        assert r.p == pytest.approx(0.007, abs=0.004)
        assert r.ci_lower == pytest.approx(-7.97, abs=0.08)
        assert r.ci_upper == pytest.approx(-1.06, abs=0.08)

    def test_average_fm_mf(self):
        r = row(games_howell(AV), "FM", "MF")
        assert r.mean_difference == pytest.approx(-5.986, abs=0.03)
        assert r.std_error == pytest.approx(1.992, abs=0.02)
        assert r.p == pytest.approx(0.010, abs=0.004)

    def test_strike_rate_fast_mf(self):
        r = row(games_howell(SR), "Fast", "MF")
        assert r.mean_difference == pytest.approx(-22.942, abs=0.03)
        assert r.std_error == pytest.approx(3.812, abs=0.05)
        assert r.ci_lower == pytest.approx(-32.05, abs=0.2)
        assert r.ci_upper == pytest.approx(-13.83, abs=0.2)

    def test_zero_variance(self):
        with pytest.raises(ZeroVarianceError):
            games_howell([GroupSummary("a", 4, 1.0, 0.0), GroupSummary("b", 4, 2.0, 1.0)])

    def test_shared_variance_df(self):
        groups = [GroupSummary(str(i), 11, m, 4.0) for i, m in enumerate((0.0, 1.0, 3.0))]
        for r in games_howell(groups):
            assert r.df == pytest.approx(20, rel=1e-9)
            assert r.std_error == pytest.approx(math.sqrt(2 * 4.0 / 11), rel=1e-9)

    def test_welch_satterthwaite(self):
        a, b = GroupSummary("a", 5, 0, 2.0), GroupSummary("b", 9, 0, 7.0)
        va, vb = 2.0 / 5, 7.0 / 9
        assert welch_satterthwaite_df(a, b) == pytest.approx((va + vb) ** 2 / (va ** 2 / 4 + vb ** 2 / 8))

    def test_two_groups_reduce_to_welch_t(self):
        # With k = 2 the studentized range is sqrt(2)|t|, so the p-value is the
        # two-sided Welch t-test p-value.
        rng = np.random.default_rng(2)
        x, y = rng.normal(0, 1, 15), rng.normal(1, 2, 22)
        (r, _) = games_howell([summarize(x, "x"), summarize(y, "y")])
        ref = stats.ttest_ind(x, y, equal_var=False)
        assert r.p == pytest.approx(ref.pvalue, abs=1e-6)


@pytest.mark.parametrize("rows", [games_howell(AV), games_howell(SR), tukey_kramer(TOP, 0.143, 282)])
def test_antisymmetry_and_consistency(rows):
    for r in rows:
        mirror = row(rows, r.group_j, r.group_i)
        assert mirror.mean_difference == -r.mean_difference
        assert (mirror.ci_lower, mirror.ci_upper) == (-r.ci_upper, -r.ci_lower)
        assert (mirror.std_error, mirror.df, mirror.p) == (r.std_error, r.df, r.p)
        assert r.ci_lower <= r.mean_difference <= r.ci_upper
        assert r.significant == (r.p < 0.05) == (not r.ci_lower <= 0 <= r.ci_upper)
