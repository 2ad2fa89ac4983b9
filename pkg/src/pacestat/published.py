"""Group summaries and result tables published for the 285-bowler study.

Group sizes are Fast 62, FM 168, MF 55. Means and SDs are the 2-decimal
``mean ± sd`` values quoted with each analysis; no summaries were published
for the economy rate or CBR, so those two variables carry table values only.
"""

from __future__ import annotations

from dataclasses import dataclass

from pacestat.hypothesis_tests import GroupSummary

GROUP_LABELS = ("Fast", "FM", "MF")
GROUP_SIZES = (62, 168, 55)


@dataclass(frozen=True)
class PublishedRow:
    group_i: str
    group_j: str
    mean_difference: float
    std_error: float
    p: float
    ci_lower: float
    ci_upper: float


@dataclass(frozen=True)
class PublishedVariable:
    variable: str
    title: str
    branch: str
    levene_p: float
    omnibus_table: int
    omnibus: dict
    posthoc_table: int | None = None
    posthoc: tuple[PublishedRow, ...] = ()
    # (mean, sd) per group in GROUP_LABELS order
    mean_sd: tuple[tuple[float, float], ...] | None = None

    def summaries(self) -> list[GroupSummary] | None:
        if self.mean_sd is None:
            return None
        return [GroupSummary.from_sd(lab, n, m, s)
                for lab, n, (m, s) in zip(GROUP_LABELS, GROUP_SIZES, self.mean_sd)]


def _mirror(*half: tuple) -> tuple[PublishedRow, ...]:
    """Expand the upper-triangle rows (fast-FM, fast-MF, FM-MF) to all six."""
    (d01, s01, p01, l01, u01), (d02, s02, p02, l02, u02), (d12, s12, p12, l12, u12) = half
    F, FM, MF = GROUP_LABELS
    return (
        PublishedRow(F, FM, d01, s01, p01, l01, u01),
        PublishedRow(F, MF, d02, s02, p02, l02, u02),
        PublishedRow(FM, F, -d01, s01, p01, -u01, -l01),
        PublishedRow(FM, MF, d12, s12, p12, l12, u12),
        PublishedRow(MF, F, -d02, s02, p02, -u02, -l02),
        PublishedRow(MF, FM, -d12, s12, p12, -u12, -l12),
    )


PUBLISHED: dict[str, PublishedVariable] = {
    "av": PublishedVariable(
        "av", "Average (Av)", "heterogeneous", 0.004,
        1, {"kind": "welch", "statistic": 11.897, "df1": 2, "df2": 110.700, "p": 0.000},
        2, _mirror(
            (-4.51402, 1.45628, 0.007, -7.9710, -1.0571),
            (-10.49997, 2.19167, 0.000, -15.7175, -5.2824),
            (-5.98596, 1.99153, 0.010, -10.7467, -1.2252),
        ),
        ((32.08, 9.58), (36.59, 10.38), (42.58, 13.52)),
    ),
    "sr": PublishedVariable(
        "sr", "Strike rate (SR)", "heterogeneous", 0.000,
        3, {"kind": "welch", "statistic": 24.229, "df1": 2, "df2": 113.346, "p": 0.000},
        4, _mirror(
            (-11.44072, 2.12565, 0.000, -16.4755, -6.4060),
            (-22.94183, 3.81212, 0.000, -32.0487, -13.8349),
            (-11.50111, 3.67609, 0.007, -20.3017, -2.7005),
        ),
        ((58.58, 13.10), (70.02, 17.15), (81.52, 25.44)),
    ),
    "er": PublishedVariable(
        "er", "Economy rate (ER)", "homogeneous", 0.207,
        5, {"kind": "anova", "ss_between": 0.732, "ss_within": 54.136, "ss_total": 54.869,
            "ms_within": 0.192, "statistic": 1.908, "df1": 2, "df2": 282, "p": 0.150},
    ),
    "cbr": PublishedVariable(
        "cbr", "Combined bowling rate (CBR)", "homogeneous", 0.158,
        6, {"kind": "anova", "ss_between": 1.677, "ss_within": 349.978, "ss_total": 351.655,
            "ms_within": 1.241, "statistic": 0.675, "df1": 2, "df2": 282, "p": 0.510},
    ),
    "wpm_top": PublishedVariable(
        "wpm_top", "Top order (1-3) wickets per match", "homogeneous", 0.188,
        7, {"kind": "anova", "ss_between": 2.695, "ss_within": 40.242, "ss_total": 42.937,
            "ms_within": 0.143, "statistic": 9.444, "df1": 2, "df2": 282, "p": 0.000},
        8, _mirror(
            (0.0974522751, 0.0561342972, 0.194, -0.0348089161, 0.2297134665),
            (0.2970956412, 0.0699730168, 0.000, 0.1322282601, 0.4619630224),
            (0.1996433661, 0.0586855667, 0.002, 0.0613709842, 0.3379157479),
        ),
        ((1.14, 0.33), (1.05, 0.37), (0.85, 0.45)),
    ),
    "wpm_middle": PublishedVariable(
        "wpm_middle", "Middle order (4-7) wickets per match", "homogeneous", 0.270,
        9, {"kind": "anova", "ss_between": 5.381, "ss_within": 37.485, "ss_total": 42.866,
            "ms_within": 0.133, "statistic": 20.240, "df1": 2, "df2": 282, "p": 0.000},
        10, _mirror(
            (0.2648447519, 0.0541775293, 0.000, 0.1371940119, 0.3924954919),
            (0.4163082495, 0.0675338494, 0.000, 0.2571879287, 0.5754285703),
            (0.1514634975, 0.0566398650, 0.022, 0.0180111093, 0.2849158858),
        ),
        ((1.31, 0.34), (1.05, 0.35), (0.89, 0.42)),
    ),
    "wpm_lower": PublishedVariable(
        "wpm_lower", "Lower order (8-10) wickets per match", "homogeneous", 0.999,
        11, {"kind": "anova", "ss_between": 4.013, "ss_within": 30.459, "ss_total": 34.472,
             "ms_within": 0.108, "statistic": 18.579, "df1": 2, "df2": 282, "p": 0.000},
        12, _mirror(
            (0.2008943948, 0.0488366468, 0.000, 0.0858276101, 0.3159611796),
            (0.3686478740, 0.0608762856, 0.000, 0.2252138156, 0.5120819325),
            (0.1677534792, 0.0510562426, 0.003, 0.0474569793, 0.2880499791),
        ),
        ((0.92, 0.33), (0.72, 0.33), (0.55, 0.32)),
    ),
}
