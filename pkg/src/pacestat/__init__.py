"""Speed-band comparisons of cricket bowling performance.

The package computes bowling indicators from career records, groups bowlers
by average release speed, and compares the groups with an adaptive
procedure: Levene's test chooses between the classic one-way ANOVA with
Tukey-Kramer comparisons and Welch's ANOVA with Games-Howell comparisons.

Modules
-------
distributions
    Incomplete beta, Student t, F and the studentized range distribution.
hypothesis_tests
    Group summaries, Levene, one-way ANOVA and Welch ANOVA.
posthoc
    Tukey-Kramer and Games-Howell pairwise comparisons.
cricket_metrics
    CSV ingestion, eligibility filters, speed bands and indicators.
pipeline
    The adaptive procedure and markdown/JSON/CSV rendering.
published, replication
    Published summaries and tables, and their recomputation.
montecarlo
    Simulated Type I error of ANOVA versus uncorrected pairwise t-tests.
"""

from pacestat.cricket_metrics import (
    BowlerIndicators,
    BowlerRecord,
    SpeedCategory,
    build_groups,
    classify_speed,
    compute_indicators,
    filter_eligible,
    parse_records,
)
from pacestat.distributions import (
    f_survival,
    normal_cdf,
    regularized_incomplete_beta,
    student_t_cdf,
    studentized_range_cdf,
    studentized_range_quantile,
)
from pacestat.hypothesis_tests import (
    AnovaDecomposition,
    GroupSummary,
    OmnibusResult,
    levene_test,
    oneway_anova,
    summarize,
    welch_anova,
)
from pacestat.montecarlo import SimulationConfig, SimulationOutcome, simulate_type1_error
from pacestat.pipeline import AnalysisReport, render_report, run_pipeline, run_pipeline_from_summaries
from pacestat.posthoc import PairwiseComparison, games_howell, tukey_kramer

__version__ = "0.1.0"
