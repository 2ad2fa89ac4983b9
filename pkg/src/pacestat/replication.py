"""Recompute the published tables from the published group summaries."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from pacestat.pipeline import AnalysisReport, run_pipeline_from_summaries
from pacestat.published import PUBLISHED, PublishedVariable

__all__ = ["CellDelta", "VariableReplication", "replicate", "replicate_variable"]


@dataclass(frozen=True)
class CellDelta:
    table: int
    cell: str
    published: float
    computed: float

    @property
    def delta(self) -> float:
        return self.computed - self.published

    def as_dict(self) -> dict:
        return {**asdict(self), "delta": self.delta}


@dataclass(frozen=True)
class VariableReplication:
    variable: str
    published: PublishedVariable
    report: AnalysisReport | None  # None when no summaries were published
    deltas: tuple[CellDelta, ...]
    note: str = ""


def _omnibus_deltas(pub: PublishedVariable, report: AnalysisReport) -> list[CellDelta]:
    t = pub.omnibus_table
    om = report.omnibus
    out = [CellDelta(t, "statistic", pub.omnibus["statistic"], om.statistic),
           CellDelta(t, "df2", pub.omnibus["df2"], om.df2),
           CellDelta(t, "p", pub.omnibus["p"], om.p)]
    if report.decomposition is not None:
        d = report.decomposition
        out += [CellDelta(t, "ss_between", pub.omnibus["ss_between"], d.ss_between),
                CellDelta(t, "ss_within", pub.omnibus["ss_within"], d.ss_within),
                CellDelta(t, "ss_total", pub.omnibus["ss_total"], d.ss_total),
                CellDelta(t, "ms_within", pub.omnibus["ms_within"], d.ms_within)]
    return out


def _posthoc_deltas(pub: PublishedVariable, report: AnalysisReport) -> list[CellDelta]:
    if report.posthoc is None or pub.posthoc_table is None:
        return []
    rows = {(r.group_i, r.group_j): r for r in report.posthoc}
    out = []
    for p in pub.posthoc:
        r = rows[(p.group_i, p.group_j)]
        tag = f"{p.group_i}-{p.group_j}"
        out += [CellDelta(pub.posthoc_table, f"{tag} diff", p.mean_difference, r.mean_difference),
                CellDelta(pub.posthoc_table, f"{tag} se", p.std_error, r.std_error),
                CellDelta(pub.posthoc_table, f"{tag} p", p.p, r.p),
                CellDelta(pub.posthoc_table, f"{tag} ci_lower", p.ci_lower, r.ci_lower),
                CellDelta(pub.posthoc_table, f"{tag} ci_upper", p.ci_upper, r.ci_upper)]
    return out


def replicate_variable(variable: str, alpha: float = 0.05) -> VariableReplication:
    """Rerun one published analysis from its summaries.

    The homogeneous branch uses the published within-group mean square for
    Tukey-Kramer, as the published intervals do.
    """
    pub = PUBLISHED[variable]
    summaries = pub.summaries()
    if summaries is None:
        return VariableReplication(variable, pub, None, (),
                                   note="group means and SDs were not published; table values only")
    hint = pub.omnibus.get("ms_within") if pub.branch == "homogeneous" else None
    report = run_pipeline_from_summaries(summaries, pub.branch, ms_within_hint=hint, alpha=alpha,
                                         variable=variable, levene_p=pub.levene_p)
    deltas = _omnibus_deltas(pub, report) + _posthoc_deltas(pub, report)
    return VariableReplication(variable, pub, report, tuple(deltas))


def replicate(alpha: float = 0.05) -> list[VariableReplication]:
    return [replicate_variable(v, alpha) for v in PUBLISHED]
