"""Adaptive comparison of group means and rendering of the result tables.

Levene's test picks the branch. Homogeneous variances go to the classic
one-way ANOVA followed by Tukey-Kramer; heterogeneous variances go to Welch's
ANOVA followed by Games-Howell. Post hoc comparisons run only when the
omnibus test rejects at ``alpha`` unless ``force_posthoc`` is set.
"""

from __future__ import annotations

import csv
import io
import json
import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

import numpy as np

from pacestat.cricket_metrics import CATEGORY_ORDER, GroupedValues
from pacestat.errors import DomainError, StatsError
from pacestat.hypothesis_tests import (
    AnovaDecomposition,
    GroupSummary,
    OmnibusResult,
    levene_test,
    oneway_anova,
    summarize,
    welch_anova,
)
from pacestat.posthoc import PairwiseComparison, games_howell, tukey_kramer

__all__ = [
    "AnalysisReport",
    "run_pipeline",
    "run_pipeline_from_summaries",
    "render_report",
    "format_p",
]

Branch = Literal["homogeneous", "heterogeneous"]
POSTHOC_FOR_BRANCH = {"homogeneous": "tukey-kramer", "heterogeneous": "games-howell"}
OMNIBUS_FOR_BRANCH = {"homogeneous": "anova", "heterogeneous": "welch"}


@dataclass(frozen=True)
class AnalysisReport:
    """Outcome of the adaptive procedure for one dependent variable.

    ``levene`` is ``None`` when the branch was asserted rather than tested;
    ``levene_asserted`` is then ``True`` and ``asserted_levene_p`` may carry
    an externally reported p-value.
    """

    dependent_variable: str
    group_summaries: tuple[GroupSummary, ...]
    levene: OmnibusResult | None
    branch: Branch
    omnibus: OmnibusResult
    alpha: float = 0.05
    decomposition: AnovaDecomposition | None = None
    posthoc: tuple[PairwiseComparison, ...] | None = None
    posthoc_method: str | None = None
    levene_asserted: bool = False
    asserted_levene_p: float | None = None

    def __post_init__(self):
        if self.branch not in POSTHOC_FOR_BRANCH:
            raise DomainError(f"unknown branch {self.branch!r}")
        if self.omnibus.kind != OMNIBUS_FOR_BRANCH[self.branch]:
            raise DomainError(f"{self.omnibus.kind} omnibus cannot sit on the {self.branch} branch")
        if self.decomposition is not None and self.branch != "homogeneous":
            raise DomainError("an ANOVA decomposition belongs to the homogeneous branch only")
        if (self.posthoc is None) != (self.posthoc_method is None):
            raise DomainError("posthoc rows and posthoc_method must be given together")
        if self.posthoc_method is not None and self.posthoc_method != POSTHOC_FOR_BRANCH[self.branch]:
            raise DomainError(f"{self.posthoc_method} cannot follow the {self.branch} branch")
        if self.levene is not None:
            expected = "heterogeneous" if self.levene.p < self.alpha else "homogeneous"
            if expected != self.branch:
                raise DomainError(f"Levene p={self.levene.p:.4g} implies the {expected} branch")
        if self.asserted_levene_p is not None:
            expected = "heterogeneous" if self.asserted_levene_p < self.alpha else "homogeneous"
            if expected != self.branch:
                raise DomainError(
                    f"asserted Levene p={self.asserted_levene_p} implies the {expected} branch")

    @property
    def levene_p(self) -> float | None:
        return self.levene.p if self.levene is not None else self.asserted_levene_p


@contextmanager
def _stage(name: str):
    try:
        yield
    except StatsError as exc:
        if exc.stage is None:
            exc.stage = name
            exc.args = (f"{name}: {exc}",) + exc.args[1:]
        raise


def _labelled_groups(groups) -> tuple[list[str], list[np.ndarray]]:
    if isinstance(groups, GroupedValues):
        return [c.value for c in CATEGORY_ORDER], groups.as_sequence()
    if isinstance(groups, Mapping):
        return [str(k) for k in groups], [np.asarray(v, dtype=float) for v in groups.values()]
    values = [np.asarray(v, dtype=float) for v in groups]
    return [f"G{i + 1}" for i in range(len(values))], values


def _downstream(variable: str, summaries: list[GroupSummary], branch: Branch, alpha: float,
                force_posthoc: bool, ms_within_hint: float | None, **report_fields) -> AnalysisReport:
    decomposition = None
    with _stage("omnibus"):
        if branch == "homogeneous":
            omnibus, decomposition = oneway_anova(summaries)
        else:
            omnibus = welch_anova(summaries)
    posthoc = method = None
    # Zero pooled error leaves Tukey-Kramer undefined; the infinite F is still reported.
    if (omnibus.p < alpha or force_posthoc) and not omnibus.degenerate:
        method = POSTHOC_FOR_BRANCH[branch]
        with _stage("posthoc"):
            if branch == "homogeneous":
                msw = decomposition.ms_within if ms_within_hint is None else ms_within_hint
                posthoc = tuple(tukey_kramer(summaries, msw, decomposition.df_within, alpha))
            else:
                posthoc = tuple(games_howell(summaries, alpha))
    return AnalysisReport(
        dependent_variable=variable,
        group_summaries=tuple(summaries),
        branch=branch,
        omnibus=omnibus,
        alpha=alpha,
        decomposition=decomposition,
        posthoc=posthoc,
        posthoc_method=method,
        **report_fields,
    )


def run_pipeline(groups, alpha: float = 0.05, force_posthoc: bool = False, *,
                 variable: str = "", center: Literal["mean", "median"] = "mean") -> AnalysisReport:
    """Run Levene, the matching omnibus test and, if warranted, post hoc tests.

    Parameters
    ----------
    groups : GroupedValues, mapping of label to values, or sequence of arrays
        Raw observations per group. Unlabelled sequences get labels G1, G2, ...
    alpha : float
        Level for the Levene gate, the omnibus gate and post hoc intervals.
    force_posthoc : bool
        Run post hoc comparisons even when the omnibus test does not reject.
    variable : str
        Name of the dependent variable recorded in the report.
    center : {"mean", "median"}
        Levene centering.

    Raises
    ------
    StatsError
        Any failure of a constituent test; ``exc.stage`` names the step.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if isinstance(groups, GroupedValues) and not variable:
        variable = groups.variable
    labels, values = _labelled_groups(groups)
    with _stage("summarize"):
        summaries = [summarize(v, lab) for lab, v in zip(labels, values)]
    with _stage("levene"):
        lev = levene_test(values, center=center)
    branch: Branch = "heterogeneous" if lev.p < alpha else "homogeneous"
    return _downstream(variable, summaries, branch, alpha, force_posthoc, None, levene=lev)


def run_pipeline_from_summaries(summaries: Sequence[GroupSummary], branch_override: Branch,
                                ms_within_hint: float | None = None, alpha: float = 0.05,
                                force_posthoc: bool = False, *, variable: str = "",
                                levene_p: float | None = None) -> AnalysisReport:
    """Same procedure as :func:`run_pipeline`, starting from group summaries.

    Levene's test needs raw data, so the branch must be supplied. A published
    Levene p-value can be attached with ``levene_p``; it must agree with the
    branch. ``ms_within_hint`` replaces the pooled mean square that Tukey-Kramer
    would otherwise derive as SSW / (N - k).
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if branch_override not in POSTHOC_FOR_BRANCH:
        raise DomainError(f"branch_override must be 'homogeneous' or 'heterogeneous', got {branch_override!r}")
    return _downstream(variable, list(summaries), branch_override, alpha, force_posthoc,
                       ms_within_hint, levene=None, levene_asserted=True,
                       asserted_levene_p=levene_p)


# --- rendering ---------------------------------------------------------------

def format_p(p: float | None) -> str:
    """Three decimals; anything below 5e-4 shows as 0.000."""
    if p is None:
        return ""
    if p < 5e-4:
        return "0.000"
    return f"{p:.3f}"


def _fmt(x: float | None, digits: int = 3) -> str:
    if x is None:
        return ""
    if math.isinf(x):
        return "inf"
    return f"{x:.{digits}f}"


def _json_float(x: float | None):
    if x is None or not math.isfinite(x):
        return None
    return x


def _df_json(x):
    return int(x) if float(x).is_integer() else x


def report_to_dict(report: AnalysisReport) -> dict:
    k = len(report.group_summaries)
    n_total = sum(g.n for g in report.group_summaries)
    lev = report.levene
    out = {
        "variable": report.dependent_variable,
        "alpha": report.alpha,
        "groups": [{"label": g.label, "n": g.n, "mean": g.mean, "sd": g.sd}
                   for g in report.group_summaries],
        "levene": {
            "stat": lev.statistic if lev else None,
            "df1": k - 1,
            "df2": n_total - k,
            "p": report.levene_p,
            "asserted": report.levene_asserted,
        },
        "branch": report.branch,
        "omnibus": {
            "kind": report.omnibus.kind,
            "stat": _json_float(report.omnibus.statistic),
            "df1": _df_json(report.omnibus.df1),
            "df2": _df_json(report.omnibus.df2),
            "p": report.omnibus.p,
            "degenerate": report.omnibus.degenerate,
        },
    }
    if report.decomposition is not None:
        d = report.decomposition
        out["decomposition"] = {
            "ss_between": d.ss_between, "ss_within": d.ss_within, "ss_total": d.ss_total,
            "df_between": d.df_between, "df_within": d.df_within, "ms_within": d.ms_within,
        }
    out["posthoc_method"] = report.posthoc_method
    out["posthoc"] = None if report.posthoc is None else [
        {"i": r.group_i, "j": r.group_j, "diff": r.mean_difference, "se": r.std_error,
         "df": _df_json(r.df), "p": r.p, "ci": [r.ci_lower, r.ci_upper], "significant": r.significant}
        for r in report.posthoc
    ]
    return out


def _markdown(report: AnalysisReport) -> str:
    lines = [f"## {report.dependent_variable or 'Dependent variable'}", ""]
    lines += ["| Group | N | Mean | Std. Deviation |", "|---|---:|---:|---:|"]
    for g in report.group_summaries:
        lines.append(f"| {g.label} | {g.n} | {g.mean:.3f} | {g.sd:.3f} |")
    lines.append("")
    if report.levene is not None:
        lev = report.levene
        lines.append(f"Levene's test: W({lev.df1:g}, {lev.df2:g}) = {lev.statistic:.3f}, "
                     f"Sig. = {format_p(lev.p)}")
    else:
        shown = format_p(report.asserted_levene_p) if report.asserted_levene_p is not None else "n/a"
        lines.append(f"Levene's test: asserted, Sig. = {shown}")
    lines.append(f"Branch: {report.branch}")
    lines.append("")

    om = report.omnibus
    if om.kind == "welch":
        lines += ["| | Statistic* | df1 | df2 | Sig. |", "|---|---:|---:|---:|---:|",
                  f"| Welch | {_fmt(om.statistic)} | {om.df1:g} | {om.df2:.3f} | {format_p(om.p)} |",
                  "", "\\* Asymptotically F distributed."]
    else:
        d = report.decomposition
        lines += ["| | Sum of Squares | df | Mean Square | F | Sig. |",
                  "|---|---:|---:|---:|---:|---:|",
                  f"| Between Groups | {d.ss_between:.3f} | {d.df_between} | {d.ms_between:.3f} "
                  f"| {_fmt(om.statistic)} | {format_p(om.p)} |",
                  f"| Within Groups | {d.ss_within:.3f} | {d.df_within} | {d.ms_within:.3f} | | |",
                  f"| Total | {d.ss_total:.3f} | {d.df_between + d.df_within} | | | |"]
    if om.degenerate:
        lines += ["", "Within-group spread is zero; F is infinite."]
    lines.append("")

    if report.posthoc is not None:
        name = "Tukey-Kramer" if report.posthoc_method == "tukey-kramer" else "Games-Howell"
        conf = round(100 * (1 - report.alpha))
        lines += [f"{name} multiple comparisons", "",
                  f"| (I) | (J) | Mean Difference (I-J) | Std. Error | Sig. | "
                  f"{conf}% CI Lower Bound | {conf}% CI Upper Bound |",
                  "|---|---|---:|---:|---:|---:|---:|"]
        for r in report.posthoc:
            star = "*" if r.significant else ""
            lines.append(f"| {r.group_i} | {r.group_j} | {r.mean_difference:.5f}{star} | "
                         f"{r.std_error:.5f} | {format_p(r.p)} | {r.ci_lower:.4f} | {r.ci_upper:.4f} |")
        lines += ["", f"\\* The mean difference is significant at the {report.alpha:g} level."]
    elif om.degenerate:
        lines.append("No post hoc comparisons (pooled within-group variance is zero).")
    else:
        lines.append(f"No post hoc comparisons (omnibus Sig. = {format_p(om.p)}).")
    return "\n".join(lines) + "\n"


CSV_COLUMNS = ("variable", "section", "i", "j", "n", "mean", "sd", "statistic", "df1", "df2",
               "p", "sum_of_squares", "mean_square", "mean_difference", "std_error",
               "ci_lower", "ci_upper", "significant")


def _csv(report: AnalysisReport, header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if header:
        writer.writeheader()
    var = report.dependent_variable
    for g in report.group_summaries:
        writer.writerow({"variable": var, "section": "summary", "i": g.label, "n": g.n,
                         "mean": f"{g.mean:.7f}", "sd": f"{g.sd:.7f}"})
    k = len(report.group_summaries)
    n_total = sum(g.n for g in report.group_summaries)
    lev = report.levene
    writer.writerow({"variable": var, "section": "levene",
                     "statistic": _fmt(lev.statistic) if lev else "",
                     "df1": k - 1, "df2": n_total - k, "p": format_p(report.levene_p)})
    om = report.omnibus
    writer.writerow({"variable": var, "section": om.kind, "statistic": _fmt(om.statistic),
                     "df1": f"{om.df1:g}", "df2": _fmt(om.df2), "p": format_p(om.p)})
    if report.decomposition is not None:
        d = report.decomposition
        writer.writerow({"variable": var, "section": "between", "df1": d.df_between,
                         "sum_of_squares": _fmt(d.ss_between), "mean_square": _fmt(d.ms_between)})
        writer.writerow({"variable": var, "section": "within", "df1": d.df_within,
                         "sum_of_squares": _fmt(d.ss_within), "mean_square": _fmt(d.ms_within)})
        writer.writerow({"variable": var, "section": "total", "df1": d.df_between + d.df_within,
                         "sum_of_squares": _fmt(d.ss_total)})
    for r in report.posthoc or ():
        writer.writerow({"variable": var, "section": report.posthoc_method, "i": r.group_i,
                         "j": r.group_j, "df1": _fmt(r.df), "p": format_p(r.p),
                         "mean_difference": f"{r.mean_difference:.7f}",
                         "std_error": f"{r.std_error:.7f}", "ci_lower": f"{r.ci_lower:.7f}",
                         "ci_upper": f"{r.ci_upper:.7f}", "significant": int(r.significant)})
    return buf.getvalue()


def render_report(report: AnalysisReport, format: Literal["markdown", "json", "csv"] = "markdown") -> str:
    """Render a report as markdown tables, a JSON document or CSV rows.

    Output is deterministic. JSON keeps full-precision floats; markdown and
    CSV round statistics to 3 decimals and floor tiny p-values at 0.000.
    """
    if format == "markdown":
        return _markdown(report)
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if format == "csv":
        return _csv(report)
    raise DomainError(f"unknown format {format!r}; expected markdown, json or csv")


def render_reports(reports: Sequence[AnalysisReport], format: str = "markdown") -> str:
    """Render several reports as one document of the same format."""
    if format == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    if format == "csv":
        return "".join(_csv(r, header=(i == 0)) for i, r in enumerate(reports))
    return "\n".join(render_report(r, format) for r in reports)
