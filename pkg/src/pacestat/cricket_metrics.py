"""Bowler records: CSV ingestion, eligibility, speed bands and indicators.

Input is comma-separated UTF-8 text with a header row and the columns in
:data:`REQUIRED_COLUMNS` plus ``avg_release_speed_kmh`` and
``speed_category``, at least one of which must be filled in per row.
Overs are always ``balls / 6``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from pacestat.errors import (
    DomainError,
    EmptyGroupError,
    NotPaceError,
    SchemaError,
    UndefinedIndicatorError,
)

__all__ = [
    "SpeedCategory",
    "BowlerRecord",
    "BowlerIndicators",
    "RowRejection",
    "ParseResult",
    "GroupedValues",
    "VARIABLES",
    "parse_records",
    "filter_eligible",
    "classify_speed",
    "compute_indicators",
    "build_groups",
]


class SpeedCategory(str, enum.Enum):
    FAST = "Fast"
    FAST_MEDIUM = "FM"
    MEDIUM_FAST = "MF"

    def __str__(self) -> str:
        return self.value


CATEGORY_ORDER = (SpeedCategory.FAST, SpeedCategory.FAST_MEDIUM, SpeedCategory.MEDIUM_FAST)

FAST_ABOVE_KMH = 142.0
FAST_MEDIUM_FROM_KMH = 130.0
PACE_FROM_KMH = 120.0

BIRTH_CUTOFF = date(1955, 1, 1)
MIN_MATCHES_EXCLUSIVE = 5
MIN_OVERS_PER_MATCH_EXCLUSIVE = 15.0

REQUIRED_COLUMNS = (
    "player_id",
    "name",
    "date_of_birth",
    "matches",
    "balls_bowled",
    "runs_conceded",
    "wickets_total",
    "wickets_top",
    "wickets_middle",
    "wickets_lower",
)
SPEED_COLUMN = "avg_release_speed_kmh"
CATEGORY_COLUMN = "speed_category"
COLUMNS = REQUIRED_COLUMNS + (SPEED_COLUMN, CATEGORY_COLUMN)

VARIABLES = ("av", "sr", "er", "cbr", "wpm_top", "wpm_middle", "wpm_lower")


@dataclass(frozen=True)
class BowlerRecord:
    player_id: str
    name: str
    date_of_birth: date
    matches: int
    balls_bowled: int
    runs_conceded: int
    wickets_total: int
    wickets_top: int
    wickets_middle: int
    wickets_lower: int
    avg_release_speed: float | None = None
    speed_category: SpeedCategory | None = None

    def __post_init__(self):
        if self.matches < 1:
            raise DomainError(f"{self.player_id}: matches must be >= 1")
        for name in ("balls_bowled", "runs_conceded", "wickets_total",
                     "wickets_top", "wickets_middle", "wickets_lower"):
            if getattr(self, name) < 0:
                raise DomainError(f"{self.player_id}: {name} must be nonnegative")
        if self.wickets_top + self.wickets_middle + self.wickets_lower > self.wickets_total:
            raise DomainError(f"{self.player_id}: stratum wickets exceed wickets_total")
        if self.avg_release_speed is None and self.speed_category is None:
            raise DomainError(f"{self.player_id}: needs a release speed or a speed category")

    @property
    def overs(self) -> float:
        return self.balls_bowled / 6.0

    @property
    def category(self) -> SpeedCategory:
        """Speed band, from the measured speed when present."""
        if self.avg_release_speed is not None:
            return classify_speed(self.avg_release_speed)
        return self.speed_category


@dataclass(frozen=True)
class BowlerIndicators:
    """Career indicators; ``None`` marks a value with a zero denominator."""

    av: float | None
    sr: float | None
    er: float | None
    cbr: float | None
    wpm_top: float
    wpm_middle: float
    wpm_lower: float

    def value(self, variable: str) -> float:
        if variable not in VARIABLES:
            raise DomainError(f"unknown variable {variable!r}; expected one of {VARIABLES}")
        v = getattr(self, variable)
        if v is None:
            raise UndefinedIndicatorError(f"{variable} is undefined for this bowler")
        return v


@dataclass(frozen=True)
class RowRejection:
    row: int  # 1-based data row number (header excluded)
    column: str | None
    reason: str


@dataclass
class ParseResult:
    records: list[BowlerRecord] = field(default_factory=list)
    rejections: list[RowRejection] = field(default_factory=list)


def classify_speed(avg_release_speed: float) -> SpeedCategory:
    """Map an average release speed in km/h to its band.

    Fast is above 142, Fast-Medium covers [130, 142] and Medium-Fast
    [120, 130). Slower bowlers raise :class:`NotPaceError`.
    """
    if math.isnan(avg_release_speed) or avg_release_speed <= 0:
        raise DomainError(f"release speed must be positive, got {avg_release_speed}")
    if avg_release_speed > FAST_ABOVE_KMH:
        return SpeedCategory.FAST
    if avg_release_speed >= FAST_MEDIUM_FROM_KMH:
        return SpeedCategory.FAST_MEDIUM
    if avg_release_speed >= PACE_FROM_KMH:
        return SpeedCategory.MEDIUM_FAST
    raise NotPaceError(f"{avg_release_speed} km/h is below the {PACE_FROM_KMH} km/h pace threshold")


def _parse_int(text: str) -> int:
    value = int(text.strip())
    if value < 0:
        raise ValueError("negative")
    return value


def _parse_row(raw: Mapping[str, str]) -> BowlerRecord:
    """Convert one CSV row; raises ``(column, message)`` via _RowError."""

    def get(col: str) -> str:
        text = raw.get(col)
        if text is None or text.strip() == "":
            raise _RowError(col, "missing value")
        return text.strip()

    try:
        dob = date.fromisoformat(get("date_of_birth"))
    except ValueError:
        raise _RowError("date_of_birth", f"malformed date {raw.get('date_of_birth')!r}") from None

    ints = {}
    for col in ("matches", "balls_bowled", "runs_conceded", "wickets_total",
                "wickets_top", "wickets_middle", "wickets_lower"):
        text = get(col)
        try:
            ints[col] = _parse_int(text)
        except ValueError:
            raise _RowError(col, f"expected a nonnegative integer, got {text!r}") from None

    speed_text = (raw.get(SPEED_COLUMN) or "").strip()
    cat_text = (raw.get(CATEGORY_COLUMN) or "").strip()
    if not speed_text and not cat_text:
        raise _RowError(SPEED_COLUMN, f"one of {SPEED_COLUMN} or {CATEGORY_COLUMN} is required")
    speed = None
    if speed_text:
        try:
            speed = float(speed_text)
        except ValueError:
            raise _RowError(SPEED_COLUMN, f"expected a number, got {speed_text!r}") from None
        if not speed > 0:
            raise _RowError(SPEED_COLUMN, f"speed must be positive, got {speed}")
    category = None
    if cat_text:
        try:
            category = SpeedCategory(cat_text)
        except ValueError:
            raise _RowError(CATEGORY_COLUMN, f"expected Fast, FM or MF, got {cat_text!r}") from None
    if speed is not None and category is not None:
        try:
            derived = classify_speed(speed)
        except NotPaceError:
            derived = None
        if derived is not category:
            raise _RowError(CATEGORY_COLUMN,
                            f"category {category.value} disagrees with speed {speed} km/h")

    try:
        return BowlerRecord(
            player_id=get("player_id"),
            name=get("name"),
            date_of_birth=dob,
            avg_release_speed=speed,
            speed_category=category,
            **ints,
        )
    except DomainError as exc:
        raise _RowError(None, str(exc)) from None


class _RowError(Exception):
    def __init__(self, column: str | None, reason: str):
        super().__init__(reason)
        self.column = column
        self.reason = reason


def parse_records(source: TextIO | str) -> ParseResult:
    """Read bowler records from CSV text or an open text stream.

    Rows that fail validation are reported in ``rejections`` with their
    1-based data row number; they are never dropped silently.

    Raises
    ------
    SchemaError
        If the header lacks a required column.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    reader = csv.DictReader(stream)
    header = reader.fieldnames
    if header is None:
        raise SchemaError("input has no header row")
    header = [h.strip() for h in header]
    reader.fieldnames = header
    for col in REQUIRED_COLUMNS + (SPEED_COLUMN, CATEGORY_COLUMN):
        if col not in header:
            raise SchemaError(f"missing required column {col!r}")
    result = ParseResult()
    for row_no, raw in enumerate(reader, start=1):
        try:
            result.records.append(_parse_row(raw))
        except _RowError as err:
            result.rejections.append(RowRejection(row_no, err.column, err.reason))
    return result


def _classifiable(record: BowlerRecord) -> bool:
    if record.avg_release_speed is None:
        return record.speed_category is not None
    return record.avg_release_speed >= PACE_FROM_KMH


def filter_eligible(records: Iterable[BowlerRecord], reference_date: date = BIRTH_CUTOFF,
                    min_matches: int = MIN_MATCHES_EXCLUSIVE,
                    min_overs_per_match: float = MIN_OVERS_PER_MATCH_EXCLUSIVE) -> list[BowlerRecord]:
    """Keep full-time pace bowlers of the modern era.

    All comparisons are strict: more than ``min_matches`` matches, more than
    ``min_overs_per_match`` overs per match played, born after
    ``reference_date``, and a release speed in a pace band.
    """
    return [
        r for r in records
        if r.matches > min_matches
        and r.overs / r.matches > min_overs_per_match
        and r.date_of_birth > reference_date
        and _classifiable(r)
    ]


def compute_indicators(record: BowlerRecord) -> BowlerIndicators:
    """Average, strike rate, economy rate, CBR and wickets per match by stratum.

    CBR is the harmonic mean of the first three; a zero component makes it 0.
    """
    w, balls, runs = record.wickets_total, record.balls_bowled, record.runs_conceded
    av = runs / w if w > 0 else None
    sr = balls / w if w > 0 else None
    er = runs / (balls / 6.0) if balls > 0 else None
    if av is None or sr is None or er is None:
        cbr = None
    elif min(av, sr, er) == 0:
        cbr = 0.0
    else:
        cbr = 3.0 / (1.0 / av + 1.0 / sr + 1.0 / er)
    m = record.matches
    return BowlerIndicators(
        av=av,
        sr=sr,
        er=er,
        cbr=cbr,
        wpm_top=record.wickets_top / m,
        wpm_middle=record.wickets_middle / m,
        wpm_lower=record.wickets_lower / m,
    )


@dataclass(frozen=True)
class GroupedValues:
    variable: str
    groups: dict[SpeedCategory, np.ndarray]
    excluded: int  # records whose indicator is undefined for this variable

    def as_sequence(self) -> list[np.ndarray]:
        return [self.groups[c] for c in CATEGORY_ORDER]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.groups[c]) for c in CATEGORY_ORDER)


def build_groups(records: Sequence[BowlerRecord], dependent_variable: str) -> GroupedValues:
    """Collect one indicator per speed category, in Fast, FM, MF order.

    Raises
    ------
    EmptyGroupError
        If a category ends up with no values.
    """
    if dependent_variable not in VARIABLES:
        raise DomainError(f"unknown variable {dependent_variable!r}; expected one of {VARIABLES}")
    buckets: dict[SpeedCategory, list[float]] = {c: [] for c in CATEGORY_ORDER}
    excluded = 0
    for r in records:
        try:
            v = compute_indicators(r).value(dependent_variable)
        except UndefinedIndicatorError:
            excluded += 1
            continue
        buckets[r.category].append(v)
    for c in CATEGORY_ORDER:
        if not buckets[c]:
            raise EmptyGroupError(f"category {c.value} has no values for {dependent_variable}")
    return GroupedValues(
        dependent_variable,
        {c: np.asarray(buckets[c], dtype=float) for c in CATEGORY_ORDER},
        excluded,
    )
