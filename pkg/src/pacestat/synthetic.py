"""Synthetic bowler tables in the ingestion CSV schema, for demos and tests."""

from __future__ import annotations

import csv
import io
from datetime import date, timedelta

import numpy as np

from pacestat.cricket_metrics import COLUMNS

# Release-speed ranges (km/h) used to draw each band's bowlers.
_SPEED_RANGES = {"Fast": (142.5, 152.0), "FM": (130.0, 142.0), "MF": (120.0, 129.9)}


def synthetic_rows(rng: np.random.Generator, sizes=(62, 168, 55),
                   average_by_band=(32.0, 36.5, 42.5), extra_ineligible: int = 0) -> list[dict]:
    """Draw plausible career lines; faster bands get lower bowling averages.

    ``extra_ineligible`` appends rows that fail the eligibility filters
    (too few matches, too few overs, too old, or too slow) in rotation.
    """
    rows = []
    pid = 0
    for (band, (lo, hi)), n, avg in zip(_SPEED_RANGES.items(), sizes, average_by_band):
        for _ in range(n):
            pid += 1
            matches = int(rng.integers(8, 120))
            balls = int(matches * rng.uniform(100, 260))
            economy = rng.normal(3.0, 0.4)
            runs = max(1, int(balls / 6 * economy))
            wickets = max(1, int(round(runs / max(15.0, rng.normal(avg, 0.25 * avg)))))
            shares = rng.dirichlet([4.0, 4.5, 3.0])
            strata = np.floor(shares * wickets * 0.97).astype(int)
            rows.append({
                "player_id": f"P{pid:04d}",
                "name": f"Bowler {pid}",
                "date_of_birth": (date(1956, 1, 1) + timedelta(days=int(rng.integers(0, 12000)))).isoformat(),
                "matches": matches,
                "balls_bowled": balls,
                "runs_conceded": runs,
                "wickets_total": wickets,
                "wickets_top": int(strata[0]),
                "wickets_middle": int(strata[1]),
                "wickets_lower": int(strata[2]),
                "avg_release_speed_kmh": f"{rng.uniform(lo, hi):.1f}",
                "speed_category": "",
            })
    for i in range(extra_ineligible):
        pid += 1
        row = dict(rows[i % len(rows)])
        row["player_id"] = f"P{pid:04d}"
        kind = i % 4
        if kind == 0:
            row["matches"] = 5
        elif kind == 1:
            row["balls_bowled"] = int(row["matches"]) * 6 * 15
        elif kind == 2:
            row["date_of_birth"] = "1954-12-31"
        else:
            row["avg_release_speed_kmh"] = "112.0"
        rows.append(row)
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def synthetic_csv(seed: int = 0, **kwargs) -> str:
    return to_csv(synthetic_rows(np.random.default_rng(seed), **kwargs))
