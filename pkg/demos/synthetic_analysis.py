"""End-to-end run on a synthetic bowler table: ingest, filter, analyse, render."""

import numpy as np

from pacestat import build_groups, filter_eligible, parse_records, render_report, run_pipeline
from pacestat.synthetic import synthetic_csv

text = synthetic_csv(seed=3, extra_ineligible=20)
parsed = parse_records(text)
eligible = filter_eligible(parsed.records)
print(f"{len(parsed.records)} records, {len(eligible)} eligible")

# Faster bowlers were drawn with lower averages, so expect a clear effect.
groups = build_groups(eligible, "av")
for cat, values in groups.groups.items():
    print(f"{cat.value:>4}: n={values.size:3d} mean={np.mean(values):6.2f}")

report = run_pipeline(groups)
print(render_report(report, "markdown"))
