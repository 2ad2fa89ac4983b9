"""Recompute the published comparison tables from their group summaries.

Means and SDs were reported to two decimals, so small gaps to the printed
tables are expected. The economy rate and CBR have table values only.
"""

from pacestat.replication import replicate

for rep in replicate():
    print(f"== {rep.published.title}")
    if rep.report is None:
        print("  ", rep.note)
        continue
    print(f"   branch {rep.report.branch}, omnibus {rep.report.omnibus.kind}")
    worst = max(rep.deltas, key=lambda d: abs(d.delta))
    print(f"   {len(rep.deltas)} cells compared; largest gap {worst.cell}: "
          f"{worst.published} vs {worst.computed:.4f}")
