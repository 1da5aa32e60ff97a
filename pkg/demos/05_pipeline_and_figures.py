"""End-to-end pipeline: config -> instances -> exact -> sweep -> analysis CSVs
-> report figures.

Everything is driven through the CLI entry points, exactly as a batch run
would be; rerunning reproduces byte-identical CSVs.  Figure rendering needs
the reports component built once: `cd reports && npm install && npm run build`.
"""

import tempfile
from pathlib import Path

from annealbench.cli import main

CONFIG = """\
sizes = 1x1, 2x2
ranges = 1
instances = 10
seed = 4242
ta_grid = 1, 4, 16, 64
solvers = sa, sqa
sa_runs = 128
sqa_runs = 16
sqa_slices = 8
gauges = 2
quantiles = 50, 90
out_dir = {out}
"""

work = Path(tempfile.mkdtemp(prefix="annealbench-demo-"))
cfg = work / "bench.cfg"
cfg.write_text(CONFIG.format(out=work / "run"))

for step in (
    ["generate", "--config", cfg],
    ["solve-exact", "--config", cfg],
    ["sweep", "--config", cfg],
    ["analyze", "--config", cfg, "--mode", "speedup"],
):
    print(f"$ annealbench {' '.join(str(a) for a in step)}")
    code = main([str(a) for a in step])
    assert code == 0, f"step failed with exit code {code}"

analysis = work / "run" / "analysis"
print(f"\nanalysis tables under {analysis}:")
for path in sorted(analysis.iterdir()):
    print(f"  {path.name}: {len(path.read_text().splitlines()) - 2} rows")

reports = Path(__file__).resolve().parent.parent / "reports"
if (reports / "dist" / "cli.js").exists():
    for fig in (
        ["effort-vs-n", "--in", analysis / "curves.csv", "--solver", "sa",
         "--q", "50", "--out", work / "fig_envelope.svg"],
        ["scatter", "--in", analysis / "pairs.csv", "--out", work / "fig_scatter.svg"],
    ):
        code = main(["report", "--reports-dir", str(reports), "--", *[str(a) for a in fig]])
        assert code == 0
    print(f"\nfigures written: {work/'fig_envelope.svg'}, {work/'fig_scatter.svg'}")
else:
    print("\n(reports component not built; skipping figure rendering)")
