"""The full reference-scale grid: 4 networks x 6 mu values x 500 runs of
2000 periods. Takes a few minutes on two cores.

This is the configuration behind the acceptance suite: ensemble-mean
top-1 popularity, active-choice counts, overlap, and the rank-size and
lifespan curves for every cell. Outputs go to demo_output/full_sweep/
plus tidy figure-data CSVs that the companion figplots package renders.
"""

import time

from netdrift import ExperimentConfig, export_figure_data, run_ensemble, \
    summarize, write_outputs

cfg = ExperimentConfig(
    networks=["lattice22", "complete475", "metafunnel533", "superstar2420"],
    mus=[0.0, 0.0025, 0.005, 0.0075, 0.01, 0.05],
    periods=2000,
    runs=500,
    master_seed=42,
    workers=2,
)

t0 = time.time()
stats = run_ensemble(cfg, progress=lambda n, mu, dt:
                     print(f"  {n} mu={mu:g}: {dt:.1f}s", flush=True))
print(f"\nfull grid: {time.time() - t0:.0f}s total\n")

print(summarize(stats))

write_outputs(stats, "demo_output/full_sweep")
figs = export_figure_data("demo_output/full_sweep", "demo_output/figure_data")
print("figure data:")
for path in figs:
    print(f"  {path}")
print("\nrender with: python -m figplots demo_output/figure_data demo_output/figures")
