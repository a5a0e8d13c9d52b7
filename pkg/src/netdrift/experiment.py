"""Ensemble sweeps: (network, mu) cells x R seeded runs, plus persistence.

Every run is reduced to small per-run statistics as soon as it finishes;
aggregation uses only integer sums (rank-wise and scalar), so ensemble
results are bit-identical regardless of how many workers execute the runs
or in which order they complete.
"""

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import DEFAULT_THRESHOLD_CAP, SimParams, derive_seed, run
from .netgen import PRESETS, Network, build_preset
from .metrics import lifespans as _lifespans

SEED_RULE = ("seed(run r of cell c) = mix64(mix64(mix64(mix64(master) ^ "
             "network_index) ^ mu_index) ^ r), splitmix64 finalizer")


@dataclass
class ExperimentConfig:
    networks: list = field(default_factory=lambda: list(PRESETS))
    mus: list = field(default_factory=lambda: [0.0, 0.0025, 0.005, 0.0075, 0.01, 0.05])
    periods: int = 2000
    runs: int = 500
    master_seed: int = 1
    top_k: int = 100
    active_threshold: int = 5
    workers: int | None = None

    def __post_init__(self):
        if not self.networks:
            raise ValueError("config needs at least one network")
        for name in self.networks:
            if name not in PRESETS:
                raise ValueError(f"unknown network preset {name!r}")
        for mu in self.mus:
            if not 0.0 <= mu <= 1.0:
                raise ValueError(f"mu must be in [0, 1], got {mu}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.periods < 1:
            raise ValueError("periods must be >= 1")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.active_threshold < 1:
            raise ValueError("active_threshold must be >= 1")


@dataclass
class CellStats:
    network: str
    mu: float
    runs: int
    mean_rank_size: np.ndarray
    mean_survivor_lifespans: np.ndarray
    mean_popular_lifespans: np.ndarray
    top1_mean: float
    top1_se: float
    overlap_mean: float
    overlap_se: float
    active_mean: float
    active_se: float
    distinct_mean: float
    distinct_se: float


@dataclass
class EnsembleStats:
    config: ExperimentConfig
    cells: dict  # (network_name, mu) -> CellStats


def _reduce_run(net: Network, mu: float, periods: int, seed: int,
                top_k: int, threshold: int, threshold_cap: int):
    """Run once and boil the RunRecord down to per-run integers/curves."""
    rec = run(net, SimParams(mu=mu, periods=periods, seed=seed),
              threshold_cap=threshold_cap)
    total = rec.total_selections
    assert total.sum() == net.node_count * periods  # conservation, every run
    life = _lifespans(rec)
    ids = np.arange(total.size)
    curve = np.sort(total)[::-1]
    pop_ids = np.lexsort((ids, -total))[:top_k]
    surv_ids = np.lexsort((ids, -life))[:top_k]
    surv_curve = np.sort(life[surv_ids])[::-1]
    pop_curve = np.sort(life[pop_ids])[::-1]
    overlap = np.intersect1d(pop_ids, surv_ids).size
    active_sum = int(rec.active_ge[:, threshold - 1].sum())
    return curve, surv_curve, pop_curve, int(curve[0]), int(overlap), active_sum, total.size


def _add_padded(acc: np.ndarray, curve: np.ndarray) -> np.ndarray:
    if curve.size > acc.size:
        grown = np.zeros(curve.size, dtype=np.int64)
        grown[:acc.size] = acc
        acc = grown
    acc[:curve.size] += curve
    return acc


def _mean_se(values: np.ndarray):
    mean = float(values.mean())
    if values.size < 2:
        return mean, 0.0
    return mean, float(values.std(ddof=1) / np.sqrt(values.size))


def run_cell(net: Network, name: str, mu: float, cfg: ExperimentConfig,
             seeds: list) -> CellStats:
    """Execute cfg.runs seeded runs for one (network, mu) cell and aggregate."""
    threshold_cap = max(DEFAULT_THRESHOLD_CAP, cfg.active_threshold)
    k = cfg.top_k
    rank_acc = np.zeros(0, dtype=np.int64)
    surv_acc = np.zeros(k, dtype=np.int64)
    pop_acc = np.zeros(k, dtype=np.int64)
    top1 = np.zeros(cfg.runs, dtype=np.int64)
    overlap = np.zeros(cfg.runs, dtype=np.int64)
    active_sum = np.zeros(cfg.runs, dtype=np.int64)
    distinct = np.zeros(cfg.runs, dtype=np.int64)

    def worker(r):
        return r, _reduce_run(net, mu, cfg.periods, seeds[r], k,
                              cfg.active_threshold, threshold_cap)

    workers = cfg.workers or 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(worker, range(cfg.runs))
            reduced = list(results)
    else:
        reduced = [worker(r) for r in range(cfg.runs)]

    for r, (curve, surv_curve, pop_curve, t1, ov, act, dist) in reduced:
        rank_acc = _add_padded(rank_acc, curve)
        surv_acc[:surv_curve.size] += surv_curve
        pop_acc[:pop_curve.size] += pop_curve
        top1[r] = t1
        overlap[r] = ov
        active_sum[r] = act
        distinct[r] = dist

    top1_mean, top1_se = _mean_se(top1.astype(np.float64))
    ov_mean, ov_se = _mean_se(overlap.astype(np.float64))
    act_per_run = active_sum.astype(np.float64) / cfg.periods
    act_mean, act_se = _mean_se(act_per_run)
    dist_mean, dist_se = _mean_se(distinct.astype(np.float64))
    return CellStats(
        network=name, mu=mu, runs=cfg.runs,
        mean_rank_size=rank_acc / cfg.runs,
        mean_survivor_lifespans=surv_acc / cfg.runs,
        mean_popular_lifespans=pop_acc / cfg.runs,
        top1_mean=top1_mean, top1_se=top1_se,
        overlap_mean=ov_mean, overlap_se=ov_se,
        active_mean=act_mean, active_se=act_se,
        distinct_mean=dist_mean, distinct_se=dist_se,
    )


def cell_seeds(cfg: ExperimentConfig, network_index: int, mu_index: int) -> list:
    return [derive_seed(cfg.master_seed, network_index, mu_index, r)
            for r in range(cfg.runs)]


def run_ensemble(cfg: ExperimentConfig, progress=None) -> EnsembleStats:
    """All (network, mu) cells of the configured grid."""
    cells = {}
    for ni, name in enumerate(cfg.networks):
        net = build_preset(name)
        for mi, mu in enumerate(cfg.mus):
            t0 = time.time()
            stats = run_cell(net, name, mu, cfg, cell_seeds(cfg, ni, mi))
            cells[(name, mu)] = stats
            if progress is not None:
                progress(name, mu, time.time() - t0)
    return EnsembleStats(config=cfg, cells=cells)


def format_mu(mu: float) -> str:
    return f"{mu:g}"


SUMMARY_FIELDS = ["network", "mu", "runs", "top1_mean", "top1_se",
                  "overlap_mean", "overlap_se", "active_mean", "active_se",
                  "distinct_mean", "distinct_se"]


def summary_rows(stats: EnsembleStats) -> list:
    rows = []
    for name in stats.config.networks:
        for mu in stats.config.mus:
            c = stats.cells[(name, mu)]
            rows.append({
                "network": name, "mu": format_mu(mu), "runs": c.runs,
                "top1_mean": repr(c.top1_mean), "top1_se": repr(c.top1_se),
                "overlap_mean": repr(c.overlap_mean), "overlap_se": repr(c.overlap_se),
                "active_mean": repr(c.active_mean), "active_se": repr(c.active_se),
                "distinct_mean": repr(c.distinct_mean), "distinct_se": repr(c.distinct_se),
            })
    return rows


def summarize(stats: EnsembleStats) -> str:
    """Three grids (rows = networks, columns = mu): top-1 popularity,
    top-k set overlap, and mean active choices, each with standard errors."""
    cfg = stats.config
    blocks = []
    grids = [
        ("Top-1 popularity (mean over runs)", "top1_mean", "top1_se", ".1f"),
        (f"Top-{cfg.top_k} popular/survivor overlap", "overlap_mean", "overlap_se", ".2f"),
        (f"Active choices per period (threshold {cfg.active_threshold})",
         "active_mean", "active_se", ".2f"),
    ]
    header = ["network"] + [f"mu={format_mu(mu)}" for mu in cfg.mus]
    for title, mean_attr, se_attr, fmt in grids:
        rows = [header]
        for name in cfg.networks:
            row = [name]
            for mu in cfg.mus:
                c = stats.cells[(name, mu)]
                row.append(f"{getattr(c, mean_attr):{fmt}} ({getattr(c, se_attr):{fmt}})")
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        lines = [title]
        for r in rows:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _write_curve_csv(path: Path, header: str, curve: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"rank,{header}\n")
        for rank, value in enumerate(curve, start=1):
            fh.write(f"{rank},{float(value)!r}\n")


def write_outputs(stats: EnsembleStats, outdir) -> list:
    """Persist all per-cell curves, summary.csv and the run manifest.

    Returns the list of written paths. Everything except the manifest's
    timestamp field is deterministic for a fixed config.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    cfg = stats.config
    for name in cfg.networks:
        for mu in cfg.mus:
            c = stats.cells[(name, mu)]
            tag = f"{name}_{format_mu(mu)}"
            for fname, header, curve in [
                    (f"ranksize_{tag}.csv", "mean_count", c.mean_rank_size),
                    (f"lifespans_survivors_{tag}.csv", "mean_lifespan",
                     c.mean_survivor_lifespans),
                    (f"lifespans_popular_{tag}.csv", "mean_lifespan",
                     c.mean_popular_lifespans)]:
                path = outdir / fname
                _write_curve_csv(path, header, curve)
                written.append(path)

    summary = outdir / "summary.csv"
    with open(summary, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        writer.writerows(summary_rows(stats))
    written.append(summary)

    manifest = {
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "code_version": __version__,
        "config": asdict(cfg),
        "seed_rule": SEED_RULE,
        "cell_seeds": {
            f"{name}|{format_mu(mu)}": cell_seeds(cfg, ni, mi)
            for ni, name in enumerate(cfg.networks)
            for mi, mu in enumerate(cfg.mus)
        },
    }
    manifest_path = outdir / "manifest.json"
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(manifest_path)
    return written


def read_summary(path) -> list:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


FIGURE_KINDS = {
    "ranksize": ("ranksize", "mean_count"),
    "lifespans_survivors": ("lifespans_survivors", "mean_lifespan"),
    "lifespans_popular": ("lifespans_popular", "mean_lifespan"),
}


def export_figure_data(results_dir, out_dir) -> list:
    """Tidy long-format (network, mu, rank, value) CSVs from sweep outputs."""
    results_dir = Path(results_dir)
    out_dir = Path(out_dir)
    summary = results_dir / "summary.csv"
    if not summary.exists():
        raise FileNotFoundError(f"missing input file: {summary}")
    rows = read_summary(summary)
    cells = [(r["network"], r["mu"]) for r in rows]

    missing = []
    for kind, (prefix, _) in FIGURE_KINDS.items():
        for name, mu in cells:
            path = results_dir / f"{prefix}_{name}_{mu}.csv"
            if not path.exists():
                missing.append(path)
    if missing:
        listing = "\n  ".join(str(p) for p in missing)
        raise FileNotFoundError(f"missing input files:\n  {listing}")

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for kind, (prefix, header) in FIGURE_KINDS.items():
        out_path = out_dir / f"figdata_{kind}.csv"
        with open(out_path, "w", newline="") as fh:
            fh.write("network,mu,rank,value\n")
            for name, mu in cells:
                src = results_dir / f"{prefix}_{name}_{mu}.csv"
                with open(src, newline="") as sf:
                    for row in csv.DictReader(sf):
                        fh.write(f"{name},{mu},{row['rank']},{row[header]}\n")
        written.append(out_path)
    return written
