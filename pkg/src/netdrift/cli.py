"""Command-line entry point.

Subcommands: net (write a topology as an edge list), run (single seeded
run), sweep (full ensemble grid from a config file), stats (tables from a
finished sweep), figures (tidy CSV export for plotting).

Standard output carries machine-readable results; progress goes to
standard error. Exit codes: 0 success, 1 usage error, 2 runtime error.
The NETDRIFT_OUT environment variable supplies the default output
directory for sweep and figures.
"""

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from . import dynamics, experiment, metrics, netgen


class UsageError(Exception):
    pass


def _preset_or_file(args) -> netgen.Network:
    if getattr(args, "preset", None):
        if args.preset not in netgen.PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; "
                             f"choose from {sorted(netgen.PRESETS)}")
        return netgen.build_preset(args.preset)
    if getattr(args, "network_file", None):
        text = Path(args.network_file).read_text()
        return netgen.parse_network(text)
    raise UsageError("need --preset or --network-file")


def _print_net_info(net: netgen.Network) -> None:
    ds = metrics.degree_stats(net)
    print(f"kind={net.kind}")
    print(f"params={','.join(f'{k}={v}' for k, v in sorted(net.params.items()))}")
    print(f"nodes={net.node_count}")
    print(f"edges={net.edge_count}")
    print(f"degree_mean={ds.mean!r}")
    print(f"degree_variance={ds.variance!r}")
    print(f"degree_skewness={ds.skewness!r}")


def cmd_net(args) -> int:
    if args.preset:
        if args.preset not in netgen.PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; "
                             f"choose from {sorted(netgen.PRESETS)}")
        net = netgen.build_preset(args.preset)
    elif args.lattice:
        net = netgen.build_lattice(args.lattice)
    elif args.complete:
        net = netgen.build_complete(args.complete)
    elif args.metafunnel:
        net = netgen.build_metafunnel(*args.metafunnel)
    elif args.superstar:
        net = netgen.build_superstar(*args.superstar)
    else:
        raise UsageError("need --preset or explicit topology parameters")
    out = args.out or f"{net.kind}.edges"
    Path(out).write_text(netgen.serialize_network(net))
    _print_net_info(net)
    print(f"written={out}")
    return 0


def cmd_run(args) -> int:
    net = _preset_or_file(args)
    params = dynamics.SimParams(mu=args.mu, periods=args.periods, seed=args.seed)
    cap = max(dynamics.DEFAULT_THRESHOLD_CAP, args.threshold)
    if args.trace:
        rec, trace = dynamics.run(net, params, threshold_cap=cap, collect_trace=True)
        dynamics.write_trace(args.trace, trace)
        print(f"trace={args.trace}", file=sys.stderr)
    else:
        rec = dynamics.run(net, params, threshold_cap=cap)
    curve = metrics.rank_size(rec)
    print(f"nodes={rec.n_agents}")
    print(f"periods={rec.periods}")
    print(f"mu={experiment.format_mu(args.mu)}")
    print(f"seed={args.seed}")
    print(f"distinct_choices_ever={rec.distinct_choices_ever}")
    print(f"top1_popularity={int(curve[0])}")
    print(f"top{args.top_k}_overlap={metrics.top_overlap(rec, args.top_k)}")
    print(f"active_mean={metrics.active_choices(rec, args.threshold)!r}")
    return 0


def _parse_config_file(path: Path) -> dict:
    values = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, val = line.split("=", 1)
        values[key.strip()] = val.strip()
    return values


def _build_config(args) -> experiment.ExperimentConfig:
    values = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        values = _parse_config_file(path)
    kwargs = {}
    if "networks" in values:
        kwargs["networks"] = [s.strip() for s in values["networks"].split(",") if s.strip()]
    if "mus" in values:
        kwargs["mus"] = [float(s) for s in values["mus"].split(",") if s.strip()]
    for key, conv in [("periods", int), ("runs", int), ("master_seed", int),
                      ("top_k", int), ("active_threshold", int), ("workers", int)]:
        if key in values:
            kwargs[key] = conv(values[key])
    # flags override file values
    if args.mu is not None:
        kwargs["mus"] = [float(s) for s in args.mu.split(",")]
    if args.periods is not None:
        kwargs["periods"] = args.periods
    if args.runs is not None:
        kwargs["runs"] = args.runs
    if args.seed is not None:
        kwargs["master_seed"] = args.seed
    if args.top_k is not None:
        kwargs["top_k"] = args.top_k
    if args.threshold is not None:
        kwargs["active_threshold"] = args.threshold
    if args.workers is not None:
        kwargs["workers"] = args.workers
    elif "workers" not in kwargs:
        kwargs["workers"] = os.cpu_count()
    try:
        return experiment.ExperimentConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _default_out(args, fallback: str) -> Path:
    if args.out:
        return Path(args.out)
    env = os.environ.get("NETDRIFT_OUT")
    if env:
        return Path(env)
    return Path(fallback)


def cmd_sweep(args) -> int:
    cfg = _build_config(args)
    outdir = _default_out(args, "sweep_out")

    def progress(name, mu, elapsed):
        print(f"[sweep] {name} mu={experiment.format_mu(mu)} "
              f"({cfg.runs} runs, {elapsed:.1f}s)", file=sys.stderr)

    stats = experiment.run_ensemble(cfg, progress=progress)
    experiment.write_outputs(stats, outdir)
    sys.stdout.write((outdir / "summary.csv").read_text())
    return 0


def _grid_from_rows(rows, mean_key, se_key, title):
    networks = list(dict.fromkeys(r["network"] for r in rows))
    mus = list(dict.fromkeys(r["mu"] for r in rows))
    by_cell = {(r["network"], r["mu"]): r for r in rows}
    header = ["network"] + [f"mu={m}" for m in mus]
    table = [header]
    for name in networks:
        row = [name]
        for mu in mus:
            r = by_cell.get((name, mu))
            if r is None:
                row.append("-")
            else:
                row.append(f"{float(r[mean_key]):.2f} ({float(r[se_key]):.2f})")
        table.append(row)
    widths = [max(len(t[i]) for t in table) for i in range(len(header))]
    lines = [title]
    for t in table:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(t, widths)))
    return "\n".join(lines)


def cmd_stats(args) -> int:
    if args.network_file:
        net = netgen.parse_network(Path(args.network_file).read_text())
        _print_net_info(net)
        return 0
    if not args.results:
        raise UsageError("need --results or --network-file")
    summary = Path(args.results) / "summary.csv"
    if not summary.exists():
        raise FileNotFoundError(f"missing input file: {summary}")
    rows = experiment.read_summary(summary)
    print(_grid_from_rows(rows, "top1_mean", "top1_se", "Top-1 popularity"))
    print()
    print(_grid_from_rows(rows, "overlap_mean", "overlap_se", "Popular/survivor overlap"))
    print()
    print(_grid_from_rows(rows, "active_mean", "active_se", "Active choices per period"))
    return 0


def cmd_figures(args) -> int:
    if not args.results:
        raise UsageError("need --results")
    outdir = _default_out(args, "figure_data")
    written = experiment.export_figure_data(args.results, outdir)
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netdrift",
        description="Copy-or-innovate choice dynamics on networks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_net = sub.add_parser("net", help="build a topology and write its edge list")
    p_net.add_argument("--preset", help=f"one of {sorted(netgen.PRESETS)}")
    p_net.add_argument("--lattice", type=int, metavar="N")
    p_net.add_argument("--complete", type=int, metavar="N")
    p_net.add_argument("--metafunnel", type=int, nargs=3, metavar=("K", "STEPS", "G"))
    p_net.add_argument("--superstar", type=int, nargs=2, metavar=("S", "H"))
    p_net.add_argument("--out", help="output edge-list path")
    p_net.set_defaults(func=cmd_net)

    p_run = sub.add_parser("run", help="single seeded run with per-run statistics")
    p_run.add_argument("--preset")
    p_run.add_argument("--network-file")
    p_run.add_argument("--mu", type=float, default=0.0)
    p_run.add_argument("--periods", type=int, default=2000)
    p_run.add_argument("--seed", type=int, default=1)
    p_run.add_argument("--top-k", type=int, default=100)
    p_run.add_argument("--threshold", type=int, default=5)
    p_run.add_argument("--trace", help="write per-period adopter counts here")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="ensemble grid over networks and mu values")
    p_sweep.add_argument("--config", help="key=value config file")
    p_sweep.add_argument("--mu", help="comma-separated mu list (overrides config)")
    p_sweep.add_argument("--periods", type=int)
    p_sweep.add_argument("--runs", type=int)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--top-k", type=int)
    p_sweep.add_argument("--threshold", type=int)
    p_sweep.add_argument("--workers", type=int)
    p_sweep.add_argument("--out", help="output directory (or NETDRIFT_OUT)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_stats = sub.add_parser("stats", help="tables from a finished sweep")
    p_stats.add_argument("--results", help="sweep output directory")
    p_stats.add_argument("--network-file", help="print degree stats of an edge list")
    p_stats.set_defaults(func=cmd_stats)

    p_fig = sub.add_parser("figures", help="export tidy figure-data CSVs")
    p_fig.add_argument("--results", required=True)
    p_fig.add_argument("--out", help="output directory (or NETDRIFT_OUT)")
    p_fig.set_defaults(func=cmd_figures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
