"""Render rank-size and lifespan figures from tidy sweep CSVs.

Input is the long-format schema written by `netdrift figures`:
network,mu,rank,value — one file per figure kind. Each figure is a grid
of panels, one row per network and one column per mu value, with the
panel maximum annotated; rank-size panels use a logarithmic vertical
axis. Rendering is deterministic: rerunning on the same inputs produces
byte-identical PNG and SVG files.
"""

import argparse
import csv
import hashlib
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

REQUIRED_COLUMNS = ["network", "mu", "rank", "value"]

KINDS = {
    # kind -> (input file stem, y-axis label, y-axis scale)
    "ranksize": ("figdata_ranksize", "mean selections", "log"),
    "lifespan_survivors": ("figdata_lifespans_survivors", "mean lifespan", "linear"),
    "lifespan_popular": ("figdata_lifespans_popular", "mean lifespan", "linear"),
}

TITLES = {
    "ranksize": "Rank-size distribution of choices",
    "lifespan_survivors": "Lifespans of the top 100 longest-surviving choices",
    "lifespan_popular": "Lifespans of the top 100 most popular choices",
}


class SchemaError(ValueError):
    pass


class EmptyDataError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    kind: str
    out_stem: Path    # writes <out_stem>.png and <out_stem>.svg
    yscale: str = ""  # empty -> the kind's default

    def scale(self) -> str:
        return self.yscale or KINDS[self.kind][2]


def load_curves(path: Path) -> dict:
    """Read a tidy CSV into {(network, mu): [(rank, value), ...]}."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataError(f"{path}: file is empty") from None
        if header != REQUIRED_COLUMNS:
            missing = [c for c in REQUIRED_COLUMNS if c not in header]
            raise SchemaError(f"{path}: expected columns {REQUIRED_COLUMNS}, "
                              f"got {header} (missing: {missing})")
        curves = {}
        for row in reader:
            network, mu, rank, value = row
            curves.setdefault((network, mu), []).append((int(rank), float(value)))
    if not curves:
        raise EmptyDataError(f"{path}: no data rows")
    for key in curves:
        curves[key].sort()
    return curves


def build_figure(curves: dict, kind: str, yscale: str = ""):
    """One panel per (network, mu) cell: networks as rows, mus as columns."""
    networks = list(dict.fromkeys(net for net, _ in curves))
    mus = list(dict.fromkeys(mu for _, mu in curves))
    yscale = yscale or KINDS[kind][2]
    nrows, ncols = len(networks), len(mus)
    fig, axes = plt.subplots(nrows, ncols, squeeze=False,
                             figsize=(3.0 * ncols, 2.4 * nrows))
    for r, network in enumerate(networks):
        for c, mu in enumerate(mus):
            ax = axes[r][c]
            pts = curves.get((network, mu))
            if not pts:
                ax.set_axis_off()
                continue
            ranks = [p[0] for p in pts]
            values = [p[1] for p in pts]
            ax.plot(ranks, values, lw=1.0, color="#1f4e79")
            if yscale == "log":
                positive = [v for v in values if v > 0]
                ax.set_yscale("log")
                if positive and len(positive) < len(values):
                    ax.set_ylim(bottom=min(positive) / 2)
            top = max(values)
            ax.annotate(f"max={top:g}", xy=(0.97, 0.92), xycoords="axes fraction",
                        ha="right", va="top", fontsize=7)
            if r == 0:
                ax.set_title(f"mu={mu}", fontsize=9)
            if c == 0:
                ax.set_ylabel(f"{network}\n{KINDS[kind][1]}", fontsize=8)
            if r == nrows - 1:
                ax.set_xlabel("rank", fontsize=8)
            ax.tick_params(labelsize=7)
    fig.suptitle(TITLES[kind], fontsize=11)
    fig.tight_layout(rect=(0, 0, 1, 0.96))
    return fig


def render(spec: FigureSpec) -> list:
    """Render one figure kind to <out_stem>.png and <out_stem>.svg."""
    if spec.kind not in KINDS:
        raise ValueError(f"unknown figure kind {spec.kind!r}; "
                         f"choose from {sorted(KINDS)}")
    curves = load_curves(spec.input_csv)
    # fixed hash salt and no embedded dates keep re-renders byte-identical
    with plt.rc_context({"svg.hashsalt": "figplots"}):
        fig = build_figure(curves, spec.kind, spec.yscale)
        spec.out_stem.parent.mkdir(parents=True, exist_ok=True)
        png = spec.out_stem.with_suffix(".png")
        svg = spec.out_stem.with_suffix(".svg")
        fig.savefig(png, dpi=150)
        fig.savefig(svg, metadata={"Date": None})
        plt.close(fig)
    return [png, svg]


def render_directory(input_dir, output_dir, kind: str = "all") -> list:
    input_dir, output_dir = Path(input_dir), Path(output_dir)
    kinds = list(KINDS) if kind == "all" else [kind]
    for k in kinds:
        if k not in KINDS:
            raise ValueError(f"unknown figure kind {k!r}; choose from "
                             f"{sorted(KINDS)} or 'all'")
    missing = [input_dir / f"{KINDS[k][0]}.csv" for k in kinds
               if not (input_dir / f"{KINDS[k][0]}.csv").exists()]
    if missing:
        listing = "\n  ".join(str(p) for p in missing)
        raise FileNotFoundError(f"missing input files:\n  {listing}")
    written = []
    for k in kinds:
        spec = FigureSpec(input_csv=input_dir / f"{KINDS[k][0]}.csv",
                          kind=k, out_stem=output_dir / k)
        written.extend(render(spec))
    return written


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figplots",
        description="Render figures from netdrift figure-data CSVs")
    parser.add_argument("input_dir", help="directory with figdata_*.csv")
    parser.add_argument("output_dir", help="where to write images")
    parser.add_argument("--kind", default="all",
                        choices=sorted(KINDS) + ["all"])
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        for path in render_directory(args.input_dir, args.output_dir, args.kind):
            print(path)
        return 0
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
