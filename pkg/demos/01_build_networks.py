"""Build the four canonical topologies and look at their structure.

The four networks all have roughly 475 nodes but very different shapes,
from the flat square lattice to the hub-dominated superstar. Degree
skewness is the number to watch: it ranks the networks by how strongly a
few well-connected nodes can dominate the dynamics.
"""

from pathlib import Path

from netdrift import (
    PRESETS,
    build_preset,
    degree_stats,
    is_connected,
    serialize_network,
    validate_network,
)

outdir = Path("demo_output")
outdir.mkdir(exist_ok=True)

print(f"{'network':15s} {'nodes':>6s} {'edges':>7s} {'deg mean':>9s} "
      f"{'deg var':>9s} {'deg skew':>9s}")
for name in PRESETS:
    net = build_preset(name)
    validate_network(net)          # symmetry, no self-loops, closed forms
    assert is_connected(net)       # all four are a single component
    ds = degree_stats(net)
    print(f"{name:15s} {net.node_count:6d} {net.edge_count:7d} "
          f"{ds.mean:9.3f} {ds.variance:9.3f} {ds.skewness:9.3f}")

    path = outdir / f"{name}.edges"
    path.write_text(serialize_network(net))

print(f"\nedge lists written to {outdir}/")
print("note: the complete network has the highest mean degree, but the")
print("superstar has by far the highest degree skewness; the lattice is")
print("actually left-skewed (its corners pull the tail down).")
