"""Generators for the four undirected topologies used in the simulations.

All four builders return an immutable Network in CSR-like form (indptr +
flat sorted neighbor array). Node indexing is deterministic so that seeded
runs are reproducible:

  - lattice: row-major over the n-by-n grid
  - complete: natural order 0..n-1
  - metafunnel: central node 0, then funnel by funnel, level by level
  - superstar: central node 0, then group by group (dominant node first)
"""

from dataclasses import dataclass

import numpy as np

KINDS = ("lattice", "complete", "metafunnel", "superstar")


class NetworkParseError(ValueError):
    """Raised when an edge-list document violates the file format."""


@dataclass(frozen=True)
class Network:
    kind: str
    params: dict
    node_count: int
    indptr: np.ndarray  # int64, len node_count + 1
    nbrs: np.ndarray    # int32, sorted within each node's segment

    def neighbors(self, i: int) -> np.ndarray:
        return self.nbrs[self.indptr[i]:self.indptr[i + 1]]

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def edge_count(self) -> int:
        return self.nbrs.size // 2

    def edges(self):
        """Yield edges as (i, j) with i < j, ascending lexicographic order."""
        for i in range(self.node_count):
            for j in self.neighbors(i):
                if i < j:
                    yield i, int(j)

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (self.kind == other.kind
                and self.params == other.params
                and self.node_count == other.node_count
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.nbrs, other.nbrs))


def _from_edges(kind, params, node_count, edges) -> Network:
    """Assemble a Network from an iterable of (i, j) pairs, i != j."""
    adj = [[] for _ in range(node_count)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    for i in range(node_count):
        indptr[i + 1] = indptr[i] + len(adj[i])
    nbrs = np.empty(indptr[-1], dtype=np.int32)
    for i in range(node_count):
        nbrs[indptr[i]:indptr[i + 1]] = sorted(adj[i])
    return Network(kind=kind, params=dict(params), node_count=node_count,
                   indptr=indptr, nbrs=nbrs)


def build_lattice(n: int) -> Network:
    """n-by-n square grid, no wrap around the sides."""
    if n < 2:
        raise ValueError(f"lattice requires n >= 2, got {n}")
    edges = []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < n:
                edges.append((v, v + n))
    return _from_edges("lattice", {"n": n}, n * n, edges)


def build_complete(n: int) -> Network:
    """Every node connected with every other node."""
    if n < 2:
        raise ValueError(f"complete requires n >= 2, got {n}")
    edges = ((i, j) for i in range(n) for j in range(i + 1, n))
    return _from_edges("complete", {"n": n}, n, edges)


def build_metafunnel(k: int, steps: int, g: int) -> Network:
    """Central node feeding g funnels whose levels hold k, k^2, ... nodes.

    Within a funnel, consecutive levels are joined by a complete bipartite
    graph; the central node is adjacent to every level-1 node of every
    funnel. Levels are private to their funnel, which is the only reading
    whose node count 1 + g*(k + k^2 + ... + k^steps) matches the canonical
    466-node parameterization.
    """
    if k < 1 or steps < 1 or g < 1:
        raise ValueError(f"metafunnel requires k, steps, g >= 1, got {(k, steps, g)}")
    node_count = 1 + g * sum(k ** level for level in range(1, steps + 1))
    edges = []
    nxt = 1
    for _ in range(g):
        prev = [0]
        for level in range(1, steps + 1):
            cur = list(range(nxt, nxt + k ** level))
            nxt += k ** level
            edges.extend((a, b) for a in prev for b in cur)
            prev = cur
    return _from_edges("metafunnel", {"k": k, "steps": steps, "g": g}, node_count, edges)


def build_superstar(s: int, h: int) -> Network:
    """Hub node adjacent to everything, plus h groups of s nodes.

    Each group has one dominant node adjacent to its s-1 other members;
    non-dominant members touch only their dominant node and the hub.
    s=1 degenerates to a plain star of h+1 nodes.
    """
    if s < 1 or h < 1:
        raise ValueError(f"superstar requires s, h >= 1, got {(s, h)}")
    node_count = 1 + s * h
    edges = [(0, v) for v in range(1, node_count)]
    for grp in range(h):
        dom = 1 + grp * s
        edges.extend((dom, v) for v in range(dom + 1, dom + s))
    return _from_edges("superstar", {"s": s, "h": h}, node_count, edges)


PRESETS = {
    "lattice22": lambda: build_lattice(22),
    "complete475": lambda: build_complete(475),
    "metafunnel533": lambda: build_metafunnel(5, 3, 3),
    "superstar2420": lambda: build_superstar(24, 20),
}


def build_preset(name: str) -> Network:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[name]()


def expected_node_count(kind: str, params: dict) -> int:
    """Closed-form node count for each topology."""
    if kind == "lattice":
        return params["n"] ** 2
    if kind == "complete":
        return params["n"]
    if kind == "metafunnel":
        k, steps, g = params["k"], params["steps"], params["g"]
        return 1 + g * sum(k ** level for level in range(1, steps + 1))
    if kind == "superstar":
        return 1 + params["s"] * params["h"]
    raise ValueError(f"unknown network kind {kind!r}")


def validate_network(net: Network) -> None:
    """Check the structural invariants; raises ValueError on violation."""
    if net.node_count < 1:
        raise ValueError("node_count must be positive")
    if net.kind not in KINDS:
        raise ValueError(f"unknown network kind {net.kind!r}")
    if expected_node_count(net.kind, net.params) != net.node_count:
        raise ValueError(f"node_count {net.node_count} does not match the "
                         f"{net.kind} closed form for params {net.params}")
    neighbor_sets = []
    for i in range(net.node_count):
        nbrs = net.neighbors(i)
        if nbrs.size == 0:
            raise ValueError(f"node {i} has degree 0")
        if np.any(nbrs == i):
            raise ValueError(f"self-loop at node {i}")
        if np.any(np.diff(nbrs) <= 0):
            raise ValueError(f"adjacency of node {i} not sorted or has duplicates")
        neighbor_sets.append(set(nbrs.tolist()))
    for i in range(net.node_count):
        for j in neighbor_sets[i]:
            if i not in neighbor_sets[j]:
                raise ValueError(f"asymmetric edge {i}-{j}")


def is_connected(net: Network) -> bool:
    """Breadth-first search from node 0."""
    seen = np.zeros(net.node_count, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in net.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    nxt.append(int(w))
        frontier = nxt
    return bool(seen.all())


def serialize_network(net: Network) -> str:
    """Deterministic edge-list document with a descriptive header.

    Format: `# kind=<name> params=<k=v,...> nodes=<N>` followed by one
    `i j` pair per line with i < j, ascending lexicographic order.
    """
    params = ",".join(f"{key}={net.params[key]}" for key in sorted(net.params))
    lines = [f"# kind={net.kind} params={params} nodes={net.node_count}"]
    lines.extend(f"{i} {j}" for i, j in net.edges())
    return "\n".join(lines) + "\n"


def parse_network(text: str) -> Network:
    """Parse an edge-list document produced by serialize_network.

    Enforces the file format and the structural invariants; errors name
    the offending line (1-based).
    """
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise NetworkParseError("line 1: missing header")
    header = lines[0].strip()
    if not header.startswith("#"):
        raise NetworkParseError("line 1: header must start with '#'")
    fields = dict(part.split("=", 1) for part in header[1:].split() if "=" in part)
    if not {"kind", "params", "nodes"} <= fields.keys():
        raise NetworkParseError("line 1: header needs kind=, params=, nodes=")
    kind = fields["kind"]
    if kind not in KINDS:
        raise NetworkParseError(f"line 1: unknown kind {kind!r}")
    try:
        node_count = int(fields["nodes"])
        params = {}
        for item in fields["params"].split(","):
            key, val = item.split("=", 1)
            params[key] = int(val)
    except ValueError as exc:
        raise NetworkParseError(f"line 1: bad header value ({exc})") from None

    edges = []
    seen = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise NetworkParseError(f"line {lineno}: expected 'i j', got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise NetworkParseError(f"line {lineno}: expected 'i j', got {raw!r}") from None
        if i == j:
            raise NetworkParseError(f"line {lineno}: self-loop {i} {j}")
        if i > j or i < 0:
            raise NetworkParseError(f"line {lineno}: edges must satisfy 0 <= i < j")
        if j >= node_count:
            raise NetworkParseError(f"line {lineno}: node {j} out of range for nodes={node_count}")
        if (i, j) in seen:
            raise NetworkParseError(f"line {lineno}: duplicate edge {i} {j}")
        seen.add((i, j))
        edges.append((i, j))

    if not edges:
        raise NetworkParseError("line 1: document has no edges")
    touched = set()
    for i, j in edges:
        touched.add(i)
        touched.add(j)
    missing = sorted(set(range(node_count)) - touched)
    if missing:
        raise NetworkParseError(f"line 1: node index gap, no edges touch {missing[:5]}")

    net = _from_edges(kind, params, node_count, edges)
    validate_network(net)
    return net
