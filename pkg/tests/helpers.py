"""Shared test utilities: independent graph construction and a pure-Python
reference implementation of the full run bookkeeping."""

from types import SimpleNamespace

import numpy as np

from netdrift import RunRecord, init_state, step


def graph_from_edges(n, edges):
    """CSR graph built independently of netgen; only the fields the
    dynamics layer reads."""
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    indptr = np.zeros(n + 1, dtype=np.int64)
    nbrs = []
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(adj[i])
        nbrs.extend(sorted(adj[i]))
    return SimpleNamespace(node_count=n, indptr=indptr,
                           nbrs=np.array(nbrs, dtype=np.int32))


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n_leaves):
    return graph_from_edges(n_leaves + 1, [(0, i + 1) for i in range(n_leaves)])


class ScriptedRng:
    """Deterministic stand-in for a Generator: .random() pops scripted values."""

    def __init__(self, values):
        self.values = list(values)

    def random(self):
        return self.values.pop(0)


def reference_run(net, params, threshold_cap=8):
    """Drive step() period by period and do the bookkeeping in plain
    numpy; the compiled kernel must reproduce this bit for bit."""
    from netdrift import make_rng

    rng = make_rng(params.seed)
    state = init_state(net)
    n = net.node_count
    first = {c: 0 for c in range(n)}
    last = {c: 0 for c in range(n)}
    total = {c: 1 for c in range(n)}
    active_ge = np.zeros((params.periods, threshold_cap), dtype=np.int32)
    active_ge[0, 0] = n
    for p in range(1, params.periods):
        state = step(state, net, params, rng)
        ids, counts = np.unique(state.current, return_counts=True)
        for c, k in zip(ids.tolist(), counts.tolist()):
            if c not in first:
                first[c] = p
                total[c] = 0
            last[c] = p
            total[c] += k
            active_ge[p, :min(k, threshold_cap)] += 1
    distinct = state.next_choice_id
    assert sorted(first) == list(range(distinct))
    return RunRecord(
        n_agents=n, periods=params.periods,
        first_period=np.array([first[c] for c in range(distinct)], dtype=np.int32),
        last_period=np.array([last[c] for c in range(distinct)], dtype=np.int32),
        total_selections=np.array([total[c] for c in range(distinct)], dtype=np.int64),
        active_ge=active_ge)


def records_equal(a, b):
    return (a.n_agents == b.n_agents and a.periods == b.periods
            and np.array_equal(a.first_period, b.first_period)
            and np.array_equal(a.last_period, b.last_period)
            and np.array_equal(a.total_selections, b.total_selections)
            and np.array_equal(a.active_ge, b.active_ge))


def closed_neighborhood_distribution(net, current, agent):
    """Analytic adoption law: weight 1 per closed-neighborhood member."""
    from fractions import Fraction

    members = [agent] + [int(j) for j in
                         net.nbrs[net.indptr[agent]:net.indptr[agent + 1]]]
    dist = {}
    for m in members:
        c = int(current[m])
        dist[c] = dist.get(c, Fraction(0)) + Fraction(1, len(members))
    return dist


def sampler_distribution(net, current, agent):
    """Exact image measure of the uniform slot draw used by step()."""
    from fractions import Fraction

    lo, hi = net.indptr[agent], net.indptr[agent + 1]
    deg = hi - lo
    dist = {}
    for slot in range(deg + 1):
        target = agent if slot == deg else int(net.nbrs[lo + slot])
        c = int(current[target])
        dist[c] = dist.get(c, Fraction(0)) + Fraction(1, int(deg) + 1)
    return dist
