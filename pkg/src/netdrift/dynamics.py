"""Synchronous copy-or-innovate dynamics on a fixed network.

Every period, each agent independently either innovates (probability mu),
taking a globally new choice id, or copies: it adopts the previous-period
choice of a uniform draw over its closed neighborhood (itself plus its
neighbors). The uniform draw is distributionally identical to sampling a
choice with probability proportional to the number of closed-neighborhood
members holding it, since each member contributes weight 1.

RNG discipline: one PCG64 stream per run, seeded from SimParams.seed.
Agents are processed in ascending index order; each agent consumes one
uniform variate for the innovate-vs-copy decision and, when copying, a
second one that picks the closed-neighborhood slot (slot == degree means
"self"). This fixed consumption order makes runs bit-reproducible.

Seed splitting uses the splitmix64 finalizer (mix64): run r of an
ensemble derives its seed by folding the run index (and cell indices)
into the master seed, so distinct runs get uncorrelated streams.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .metrics import RunRecord

_MASK64 = (1 << 64) - 1

DEFAULT_THRESHOLD_CAP = 8


def mix64(x: int) -> int:
    """One splitmix64 round: a bijective avalanche mix on 64-bit ints."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed: int, *indices: int) -> int:
    """Derive a per-run seed by folding indices into the master seed.

    derive_seed(m, r) is the stream for run r; the ensemble layer uses
    derive_seed(m, cell_network_index, cell_mu_index, r).
    """
    s = mix64(master_seed & _MASK64)
    for v in indices:
        s = mix64(s ^ (v & _MASK64))
    return s


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SimParams:
    mu: float
    periods: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")
        if self.periods < 1:
            raise ValueError(f"periods must be >= 1, got {self.periods}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class SimState:
    current: np.ndarray  # int64 choice id per agent
    next_choice_id: int
    period: int


def init_state(net) -> SimState:
    """Period 0: agent i holds the unique choice i."""
    return SimState(current=np.arange(net.node_count, dtype=np.int64),
                    next_choice_id=net.node_count, period=0)


def step(state: SimState, net, params: SimParams, rng) -> SimState:
    """One synchronous update computed from the period-t snapshot.

    Pure-Python reference path; run() uses a compiled kernel that consumes
    the identical RNG stream, so both produce bit-identical trajectories.
    """
    if state.period >= params.periods - 1:
        raise ValueError(f"cannot step past period {params.periods - 1}")
    cur = state.current
    new = np.empty_like(cur)
    next_id = state.next_choice_id
    indptr, nbrs = net.indptr, net.nbrs
    for i in range(net.node_count):
        if rng.random() < params.mu:
            new[i] = next_id
            next_id += 1
        else:
            lo = indptr[i]
            deg = indptr[i + 1] - lo
            slot = int(rng.random() * (deg + 1))
            new[i] = cur[i] if slot == deg else cur[nbrs[lo + slot]]
    return SimState(current=new, next_choice_id=next_id, period=state.period + 1)


@njit(cache=True, nogil=True)
def _run_kernel(indptr, nbrs, mu, periods, rng, first, last, total,
                cnt, stamp, touched, active_ge, cap_thresh,
                trace_period, trace_choice, trace_count, collect_trace):
    n = indptr.size - 1
    capacity = first.size
    cur = np.empty(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    for i in range(n):
        cur[i] = i
        first[i] = 0
        last[i] = 0
        total[i] = 1
    next_id = n
    active_ge[0, 0] = n
    trace_len = 0
    if collect_trace:
        for i in range(n):
            trace_period[i] = 0
            trace_choice[i] = i
            trace_count[i] = 1
        trace_len = n
    for p in range(1, periods):
        for i in range(n):
            if rng.random() < mu:
                if next_id == capacity:
                    return -1, 0
                nxt[i] = next_id
                next_id += 1
            else:
                lo = indptr[i]
                deg = indptr[i + 1] - lo
                slot = int(rng.random() * (deg + 1))
                if slot == deg:
                    nxt[i] = cur[i]
                else:
                    nxt[i] = cur[nbrs[lo + slot]]
        # adopter counts for the new period; cnt is reset lazily via stamp
        ntouch = 0
        for i in range(n):
            c = nxt[i]
            if stamp[c] != p:
                stamp[c] = p
                cnt[c] = 0
                touched[ntouch] = c
                ntouch += 1
            cnt[c] += 1
            cur[i] = c
        for t in range(ntouch):
            c = touched[t]
            k = cnt[c]
            if first[c] < 0:
                first[c] = p
            last[c] = p
            total[c] += k
            m = k if k < cap_thresh else cap_thresh
            for col in range(m):
                active_ge[p, col] += 1
            if collect_trace:
                trace_period[trace_len] = p
                trace_choice[trace_len] = c
                trace_count[trace_len] = k
                trace_len += 1
    return next_id, trace_len


def _capacity_for(n: int, mu: float, periods: int) -> int:
    expected = n * mu * (periods - 1)
    slack = 12.0 * np.sqrt(max(expected, 1.0)) + 64.0
    return int(min(n + expected + slack, n + n * (periods - 1))) + 1


def run(net, params: SimParams, *, threshold_cap: int = DEFAULT_THRESHOLD_CAP,
        collect_trace: bool = False):
    """Execute a full run: period 0 initialization plus periods-1 updates.

    Returns a RunRecord; with collect_trace=True returns (RunRecord, trace)
    where trace is an int64 array of (period, choice_id, adopter_count)
    rows for every choice with at least one adopter, sorted by period then
    choice id.
    """
    if threshold_cap < 1:
        raise ValueError(f"threshold_cap must be >= 1, got {threshold_cap}")
    n = net.node_count
    capacity = _capacity_for(n, params.mu, params.periods)
    while True:
        rng = make_rng(params.seed)
        first = np.full(capacity, -1, dtype=np.int32)
        last = np.full(capacity, -1, dtype=np.int32)
        total = np.zeros(capacity, dtype=np.int64)
        cnt = np.zeros(capacity, dtype=np.int32)
        stamp = np.full(capacity, -1, dtype=np.int32)
        touched = np.zeros(n, dtype=np.int64)
        active_ge = np.zeros((params.periods, threshold_cap), dtype=np.int32)
        if collect_trace:
            cap_trace = n * params.periods
            trace_period = np.zeros(cap_trace, dtype=np.int64)
            trace_choice = np.zeros(cap_trace, dtype=np.int64)
            trace_count = np.zeros(cap_trace, dtype=np.int64)
        else:
            trace_period = np.zeros(1, dtype=np.int64)
            trace_choice = np.zeros(1, dtype=np.int64)
            trace_count = np.zeros(1, dtype=np.int64)
        next_id, trace_len = _run_kernel(
            net.indptr, net.nbrs, params.mu, params.periods, rng,
            first, last, total, cnt, stamp, touched, active_ge, threshold_cap,
            trace_period, trace_choice, trace_count, collect_trace)
        if next_id >= 0:
            break
        capacity *= 2  # innovation count overshot the preallocation; retry

    rec = RunRecord(n_agents=n, periods=params.periods,
                    first_period=first[:next_id].copy(),
                    last_period=last[:next_id].copy(),
                    total_selections=total[:next_id].copy(),
                    active_ge=active_ge)
    if not collect_trace:
        return rec
    trace = np.stack([trace_period[:trace_len], trace_choice[:trace_len],
                      trace_count[:trace_len]], axis=1)
    order = np.lexsort((trace[:, 1], trace[:, 0]))
    return rec, trace[order]


def write_trace(path, trace) -> None:
    """Columnar text dump of a run trace."""
    with open(path, "w") as fh:
        fh.write("# period choice_id adopter_count\n")
        for p, c, k in trace:
            fh.write(f"{p} {c} {k}\n")
