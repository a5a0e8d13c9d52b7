"""Neutral copy-or-innovate choice dynamics on networks.

Agents on a fixed undirected network repeatedly either copy a choice from
their closed neighborhood or innovate a brand-new one; the package builds
the four canonical topologies, runs seeded simulations, computes rank-size
and lifespan statistics, and averages them over ensembles of runs.
"""

__version__ = "0.1.0"

from .netgen import (
    KINDS,
    Network,
    NetworkParseError,
    PRESETS,
    build_complete,
    build_lattice,
    build_metafunnel,
    build_preset,
    build_superstar,
    is_connected,
    parse_network,
    serialize_network,
    validate_network,
)
from .dynamics import (
    SimParams,
    SimState,
    derive_seed,
    init_state,
    make_rng,
    mix64,
    run,
    step,
    write_trace,
)
from .metrics import (
    DegreeStats,
    RunRecord,
    active_choices,
    degree_stats,
    expected_choice_count,
    lifespan,
    lifespans,
    rank_size,
    top_overlap,
    top_popular,
    top_survivors,
)
from .experiment import (
    CellStats,
    EnsembleStats,
    ExperimentConfig,
    export_figure_data,
    run_cell,
    run_ensemble,
    summarize,
    write_outputs,
)
