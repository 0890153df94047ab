"""Simulator and solver suite for the randomly edge-coloured digraph process.

Grows a random digraph one uniformly chosen missing edge at a time, with
i.i.d. uniform edge colours, and answers when four monotone events first
hold: enough distinct colours, at most one in-degree-zero vertex, a
spanning arborescence, and a rainbow spanning arborescence. Ships exact
and heuristic rainbow solvers, bipartite colour matching with Hall
violators, random-mapping utilities, and reproducible Monte Carlo
experiment harnesses.
"""

from arborsim.digraph import (
    ColouredDigraph,
    ColouredEdge,
    DuplicateEdgeError,
    has_spanning_arborescence,
    reachable_from,
)
from arborsim.hitting import HittingTimes, event_holds, hitting_times
from arborsim.matching import (
    ColourAssignment,
    ColourBipartiteGraph,
    KWitness,
    build_colour_bigraph,
    find_colour_assignment,
    find_k_witness,
)
from arborsim.process import (
    ProcessConfig,
    ProcessTrace,
    auto_colour_count,
    generate_trace,
    sample_dnp,
)
from arborsim.rainbow import (
    ArborescenceCertificate,
    BudgetExceededError,
    OracleTooLargeError,
    brute_force_oracle,
    decide,
    decide_exact,
    heuristic_construct,
    verify_certificate,
)
from arborsim.rng import derive_trial_seed

__version__ = "0.1.0"

__all__ = [
    "ArborescenceCertificate",
    "BudgetExceededError",
    "ColourAssignment",
    "ColourBipartiteGraph",
    "ColouredDigraph",
    "ColouredEdge",
    "DuplicateEdgeError",
    "HittingTimes",
    "KWitness",
    "OracleTooLargeError",
    "ProcessConfig",
    "ProcessTrace",
    "auto_colour_count",
    "brute_force_oracle",
    "build_colour_bigraph",
    "decide",
    "decide_exact",
    "derive_trial_seed",
    "event_holds",
    "find_colour_assignment",
    "find_k_witness",
    "generate_trace",
    "has_spanning_arborescence",
    "heuristic_construct",
    "hitting_times",
    "reachable_from",
    "sample_dnp",
    "verify_certificate",
]
