"""Exact hitting times of the four monitored events along one trace.

Events on the m-edge prefix graph:
  C: at least n-1 distinct colours present,
  Z: at most one vertex of in-degree zero,
  A: a spanning arborescence exists,
  R: a rainbow spanning arborescence exists.

C and Z are detected by a single streaming pass (each is a monotone counter
crossing). A and R are monotone in m because a witness edge set persists
under edge additions, so their hitting times come from binary search over
prefix graphs. Z and A always happen; C and R can fail to ever happen, in
which case their times are reported as undefined (None) rather than
clamped to the last step.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from arborsim.digraph import ColouredDigraph, has_spanning_arborescence
from arborsim.process import ProcessTrace
from arborsim.rainbow import BudgetExceededError, decide

R_MODES = ("oracle", "exact", "heuristic", "auto")


@dataclass
class HittingTimes:
    m_c: int | None
    m_z: int
    m_a: int
    m_r: int | None
    r_decision_mode: str  # "exact" | "heuristic-certified" | "unknown"


def event_holds(g: ColouredDigraph, event: str, mode: str = "auto",
                budget_s: float | None = None) -> bool:
    """Whether the event holds on g right now.

    For event R with a one-sided mode (heuristic), True carries a
    certificate but False only means "not found". A budget overrun in an
    exact mode raises BudgetExceededError.
    """
    if event == "C":
        return g.distinct_colours >= g.n - 1
    if event == "Z":
        return g.zero_in_count <= 1
    if event == "A":
        return has_spanning_arborescence(g)[0]
    if event == "R":
        result = decide(g, mode=mode, budget_s=budget_s)
        if result.outcome == "unknown":
            raise BudgetExceededError("rainbow decision budget exhausted")
        return result.outcome == "found"
    raise ValueError(f"unknown event {event!r}, expected one of C, Z, A, R")


def _first_true(lo: int, hi: int, pred) -> int:
    """Least m in [lo, hi] with pred(m) true; pred monotone, pred(hi) true."""
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def hitting_times(trace: ProcessTrace, r_mode: str = "auto",
                  budget_s: float | None = 10.0) -> HittingTimes:
    """Hitting times of all four events for one complete trace.

    The budget applies per rainbow decision. In heuristic mode the tool
    only certifies whether R already holds at m_Z (one-sided decisions
    cannot drive a sound binary search); m_r is then m_z on success and
    unknown on failure.
    """
    if r_mode not in R_MODES:
        raise ValueError(f"unknown r_mode {r_mode!r}, expected one of {R_MODES}")
    n = trace.n
    total = trace.total_edges
    edges = trace.materialize()

    need_colours = n - 1
    m_c: int | None = None
    m_z: int | None = None
    seen_colour = bytearray(trace.colour_count)
    distinct = 0
    seen_head = bytearray(n)
    heads = 0
    for i, e in enumerate(edges):
        if m_c is None and not seen_colour[e.colour]:
            seen_colour[e.colour] = 1
            distinct += 1
            if distinct >= need_colours:
                m_c = i + 1
        if m_z is None and not seen_head[e.head]:
            seen_head[e.head] = 1
            heads += 1
            if heads >= n - 1:
                m_z = i + 1
        if m_c is not None and m_z is not None:
            break
    assert m_z is not None  # n-1 distinct heads always occur by step N

    def arb_at(m: int) -> bool:
        return has_spanning_arborescence(trace.graph_at(m))[0]

    m_a = m_z if arb_at(m_z) else _first_true(m_z + 1, total, arb_at)

    if m_c is None:
        # Fewer than n-1 colours ever appear, so R never happens either.
        return HittingTimes(None, m_z, m_a, None, "exact")

    if r_mode == "heuristic":
        result = decide(trace.graph_at(m_z), mode="heuristic")
        if result.outcome == "found":
            return HittingTimes(m_c, m_z, m_a, m_z, "heuristic-certified")
        return HittingTimes(m_c, m_z, m_a, None, "unknown")

    def rainbow_at(m: int) -> bool:
        result = decide(trace.graph_at(m), mode=r_mode, budget_s=budget_s)
        if result.outcome == "unknown":
            raise BudgetExceededError("rainbow decision budget exhausted")
        return result.outcome == "found"

    lo = max(m_a, m_c)
    try:
        if rainbow_at(lo):
            m_r: int | None = lo
        elif not rainbow_at(total):
            m_r = None
        else:
            m_r = _first_true(lo + 1, total, rainbow_at)
    except BudgetExceededError:
        return HittingTimes(m_c, m_z, m_a, None, "unknown")
    return HittingTimes(m_c, m_z, m_a, m_r, "exact")
