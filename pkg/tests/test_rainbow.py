import itertools
import time

import pytest

from arborsim.digraph import ColouredDigraph, ColouredEdge
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
from arborsim.rng import SplitMix64
from helpers import graph_from_edges, random_graph


def test_verify_certificate_examples():
    g = graph_from_edges(2, 2, [(0, 1, 0)])
    cert = ArborescenceCertificate(0, {1: ColouredEdge(0, 1, 0)})
    assert verify_certificate(g, cert)

    missing = graph_from_edges(2, 2, [(1, 0, 0)])
    assert not verify_certificate(missing, cert)

    g3 = graph_from_edges(3, 2, [(0, 1, 0), (0, 2, 0)])
    shared = ArborescenceCertificate(
        0, {1: ColouredEdge(0, 1, 0), 2: ColouredEdge(0, 2, 0)}
    )
    assert not verify_certificate(g3, shared)  # two parents share a colour


def test_verify_certificate_rejects_cycles_and_gaps():
    g = graph_from_edges(3, 3, [(0, 1, 0), (1, 2, 1), (2, 1, 2)])
    cyclic = ArborescenceCertificate(
        0, {1: ColouredEdge(2, 1, 2), 2: ColouredEdge(1, 2, 1)}
    )
    assert not verify_certificate(g, cyclic)
    partial = ArborescenceCertificate(0, {1: ColouredEdge(0, 1, 0)})
    assert not verify_certificate(g, partial)


def test_oracle_examples():
    g = graph_from_edges(3, 2, [(0, 1, 0), (0, 2, 1)])
    cert = brute_force_oracle(g)
    assert cert is not None and cert.root == 0
    assert verify_certificate(g, cert)

    mono = ColouredDigraph(3, 1)
    for t in range(3):
        for h in range(3):
            if t != h:
                mono.add_edge(ColouredEdge(t, h, 0))
    assert brute_force_oracle(mono) is None


def test_oracle_guard():
    g = ColouredDigraph(6, 30)
    c = 0
    for t in range(6):
        for h in range(6):
            if t != h:
                g.add_edge(ColouredEdge(t, h, c % 30))
                c += 1
    with pytest.raises(OracleTooLargeError):
        brute_force_oracle(g, guard=10)


def test_exact_fast_paths():
    g = graph_from_edges(4, 2, [(0, 1, 0), (0, 2, 0), (0, 3, 1)])
    assert g.distinct_colours < 3
    assert decide_exact(g) is None  # fewer than n-1 colours present
    star = graph_from_edges(4, 4, [(0, 1, 0), (0, 2, 1), (0, 3, 2)])
    cert = decide_exact(star)
    assert cert is not None and cert.root == 0


def test_exact_matches_oracle_randomized():
    rng = SplitMix64(314159)
    for _ in range(1000):
        n = 2 + rng.below(5)
        w = 1 + rng.below(5)
        g = random_graph(rng, n, w, rng.below(n * (n - 1) + 1))
        cert_o = brute_force_oracle(g)
        cert_e = decide_exact(g)
        assert (cert_o is None) == (cert_e is None)
        for cert in (cert_o, cert_e):
            if cert is not None:
                assert verify_certificate(g, cert)


def test_exact_matches_oracle_exhaustive_colourings():
    edges = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]
    for colours in itertools.product(range(2), repeat=len(edges)):
        g = ColouredDigraph(4, 2)
        for (t, h), c in zip(edges, colours):
            g.add_edge(ColouredEdge(t, h, c))
        assert (brute_force_oracle(g) is None) == (decide_exact(g) is None)


def test_exact_respects_root_argument():
    g = graph_from_edges(3, 3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)])
    for r in range(3):
        cert = decide_exact(g, root=r)
        assert cert is not None and cert.root == r
    star = graph_from_edges(3, 3, [(0, 1, 0), (0, 2, 1)])
    assert decide_exact(star, root=1) is None  # vertex 0 unreachable from 1


def test_exact_budget():
    g = ColouredDigraph(7, 7)
    c = 0
    for t in range(7):
        for h in range(7):
            if t != h:
                g.add_edge(ColouredEdge(t, h, c % 7))
                c += 1
    with pytest.raises(BudgetExceededError):
        decide_exact(g, deadline=time.monotonic() - 1.0)


def test_heuristic_star_one_pass():
    star = graph_from_edges(4, 5, [(0, 1, 0), (0, 2, 1), (0, 3, 2)])
    out = heuristic_construct(star, 0)
    assert out.success
    assert verify_certificate(star, out.certificate)


def test_heuristic_mapping_repair_example():
    # assignment must use colour 0 for vertex 1 and colour 1 or 2 for
    # vertex 2; every materialisation is already acyclic
    g = graph_from_edges(3, 3, [(0, 1, 0), (1, 2, 1), (2, 1, 2)])
    out = heuristic_construct(g, 0)
    assert out.success
    cert = out.certificate
    assert cert.root == 0
    assert verify_certificate(g, cert)
    assert brute_force_oracle(g) is not None


def test_heuristic_reports_missing_assignment():
    g = graph_from_edges(3, 1, [(0, 1, 0), (0, 2, 0)])
    out = heuristic_construct(g, 0)
    assert not out.success
    assert out.failure_reason == "no injective colour assignment"


def test_heuristic_one_sided_and_sound():
    rng = SplitMix64(271828)
    statuses = {"true-miss": 0, "true-negative": 0, "success": 0}
    for _ in range(400):
        n = 3 + rng.below(10)  # n in [3, 12]
        w = 2 + rng.below(n + 4)
        g = random_graph(rng, n, w, rng.below(n * (n - 1) + 1))
        root = min(range(n), key=lambda v: (g.in_deg[v], v))
        out = heuristic_construct(g, root)
        if out.success:
            statuses["success"] += 1
            assert verify_certificate(g, out.certificate)
            assert decide_exact(g, root=root) is not None
        else:
            exact = decide_exact(g, root=root)
            statuses["true-miss" if exact is not None else "true-negative"] += 1
    assert statuses["success"] > 0 and statuses["true-negative"] > 0


def test_certificate_monotone_under_additions():
    rng = SplitMix64(42)
    found = 0
    while found < 30:
        n = 3 + rng.below(5)
        g = random_graph(rng, n, n + 2, rng.below(n * (n - 1) + 1))
        cert = decide_exact(g)
        if cert is None:
            continue
        found += 1
        for t in range(n):
            for h in range(n):
                if t != h and not g.has_edge(t, h):
                    g.add_edge(ColouredEdge(t, h, rng.below(n + 2)))
                    assert verify_certificate(g, cert)
                    break


def test_decide_modes_agree():
    rng = SplitMix64(909)
    for _ in range(200):
        n = 2 + rng.below(5)
        g = random_graph(rng, n, 1 + rng.below(6), rng.below(n * (n - 1) + 1))
        oracle = decide(g, mode="oracle")
        exact = decide(g, mode="exact")
        auto = decide(g, mode="auto")
        heur = decide(g, mode="heuristic")
        assert oracle.outcome == exact.outcome == auto.outcome
        if heur.outcome == "found":
            assert exact.outcome == "found"
            assert verify_certificate(g, heur.certificate)


def test_decide_two_zero_in_degree_vertices():
    g = graph_from_edges(4, 4, [(0, 2, 0), (1, 3, 1)])
    assert g.zero_in_count == 2
    for mode in ("oracle", "exact", "heuristic", "auto"):
        assert decide(g, mode=mode).outcome == "not_found"
