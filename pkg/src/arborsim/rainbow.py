"""Rainbow arborescence decisions: oracle, exact search, constructive heuristic.

A rainbow arborescence is a spanning rooted tree, all edges pointing away
from the root, whose n-1 edge colours are pairwise distinct. Deciding
existence mixes three one-per-vertex constraints (one in-edge per non-root
vertex, global acyclicity, distinct colours), so no polynomial algorithm is
known; the exact solver is a pruned backtracking search and the heuristic
is a fast one-sided constructor.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from arborsim.digraph import (
    ColouredDigraph,
    ColouredEdge,
    has_spanning_arborescence,
    reachable_from,
)
from arborsim.matching import (
    build_colour_bigraph,
    find_colour_assignment,
    materialize_assignment,
)


class OracleTooLargeError(RuntimeError):
    """The brute-force enumeration guard was exceeded; no answer is implied."""


class BudgetExceededError(RuntimeError):
    """A per-decision time budget ran out; the decision is unknown."""


@dataclass
class ArborescenceCertificate:
    root: int
    parent_edge: dict[int, ColouredEdge]  # v -> its in-edge, for every v != root


@dataclass
class HeuristicOutcome:
    certificate: ArborescenceCertificate | None
    unrepaired_components: int = 0
    spare_colours_left: int = 0
    failure_reason: str | None = None

    @property
    def success(self) -> bool:
        return self.certificate is not None


@dataclass
class DecideResult:
    outcome: str  # "found" | "not_found" | "unknown"
    certificate: ArborescenceCertificate | None = None
    decided_by: str = "exact"  # "oracle" | "exact" | "heuristic"
    diagnostics: dict = field(default_factory=dict)


def verify_certificate(g: ColouredDigraph, cert: ArborescenceCertificate) -> bool:
    """Full O(n) validity check: edges present in g, spanning, acyclic, rainbow."""
    n = g.n
    root = cert.root
    if not 0 <= root < n:
        return False
    if set(cert.parent_edge) != set(range(n)) - {root}:
        return False
    colours = set()
    for v, e in cert.parent_edge.items():
        if e.head != v:
            return False
        if g.edge_colour(e.tail, e.head) != e.colour:
            return False
        if e.colour in colours:
            return False
        colours.add(e.colour)
    # Walk parent chains with memoisation; every vertex must reach the root.
    state = [0] * n  # 0 unvisited, 1 on current walk, 2 reaches root
    state[root] = 2
    for v in range(n):
        path = []
        u = v
        while state[u] == 0:
            state[u] = 1
            path.append(u)
            u = cert.parent_edge[u].tail
        if state[u] == 1:
            return False  # cycle
        for w in path:
            state[w] = 2
    return True


def _is_rainbow_arborescence(n: int, root: int, choice: tuple[ColouredEdge, ...]) -> bool:
    colours = set()
    for e in choice:
        if e.colour in colours:
            return False
        colours.add(e.colour)
    parent = {e.head: e.tail for e in choice}
    state = [0] * n
    state[root] = 2
    for v in range(n):
        path = []
        u = v
        while state[u] == 0:
            state[u] = 1
            path.append(u)
            u = parent[u]
        if state[u] == 1:
            return False
        for w in path:
            state[w] = 2
    return True


def brute_force_oracle(
    g: ColouredDigraph, guard: int = 10**7, root: int | None = None
) -> ArborescenceCertificate | None:
    """Exhaustive ground truth: every root, every in-edge selection.

    Raises OracleTooLargeError instead of ever guessing when the search
    space for some root exceeds `guard` and no certificate was found among
    the affordable roots.
    """
    from itertools import product

    n = g.n
    if n == 1:
        return ArborescenceCertificate(0, {})
    deferred = False
    roots = range(n) if root is None else [root]
    for root in roots:
        others = [v for v in range(n) if v != root]
        if any(not g.in_edges[v] for v in others):
            continue
        size = 1
        for v in others:
            size *= len(g.in_edges[v])
            if size > guard:
                break
        if size > guard:
            deferred = True
            continue
        for choice in product(*(g.in_edges[v] for v in others)):
            if _is_rainbow_arborescence(n, root, choice):
                return ArborescenceCertificate(root, {e.head: e for e in choice})
    if deferred:
        raise OracleTooLargeError(f"enumeration guard {guard} exceeded for some root")
    return None


def _candidate_roots(g: ColouredDigraph, root: int | None) -> list[int]:
    zero_in = [v for v in range(g.n) if g.in_deg[v] == 0]
    if root is not None:
        if any(z != root for z in zero_in):
            return []  # some other vertex could never be reached
        return [root]
    if len(zero_in) == 1:
        return zero_in
    if len(zero_in) >= 2:
        return []
    return sorted(range(g.n), key=lambda v: (g.in_deg[v], v))


def _search_root(g: ColouredDigraph, root: int, deadline: float | None) -> ArborescenceCertificate | None:
    n = g.n
    if len(reachable_from(g, {root})) < n:
        return None
    # Necessary condition: an injective vertex -> in-edge-colour assignment.
    if find_colour_assignment(build_colour_bigraph(g), root) is None:
        return None
    in_lists: list[list[tuple[int, int]]] = [
        [(e.tail, e.colour) for e in g.in_edges[v]] for v in range(n)
    ]
    out_lists: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e in g.edges:
        out_lists[e.tail].append((e.head, e.colour))
    full = (1 << n) - 1
    parent: dict[int, tuple[int, int]] = {}
    failed: set[tuple[int, int]] = set()

    def grow(tree: int, used: int) -> bool:
        if tree == full:
            return True
        key = (tree, used)
        if key in failed:
            return False
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError("exact search budget exhausted")
        branch: list[tuple[int, int, list[tuple[int, int]]]] = []
        avail_union = 0
        remaining = 0
        for v in range(n):
            if tree >> v & 1:
                continue
            remaining += 1
            avail = 0
            adm: list[tuple[int, int]] = []
            for t, c in in_lists[v]:
                bit = 1 << c
                if used & bit:
                    continue
                avail |= bit
                if tree >> t & 1:
                    adm.append((t, c))
            if avail == 0:
                failed.add(key)
                return False  # v can never be attached on this branch
            avail_union |= avail
            branch.append((len(adm), v, adm))
        if avail_union.bit_count() < remaining:
            failed.add(key)
            return False  # not enough distinct unused colours left anywhere
        # Reachability: every outside vertex must be reachable from the
        # tree along edges whose colours are still unused.
        seen = tree
        stack = [v for v in range(n) if tree >> v & 1]
        while stack:
            t = stack.pop()
            for h, c in out_lists[t]:
                if not seen >> h & 1 and not used >> c & 1:
                    seen |= 1 << h
                    stack.append(h)
        if seen != full:
            failed.add(key)
            return False
        # Branching over every admissible frontier edge is complete: any
        # extension tree must leave the current vertex set through one of
        # them. Scarcest heads first; (count, v) pairs are unique, so the
        # admissible lists never take part in the comparison.
        branch.sort()
        for _, v, adm in branch:
            vbit = 1 << v
            for t, c in adm:
                parent[v] = (t, c)
                if grow(tree | vbit, used | (1 << c)):
                    return True
        failed.add(key)
        return False

    if not grow(1 << root, 0):
        return None
    edges = {v: ColouredEdge(t, v, c) for v, (t, c) in parent.items()}
    cert = ArborescenceCertificate(root, edges)
    assert verify_certificate(g, cert), "exact solver produced an invalid certificate"
    return cert


_COLOUR_COMBO_CAP = 2048


def _tree_certificate(g: ColouredDigraph, root: int,
                      allowed: list[ColouredEdge]) -> ArborescenceCertificate:
    """BFS out-tree from root over `allowed`; caller guarantees it spans."""
    adjacency: list[list[ColouredEdge]] = [[] for _ in range(g.n)]
    for e in allowed:
        adjacency[e.tail].append(e)
    parent: dict[int, ColouredEdge] = {}
    queue = [root]
    seen = {root}
    qi = 0
    while qi < len(queue):
        t = queue[qi]
        qi += 1
        for e in adjacency[t]:
            if e.head not in seen:
                seen.add(e.head)
                parent[e.head] = e
                queue.append(e.head)
    cert = ArborescenceCertificate(root, parent)
    assert verify_certificate(g, cert), "tree extraction produced an invalid certificate"
    return cert


def _decide_by_colour_enumeration(
    g: ColouredDigraph, root: int | None, deadline: float | None
) -> ArborescenceCertificate | None | str:
    """Exact decision for the few-collisions regime.

    A rainbow arborescence keeps at most one edge per colour, so fixing
    which single edge survives in every colour class of multiplicity >= 2
    and asking for any spanning arborescence among the surviving edges is
    an exact reduction. The number of combinations is the product of the
    class sizes; returns "inapplicable" when that exceeds the cap.
    """
    from itertools import product

    by_colour: dict[int, list[ColouredEdge]] = {}
    for e in g.edges:
        by_colour.setdefault(e.colour, []).append(e)
    single = [es[0] for es in by_colour.values() if len(es) == 1]
    multi = [es for es in by_colour.values() if len(es) > 1]
    combos = 1
    for es in multi:
        combos *= len(es)
        if combos > _COLOUR_COMBO_CAP:
            return "inapplicable"
    for selection in product(*multi):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError("exact search budget exhausted")
        allowed = single + list(selection)
        sub = ColouredDigraph(g.n, g.colour_count)
        for e in allowed:
            sub.add_edge(e)
        if root is None:
            ok, r = has_spanning_arborescence(sub)
        else:
            r = root
            ok = len(reachable_from(sub, {root})) == g.n
        if ok:
            return _tree_certificate(g, r, allowed)
    return None


def decide_exact(
    g: ColouredDigraph, root: int | None = None, deadline: float | None = None
) -> ArborescenceCertificate | None:
    """Sound and complete decision.

    When few colours collide, enumerates one surviving edge per colliding
    colour class and solves each branch as a plain arborescence-existence
    question. Otherwise falls back to backtracking: grow the tree outward
    from each candidate root, branching on every frontier-crossing edge
    with an unused colour. Failed (vertex set, colour set) states are
    memoised: whether a partial tree extends to a spanning one depends only
    on which vertices it covers and which colours it has consumed, never on
    its internal shape. Candidate roots are tried in increasing in-degree
    order; a vertex of in-degree zero, if present, is the only possible
    root.
    """
    n = g.n
    if n == 1:
        return ArborescenceCertificate(0, {})
    if g.distinct_colours < n - 1:
        return None
    if root is None and g.zero_in_count >= 2:
        return None
    outcome = _decide_by_colour_enumeration(g, root, deadline)
    if outcome != "inapplicable":
        return outcome
    for r in _candidate_roots(g, root):
        cert = _search_root(g, r, deadline)
        if cert is not None:
            return cert
    return None


def heuristic_construct(
    g: ColouredDigraph, root: int, spare_pool: set[int] | None = None
) -> HeuristicOutcome:
    """One-sided constructive attempt, fast at process scale.

    Pipeline: (1) find an injective colour assignment f on V \\ {root};
    (2) reserve the spare pool (by default every colour outside the image
    of f); (3) materialise one in-edge per vertex in colour f(v), preferring
    tails already connected to the root, which leaves the root's
    arborescence plus unicyclic leftover components; (4) grow the root
    component by re-pointing outside vertices at it through edges whose
    colour is spare and unconsumed, or is the colour the swap itself frees;
    a re-pointed vertex brings its whole subtree across, and a re-pointed
    cycle vertex brings its whole component (the cycle breaks there);
    (5) iterate to a fixpoint. Success returns a verified certificate;
    failure proves nothing.
    """
    n = g.n
    if n == 1:
        return HeuristicOutcome(ArborescenceCertificate(0, {}))
    bigraph = build_colour_bigraph(g)
    assignment = find_colour_assignment(bigraph, root)
    if assignment is None:
        return HeuristicOutcome(None, failure_reason="no injective colour assignment")
    f = assignment.mapping
    if spare_pool is None:
        spare_pool = set(range(g.colour_count)) - set(f.values())

    # Materialise: earliest in-edge in colour f(v) whose tail is already
    # connected to the root; repeat passes while the connected set grows.
    candidates: dict[int, list[ColouredEdge]] = {
        v: [e for e in g.in_edges[v] if e.colour == f[v]] for v in f
    }
    chosen: dict[int, ColouredEdge] = {}
    connected = {root}
    pending = set(f)
    progress = True
    while progress and pending:
        progress = False
        for v in sorted(pending):
            for e in candidates[v]:
                if e.tail in connected:
                    chosen[v] = e
                    connected.add(v)
                    pending.discard(v)
                    progress = True
                    break
    for v in pending:
        chosen[v] = candidates[v][0]

    used = {e.colour for e in chosen.values()}
    assert len(used) == n - 1

    children: list[list[int]] = [[] for _ in range(n)]
    for v, e in chosen.items():
        children[e.tail].append(v)

    in_root = set(connected)
    progress = True
    while progress and len(in_root) < n:
        progress = False
        for v in range(n):
            if v == root or v in in_root:
                continue
            own = chosen[v].colour
            taken = None
            for e in g.in_edges[v]:
                if e == chosen[v] or e.tail not in in_root:
                    continue
                c = e.colour
                if c == own or (c in spare_pool and c not in used):
                    taken = e
                    break
            if taken is None:
                continue
            if taken.colour != own:
                used.discard(own)
                used.add(taken.colour)
            children[chosen[v].tail].remove(v)
            chosen[v] = taken
            children[taken.tail].append(v)
            stack = [v]
            while stack:
                u = stack.pop()
                if u in in_root:
                    continue
                in_root.add(u)
                stack.extend(children[u])
            progress = True

    if len(in_root) < n:
        outside = [v for v in range(n) if v not in in_root]
        return HeuristicOutcome(
            None,
            unrepaired_components=_count_cycles(chosen, outside),
            spare_colours_left=len(spare_pool - used),
            failure_reason="unrepairable components",
        )
    cert = ArborescenceCertificate(root, dict(chosen))
    assert verify_certificate(g, cert), "heuristic produced an invalid certificate"
    return HeuristicOutcome(cert, spare_colours_left=len(spare_pool - used))


def _count_cycles(chosen: dict[int, ColouredEdge], outside: list[int]) -> int:
    """Number of leftover unicyclic components among the outside vertices."""
    seen: dict[int, int] = {}
    cycles = 0
    for s in outside:
        if s in seen:
            continue
        v = s
        while v not in seen:
            seen[v] = s
            v = chosen[v].tail
        if seen[v] == s:
            cycles += 1
    return cycles


def _heuristic_roots(g: ColouredDigraph, root: int | None, tries: int = 3) -> list[int]:
    if root is not None:
        return [root]
    zero_in = [v for v in range(g.n) if g.in_deg[v] == 0]
    if len(zero_in) == 1:
        return zero_in
    if len(zero_in) >= 2:
        return []
    order = sorted(range(g.n), key=lambda v: (g.in_deg[v], v))
    return order[:tries]


def decide(
    g: ColouredDigraph,
    mode: str = "auto",
    root: int | None = None,
    budget_s: float | None = 10.0,
) -> DecideResult:
    """Unified entry point for the three solvers.

    oracle / exact are two-sided; heuristic is one-sided (not_found means
    "no certificate constructed"). auto runs the heuristic as a fast accept
    path and falls back to the exact search, so it stays two-sided.
    """
    if mode not in ("oracle", "exact", "heuristic", "auto"):
        raise ValueError(f"unknown decision mode {mode!r}")
    n = g.n
    if n > 1 and g.zero_in_count >= 2:
        return DecideResult("not_found", decided_by="exact")
    if n > 1 and g.distinct_colours < n - 1:
        return DecideResult("not_found", decided_by="exact")

    if mode == "oracle":
        cert = brute_force_oracle(g, root=root)
        return DecideResult(
            "found" if cert else "not_found", cert, decided_by="oracle"
        )

    heuristic_failures = 0
    if mode in ("heuristic", "auto"):
        for r in _heuristic_roots(g, root):
            outcome = heuristic_construct(g, r)
            if outcome.success:
                return DecideResult(
                    "found",
                    outcome.certificate,
                    decided_by="heuristic",
                    diagnostics={"heuristic_failures": heuristic_failures},
                )
            heuristic_failures += 1
        if mode == "heuristic":
            return DecideResult(
                "not_found",
                decided_by="heuristic",
                diagnostics={"heuristic_failures": heuristic_failures},
            )

    deadline = None if budget_s is None else time.monotonic() + budget_s
    try:
        cert = decide_exact(g, root=root, deadline=deadline)
    except BudgetExceededError:
        return DecideResult(
            "unknown", decided_by="exact", diagnostics={"heuristic_failures": heuristic_failures}
        )
    return DecideResult(
        "found" if cert else "not_found",
        cert,
        decided_by="exact",
        diagnostics={"heuristic_failures": heuristic_failures},
    )
