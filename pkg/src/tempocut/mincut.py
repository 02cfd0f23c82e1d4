"""Minimum delta-removal disruption.

A delta-removal knocks one edge out for delta consecutive slots. The
disruption number is the fewest removals that disconnect a pair. The
approximation pipeline: weight each contact by the reciprocal of the
densest same-edge delta-window through it, solve weighted node mincut on
the line graph, then round the cut to removals with a per-edge stabbing
cover. exact_mincut_delta is the desk-scale oracle (iterative-deepening
hitting-set search over canonical removal heads).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .linegraph import build_line_graph, node_disjoint_maxflow
from .maxflow import exact_maxflow_delta, greedy_maxflow_delta
from .tvg import (Contact, DeltaRemoval, InstanceTooLargeError, Journey,
                  TimeVaryingGraph, reachable, removal_footprint)

MAX_EXACT_DELTA = 30  # lcm(1..30) keeps scaled capacities in machine range
DEFAULT_HEAD_CAP = 2000

WeightMap = dict[Contact, Fraction]


@dataclass(frozen=True)
class CutResult:
    removals: tuple[DeltaRemoval, ...]
    delta: int
    exact: bool
    weight_lower_bound: Fraction | None = None

    @property
    def count(self) -> int:
        return len(self.removals)

    def to_json_dict(self) -> dict:
        out = {
            "delta": self.delta,
            "count": self.count,
            "exact": self.exact,
            "removals": [{"edge": r.edge, "head": r.head} for r in self.removals],
        }
        if self.weight_lower_bound is not None:
            out["weight_lower_bound"] = str(self.weight_lower_bound)
        return out


def set_weights(g: TimeVaryingGraph, delta: int) -> WeightMap:
    """Per-contact weight 1/K, K = most same-edge contacts any single
    delta-removal covering this contact can take out."""
    if delta < 1:
        raise ValueError("delta must be positive")
    # removal windows may run past the horizon, so delta > T is fine; the
    # cap only keeps the lcm scaling of 1/K weights in machine range
    if delta > MAX_EXACT_DELTA:
        raise ValueError(
            f"delta {delta} too large for the weighting scheme (max {MAX_EXACT_DELTA})")
    w: WeightMap = {}
    for e in g.edges:
        slots = g.active[e.eid]
        n = len(slots)
        for i, t in enumerate(slots):
            best = 1
            for h in range(t - delta + 1, t + 1):
                lo = bisect_right(slots, h - 1)
                hi = bisect_right(slots, h + delta - 1)
                if hi - lo > best:
                    best = hi - lo
            w[Contact(e.eid, t)] = Fraction(1, best)
    return w


def weighted_mincut_1(g: TimeVaryingGraph, weights: WeightMap, s: str,
                      d: str) -> tuple[Fraction, tuple[Contact, ...]]:
    """Minimum-weight contact set whose deletion disconnects s from d.

    Exact for single-contact deletions by the journey/path correspondence;
    returns (total weight, cut contacts).
    """
    lg = build_line_graph(g, s, d)
    res = node_disjoint_maxflow(lg, weights=weights)
    return res.value, res.cut


def delta_cover(contact_set, delta: int) -> tuple[DeltaRemoval, ...]:
    """Smallest set of delta-removals covering the given contacts.

    Independent per edge; greedy stabbing (anchor a window at each leftmost
    uncovered slot) is optimal for points on a line.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    by_edge: dict[str, list[int]] = {}
    for c in contact_set:
        by_edge.setdefault(c.edge, []).append(c.slot)
    removals: list[DeltaRemoval] = []
    for e in sorted(by_edge):
        slots = sorted(set(by_edge[e]))
        i = 0
        while i < len(slots):
            head = slots[i]
            removals.append(DeltaRemoval(e, head, delta))
            limit = head + delta - 1
            while i < len(slots) and slots[i] <= limit:
                i += 1
    removals.sort(key=lambda r: (r.edge, r.head))
    return tuple(removals)


def sandwich_check(contact_set, weights: WeightMap, delta: int) -> bool:
    """Sandwich telling the rounding step is sane:
    sum of weights <= cover size <= delta * sum of weights."""
    total = sum((weights[c] for c in contact_set), Fraction(0))
    k = len(delta_cover(contact_set, delta))
    return total <= k <= delta * total


def verify_cut(g: TimeVaryingGraph, cut, s: str, d: str) -> bool:
    """True iff the removals (a CutResult or any iterable of DeltaRemoval)
    leave d unreachable from s."""
    removals = cut.removals if isinstance(cut, CutResult) else cut
    banned: set[Contact] = set()
    for r in removals:
        banned.update(removal_footprint(g, r))
    return not reachable(g, s, d, banned=frozenset(banned))


def minweight_mincut_delta(g: TimeVaryingGraph, s: str, d: str,
                           delta: int) -> CutResult:
    """Approximate disruption set: weighted contact cut, rounded to
    delta-removals. Guaranteed within a factor delta of optimal, and the
    weight of the cut is itself a lower bound on the optimum."""
    w = set_weights(g, delta)
    value, cut = weighted_mincut_1(g, w, s, d)
    removals = delta_cover(cut, delta)
    if not verify_cut(g, removals, s, d):
        raise AssertionError("rounded cut failed to disconnect; this is a bug")
    return CutResult(removals, delta, exact=False, weight_lower_bound=value)


def _min_hop_surviving(g: TimeVaryingGraph, s: str, d: str,
                       banned: frozenset[Contact]) -> Journey | None:
    """Min-hop journey avoiding banned contacts, or None.

    BFS over contact states. A contact on edge e is only worth expanding
    if its slot beats the earliest slot already expanded on e (an earlier
    slot at an earlier-or-same level dominates: same edge, more room to
    continue), which keeps the state space near-linear.
    """
    best_slot: dict[str, int] = {}
    parent: dict[Contact, Contact | None] = {}

    def out_contacts(node: str, after: int) -> list[Contact]:
        found = []
        for e in g.out_edges(node):
            slots = g.active[e.eid]
            for k in range(bisect_right(slots, after), len(slots)):
                c = Contact(e.eid, slots[k])
                if c not in banned:
                    found.append(c)
                    break  # earliest usable slot on e dominates later ones
        found.sort(key=lambda c: (c.slot, g.edge_index(c.edge)))
        return found

    frontier: list[Contact] = []
    for c in out_contacts(s, 0):
        parent[c] = None
        best_slot[c.edge] = c.slot
        frontier.append(c)

    while frontier:
        nxt: list[Contact] = []
        for c in frontier:
            if g.edge(c.edge).dst == d:
                hops = [c]
                cur = parent[c]
                while cur is not None:
                    hops.append(cur)
                    cur = parent[cur]
                hops.reverse()
                return Journey(tuple(hops))
        for c in frontier:
            for c2 in out_contacts(g.edge(c.edge).dst, c.slot):
                known = best_slot.get(c2.edge)
                if known is not None and known <= c2.slot:
                    continue
                parent[c2] = c
                best_slot[c2.edge] = c2.slot
                nxt.append(c2)
        nxt.sort(key=lambda c: (c.slot, g.edge_index(c.edge)))
        frontier = nxt
    return None


def _canonical_heads(g: TimeVaryingGraph, c: Contact, delta: int) -> list[int]:
    """Heads of delta-removals on c.edge that take out c, restricted to
    active slots: sliding a head right onto the first active slot only
    grows the footprint, so inactive heads are never needed."""
    slots = g.active[c.edge]
    lo = bisect_right(slots, c.slot - delta)
    hi = bisect_right(slots, c.slot)
    return list(slots[lo:hi])


def exact_mincut_delta(g: TimeVaryingGraph, s: str, d: str, delta: int,
                       head_cap: int = DEFAULT_HEAD_CAP) -> CutResult:
    """Exact minimum number of delta-removals disconnecting s from d.

    Iterative deepening on the removal count k, starting from the best
    known lower bound (a delta-disjoint journey family of size f needs f
    removals, one per member). At each depth: find a min-hop surviving
    journey, branch on the canonical removals hitting it; left-to-right
    forbidden sets keep branches from revisiting permutations. The
    approximation's cover is both the depth ceiling and the fallback.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    approx = minweight_mincut_delta(g, s, d, delta)
    upper = approx.count
    if upper == 0:
        return CutResult((), delta, exact=True)

    head_budget = sum(len(g.active[e.eid]) for e in g.edges)
    if head_budget > head_cap:
        raise InstanceTooLargeError(
            f"instance too large for exact oracle: more than {head_cap} removal heads")

    try:
        lower = exact_maxflow_delta(g, s, d, delta).count
    except InstanceTooLargeError:
        lower = greedy_maxflow_delta(g, s, d, delta).count
    lower = max(lower, 1)

    def footprint_set(chosen: list[DeltaRemoval]) -> frozenset[Contact]:
        banned: set[Contact] = set()
        for r in chosen:
            banned.update(removal_footprint(g, r))
        return frozenset(banned)

    def search(k: int, chosen: list[DeltaRemoval],
               forbidden: frozenset[DeltaRemoval]) -> tuple[DeltaRemoval, ...] | None:
        j = _min_hop_surviving(g, s, d, footprint_set(chosen))
        if j is None:
            return tuple(chosen)
        if len(chosen) == k:
            return None
        candidates: list[DeltaRemoval] = []
        seen: set[DeltaRemoval] = set()
        for c in j.hops:
            for h in _canonical_heads(g, c, delta):
                r = DeltaRemoval(c.edge, h, delta)
                if r not in seen and r not in forbidden:
                    seen.add(r)
                    candidates.append(r)
        blocked = set(forbidden)
        for r in candidates:
            chosen.append(r)
            got = search(k, chosen, frozenset(blocked))
            chosen.pop()
            if got is not None:
                return got
            blocked.add(r)
        return None

    for k in range(lower, upper):
        got = search(k, [], frozenset())
        if got is not None:
            removals = tuple(sorted(got, key=lambda r: (r.edge, r.head)))
            return CutResult(removals, delta, exact=True,
                             weight_lower_bound=approx.weight_lower_bound)
    removals = tuple(sorted(approx.removals, key=lambda r: (r.edge, r.head)))
    return CutResult(removals, delta, exact=True,
                     weight_lower_bound=approx.weight_lower_bound)


@dataclass(frozen=True)
class SurvivabilityVerdict:
    n: int
    delta: int
    verdict: str  # "survivable" | "not-survivable" | "unknown"
    lower: int
    upper: int
    exact: bool

    def to_json_dict(self) -> dict:
        return {"n": self.n, "delta": self.delta, "verdict": self.verdict,
                "lower": self.lower, "upper": self.upper, "exact": self.exact}


def survivability_bounds(g: TimeVaryingGraph, s: str, d: str, n: int,
                         delta: int, exact: bool = False) -> SurvivabilityVerdict:
    """Can the pair ride out any n simultaneous delta-removals?

    Survivable iff the disruption number exceeds n. With exact=True the
    oracle settles it; otherwise the greedy journey count bounds the
    disruption number from below, the rounded cut from above, and the gap
    in between stays 'unknown'.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if exact:
        cut = exact_mincut_delta(g, s, d, delta)
        verdict = "survivable" if cut.count > n else "not-survivable"
        return SurvivabilityVerdict(n, delta, verdict, cut.count, cut.count,
                                    exact=True)
    flow = greedy_maxflow_delta(g, s, d, delta).count
    cut = minweight_mincut_delta(g, s, d, delta)
    if flow > n:
        verdict = "survivable"
    elif cut.count <= n:
        verdict = "not-survivable"
    else:
        verdict = "unknown"
    return SurvivabilityVerdict(n, delta, verdict, flow, cut.count, exact=False)
