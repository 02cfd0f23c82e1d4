"""Static expansion of a time-varying graph for one source/destination pair.

Each contact becomes a node; an arc joins two contact nodes exactly when
traversing them back to back is time-feasible. s->d journeys of the original
graph then correspond one to one with s->d paths here, which turns journey
questions into static path questions: min-hop journeys come from BFS and
1-slot-disjoint packing comes from node-capacitated max flow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping

from .tvg import Contact, Journey, TimeVaryingGraph, contacts

SRC = 0  # node index of the source terminal
DST = 1  # node index of the destination terminal


@dataclass(frozen=True)
class LineGraph:
    """Contact expansion; node 0 is the source terminal, node 1 the destination."""

    graph: TimeVaryingGraph
    s: str
    d: str
    contact_list: tuple[Contact, ...]  # interior node i+2 <-> contact_list[i]
    succ: tuple[tuple[int, ...], ...]  # adjacency, indices into the node space

    @property
    def node_count(self) -> int:
        return len(self.contact_list) + 2

    @property
    def arc_count(self) -> int:
        return sum(len(a) for a in self.succ)

    def contact_of(self, node: int) -> Contact:
        return self.contact_list[node - 2]


@dataclass(frozen=True)
class NodeCutResult:
    value: Fraction
    cut: tuple[Contact, ...]
    paths: tuple[tuple[Contact, ...], ...]  # populated for all-ones weights


def build_line_graph(g: TimeVaryingGraph, s: str, d: str) -> LineGraph:
    """Expand every contact of g into a node, terminals s and d included."""
    if s == d:
        raise ValueError("source and destination must differ")
    for n in (s, d):
        if n not in g.nodes:
            raise ValueError(f"unknown node {n!r}")

    clist = contacts(g)
    index = {c: i + 2 for i, c in enumerate(clist)}

    # contacts grouped by their start node, presorted by (slot, edge order)
    by_start: dict[str, list[Contact]] = {}
    for c in clist:
        by_start.setdefault(g.edge(c.edge).src, []).append(c)
    for lst in by_start.values():
        lst.sort(key=lambda c: (c.slot, g.edge_index(c.edge)))

    succ: list[tuple[int, ...]] = []
    src_arcs = tuple(index[c] for c in by_start.get(s, ()))
    succ.append(src_arcs)       # node 0: source terminal
    succ.append(())             # node 1: destination terminal (no out-arcs)
    for c in clist:
        e = g.edge(c.edge)
        nxt: list[int] = []
        if e.dst == d:
            nxt.append(DST)
        for c2 in by_start.get(e.dst, ()):
            if c2.slot > c.slot:
                nxt.append(index[c2])
        succ.append(tuple(nxt))
    return LineGraph(g, s, d, tuple(clist), tuple(succ))


def line_reachable(lg: LineGraph) -> bool:
    """Plain BFS reachability source -> destination."""
    seen = [False] * lg.node_count
    seen[SRC] = True
    frontier = [SRC]
    while frontier:
        nxt = []
        for u in frontier:
            for v in lg.succ[u]:
                if not seen[v]:
                    if v == DST:
                        return True
                    seen[v] = True
                    nxt.append(v)
        frontier = nxt
    return False


def min_hop_path(lg: LineGraph) -> Journey | None:
    """Fewest-hop s->d journey, ties broken by smallest (slot, edge order).

    Successor lists are already sorted that way, so plain FIFO BFS with
    first-discovery parents realizes the tie-break.
    """
    parent = [-1] * lg.node_count
    parent[SRC] = SRC
    frontier = [SRC]
    while frontier and parent[DST] == -1:
        nxt = []
        for u in frontier:
            for v in lg.succ[u]:
                if parent[v] == -1:
                    parent[v] = u
                    if v == DST:
                        break
                    nxt.append(v)
            if parent[DST] != -1:
                break
        frontier = nxt
    if parent[DST] == -1:
        return None
    hops: list[Contact] = []
    node = parent[DST]
    while node != SRC:
        hops.append(lg.contact_of(node))
        node = parent[node]
    hops.reverse()
    return Journey(tuple(hops))


def node_disjoint_maxflow(lg: LineGraph,
                          weights: Mapping[Contact, Fraction | int] | None = None
                          ) -> NodeCutResult:
    """Max flow with per-contact node capacities; terminals are uncapacitated.

    Weights default to 1 on every contact. All weights are scaled to integers
    (they are rationals with small denominators), so values and the returned
    cut are exact. The cut is read off the final residual graph: interior
    nodes whose split arc is saturated on the source-reachable boundary.
    When every weight is 1 the flow decomposes into that many internally
    node-disjoint paths, which are returned as contact sequences.
    """
    n_contacts = len(lg.contact_list)
    caps: list[Fraction] = []
    unit = True
    for c in lg.contact_list:
        w = Fraction(weights[c]) if weights is not None else Fraction(1)
        if w <= 0:
            raise ValueError(f"nonpositive weight for contact {c}")
        caps.append(w)
        unit = unit and w == 1

    scale = lcm(*(w.denominator for w in caps)) if caps else 1

    # node split: interior contact i -> nodes (2+2i) in, (2+2i+1) out
    # terminals keep single nodes 0 (source) and 1 (destination).
    def n_in(i: int) -> int:
        return 2 + 2 * i

    def n_out(i: int) -> int:
        return 3 + 2 * i

    size = 2 + 2 * n_contacts
    graph: list[list[int]] = [[] for _ in range(size)]  # arc ids per node
    arc_to: list[int] = []
    arc_cap: list[int] = []

    def add_arc(u: int, v: int, cap: int) -> None:
        graph[u].append(len(arc_to))
        arc_to.append(v)
        arc_cap.append(cap)
        graph[v].append(len(arc_to))
        arc_to.append(u)
        arc_cap.append(0)

    total = sum(int(w * scale) for w in caps) + 1  # effectively infinite
    for i in range(n_contacts):
        add_arc(n_in(i), n_out(i), int(caps[i] * scale))
    for v in lg.succ[SRC]:
        add_arc(SRC, n_in(v - 2), total)
    for i, c in enumerate(lg.contact_list):
        for v in lg.succ[i + 2]:
            if v == DST:
                add_arc(n_out(i), DST, total)
            else:
                add_arc(n_out(i), n_in(v - 2), total)

    flow = [0] * len(arc_to)

    def bfs_augment() -> int:
        pred: list[int] = [-1] * size  # arc id used to reach node
        pred[SRC] = -2
        queue = [SRC]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for a in graph[u]:
                v = arc_to[a]
                if pred[v] == -1 and arc_cap[a] - flow[a] > 0:
                    pred[v] = a
                    if v == DST:
                        queue = []
                        break
                    queue.append(v)
            if pred[DST] != -1:
                break
        if pred[DST] == -1:
            return 0
        # bottleneck along the path
        bottleneck = None
        v = DST
        while v != SRC:
            a = pred[v]
            room = arc_cap[a] - flow[a]
            bottleneck = room if bottleneck is None else min(bottleneck, room)
            v = arc_to[a ^ 1]
        v = DST
        while v != SRC:
            a = pred[v]
            flow[a] += bottleneck
            flow[a ^ 1] -= bottleneck
            v = arc_to[a ^ 1]
        return bottleneck

    value = 0
    while True:
        pushed = bfs_augment()
        if pushed == 0:
            break
        value += pushed

    # residual reachability from the source fixes the cut deterministically
    reach = [False] * size
    reach[SRC] = True
    stack = [SRC]
    while stack:
        u = stack.pop()
        for a in graph[u]:
            v = arc_to[a]
            if not reach[v] and arc_cap[a] - flow[a] > 0:
                reach[v] = True
                stack.append(v)
    cut = tuple(lg.contact_list[i] for i in range(n_contacts)
                if reach[n_in(i)] and not reach[n_out(i)])

    paths: tuple[tuple[Contact, ...], ...] = ()
    if unit and value > 0:
        paths = _decompose_unit_paths(lg, graph, arc_to, flow, value)

    return NodeCutResult(value=Fraction(value, scale), cut=cut, paths=paths)


def _decompose_unit_paths(lg, graph, arc_to, flow, value):
    """Walk unit flow from the source into node-disjoint contact paths."""
    used = [False] * len(arc_to)
    paths = []
    for _ in range(value):
        path: list[Contact] = []
        node = SRC
        while node != DST:
            for a in graph[node]:
                if a % 2 == 0 and flow[a] > 0 and not used[a]:
                    used[a] = True
                    node = arc_to[a]
                    break
            else:
                raise AssertionError("flow decomposition ran dry")
            if node >= 2 and node % 2 == 0:  # an in-half: record its contact
                path.append(lg.contact_list[(node - 2) // 2])
        paths.append(tuple(path))
    return tuple(paths)


def to_dot(lg: LineGraph) -> str:
    """GraphViz rendering with contacts labeled edge@slot."""
    lines = ["digraph linegraph {"]
    lines.append(f'  n0 [label="{lg.s}", shape=box];')
    lines.append(f'  n1 [label="{lg.d}", shape=box];')
    for i, c in enumerate(lg.contact_list):
        lines.append(f'  n{i + 2} [label="{c.edge}@{c.slot}"];')
    for u, outs in enumerate(lg.succ):
        for v in outs:
            lines.append(f"  n{u} -> n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
