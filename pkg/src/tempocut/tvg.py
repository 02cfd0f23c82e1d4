"""Discrete time-varying graph model.

A TimeVaryingGraph is a digraph whose edges are only usable during given
time slots of a horizon 1..T. Traversing an edge takes exactly one slot,
so a journey is a chain of contacts (edge, slot) with strictly increasing
slots. A delta-removal knocks an edge out for delta consecutive slots.

This module holds the model types plus the basic operations everything
else is built on: validation, contact listing, journey checks, removal
application, reachability, exhaustive journey enumeration, and the
interference relation between journeys.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class InstanceTooLargeError(RuntimeError):
    """Raised when an exact oracle would exceed its configured budget."""


class Contact(NamedTuple):
    """One activation of an edge in one time slot."""

    edge: str
    slot: int


class DeltaRemoval(NamedTuple):
    """A transient failure: `edge` is unusable during [head, head+delta)."""

    edge: str
    head: int
    delta: int  # positive duration in slots


class EdgeDef(NamedTuple):
    eid: str
    src: str
    dst: str


@dataclass(frozen=True)
class Journey:
    """A time-respecting path: hops chain spatially, slots strictly increase."""

    hops: tuple[Contact, ...]

    def __post_init__(self):
        if not self.hops:
            raise ValueError("a journey has at least one hop")

    def edges(self) -> tuple[str, ...]:
        return tuple(h.edge for h in self.hops)

    @property
    def departure(self) -> int:
        return self.hops[0].slot

    @property
    def arrival(self) -> int:
        return self.hops[-1].slot

    def to_json_obj(self) -> list[list]:
        return [[h.edge, h.slot] for h in self.hops]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


class TimeVaryingGraph:
    """Immutable time-varying digraph.

    Edge ids are assigned "e1".."eN" in declaration order; that order also
    fixes the deterministic contact ordering used everywhere downstream.
    The constructor normalizes active slot lists (sorted, deduplicated) but
    does not reject invalid data; use validate_graph / from_json_dict for that.
    """

    __slots__ = ("horizon", "nodes", "edges", "active",
                 "_by_id", "_index", "_out", "_node_set")

    def __init__(self, nodes: Iterable[str],
                 edges: Iterable[tuple[str, str, Iterable[int]]],
                 horizon: int):
        seen: dict[str, None] = {}
        for n in nodes:
            seen.setdefault(str(n))
        self.nodes: tuple[str, ...] = tuple(seen)
        self._node_set = frozenset(self.nodes)
        self.horizon = int(horizon)

        defs: list[EdgeDef] = []
        active: dict[str, tuple[int, ...]] = {}
        for i, (src, dst, slots) in enumerate(edges):
            eid = f"e{i + 1}"
            defs.append(EdgeDef(eid, str(src), str(dst)))
            active[eid] = tuple(sorted(set(int(t) for t in slots)))
        self.edges: tuple[EdgeDef, ...] = tuple(defs)
        self.active: dict[str, tuple[int, ...]] = active

        self._by_id = {e.eid: e for e in defs}
        self._index = {e.eid: i for i, e in enumerate(defs)}
        out: dict[str, list[EdgeDef]] = {}
        for e in defs:
            out.setdefault(e.src, []).append(e)
        self._out = {n: tuple(es) for n, es in out.items()}

    # -- lookups ---------------------------------------------------------

    def edge(self, eid: str) -> EdgeDef:
        return self._by_id[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def edge_index(self, eid: str) -> int:
        return self._index[eid]

    def out_edges(self, node: str) -> tuple[EdgeDef, ...]:
        return self._out.get(node, ())

    def active_slots(self, eid: str) -> tuple[int, ...]:
        return self.active[eid]

    @property
    def contact_count(self) -> int:
        return sum(len(s) for s in self.active.values())

    # -- equality (used heavily by tests) --------------------------------

    def _key(self):
        return (self.horizon, self.nodes, self.edges,
                tuple(self.active[e.eid] for e in self.edges))

    def __eq__(self, other):
        return isinstance(other, TimeVaryingGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"TimeVaryingGraph({len(self.nodes)} nodes, "
                f"{len(self.edges)} edges, {self.contact_count} contacts, "
                f"T={self.horizon})")

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "T": self.horizon,
            "nodes": list(self.nodes),
            "edges": [
                {"from": e.src, "to": e.dst, "active": list(self.active[e.eid])}
                for e in self.edges
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, obj: dict) -> "TimeVaryingGraph":
        """Build from the document format; rejects invalid graphs."""
        try:
            horizon = obj["T"]
            nodes = obj["nodes"]
            raw_edges = [(e["from"], e["to"], e["active"]) for e in obj["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph document: {exc}") from exc
        g = cls(nodes, raw_edges, horizon)
        report = validate_graph(g)
        if not report.ok:
            raise ValueError("invalid graph: " + "; ".join(report.violations))
        return g

    @classmethod
    def loads(cls, text: str) -> "TimeVaryingGraph":
        return cls.from_json_dict(json.loads(text))


def load_tvg(path: str) -> TimeVaryingGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return TimeVaryingGraph.loads(fh.read())


def save_tvg(g: TimeVaryingGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(g.dumps())


# -- operations ------------------------------------------------------------


def validate_graph(g: TimeVaryingGraph) -> ValidationReport:
    """Check structural invariants; returns a report rather than raising."""
    violations: list[str] = []
    if g.horizon < 1:
        violations.append(f"horizon must be a positive integer, got {g.horizon}")
    pairs: set[tuple[str, str]] = set()
    for e in g.edges:
        if e.src not in g._node_set:
            violations.append(f"{e.eid}: endpoint {e.src!r} not in node set")
        if e.dst not in g._node_set:
            violations.append(f"{e.eid}: endpoint {e.dst!r} not in node set")
        if (e.src, e.dst) in pairs:
            violations.append(f"{e.eid}: duplicate edge {e.src!r}->{e.dst!r}")
        pairs.add((e.src, e.dst))
        for t in g.active[e.eid]:
            if not (1 <= t <= g.horizon):
                violations.append(f"{e.eid}: active slot {t} outside 1..{g.horizon}")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def contacts(g: TimeVaryingGraph) -> list[Contact]:
    """All contacts in deterministic (edge declaration, slot) order."""
    out: list[Contact] = []
    for e in g.edges:
        for t in g.active[e.eid]:
            out.append(Contact(e.eid, t))
    return out


def is_valid_journey(g: TimeVaryingGraph, j: Journey, s: str, d: str) -> bool:
    """True iff j is a feasible s->d journey of g (never raises)."""
    hops = j.hops
    if not hops:
        return False
    prev_slot = 0
    prev_node = s
    for edge_id, t in hops:
        if not g.has_edge(edge_id):
            return False
        e = g.edge(edge_id)
        if e.src != prev_node:
            return False
        if t <= prev_slot or t > g.horizon:
            return False
        if t not in set(g.active[edge_id]):
            return False
        prev_slot = t
        prev_node = e.dst
    return prev_node == d


def removal_footprint(g: TimeVaryingGraph, r: DeltaRemoval) -> list[Contact]:
    """Contacts of r.edge disabled by r: active slots in [head, head+delta)."""
    if r.delta < 1:
        raise ValueError("removal duration must be positive")
    if not g.has_edge(r.edge):
        raise ValueError(f"unknown edge {r.edge!r}")
    lo, hi = r.head, r.head + r.delta - 1
    return [Contact(r.edge, t) for t in g.active[r.edge] if lo <= t <= hi]


def apply_removals(g: TimeVaryingGraph,
                   removals: Iterable[DeltaRemoval]) -> TimeVaryingGraph:
    """Residual graph with every removal footprint deleted. Order-insensitive."""
    dead: dict[str, set[int]] = {}
    for r in removals:
        for c in removal_footprint(g, r):
            dead.setdefault(c.edge, set()).add(c.slot)
    new_edges = []
    for e in g.edges:
        gone = dead.get(e.eid, ())
        slots = [t for t in g.active[e.eid] if t not in gone]
        new_edges.append((e.src, e.dst, slots))
    return TimeVaryingGraph(g.nodes, new_edges, g.horizon)


def _check_nodes(g: TimeVaryingGraph, *names: str) -> None:
    for n in names:
        if n not in g._node_set:
            raise ValueError(f"unknown node {n!r}")


def reachable(g: TimeVaryingGraph, s: str, d: str,
              banned: frozenset[Contact] | None = None) -> bool:
    """True iff at least one s->d journey exists (earliest-arrival scan).

    `banned` contacts are treated as inactive; used internally by the
    cut oracles to avoid rebuilding graphs.
    """
    _check_nodes(g, s, d)
    # arrival[v] = earliest slot at which v is reached via an actual journey
    arrival: dict[str, int] = {}
    ordered = sorted(contacts(g), key=lambda c: c.slot)
    for c in ordered:
        if banned and c in banned:
            continue
        e = g.edge(c.edge)
        t = c.slot
        src_ok = (e.src == s) or (e.src in arrival and arrival[e.src] < t)
        if src_ok and (e.dst not in arrival or t < arrival[e.dst]):
            arrival[e.dst] = t
            if e.dst == d:
                return True
    return d in arrival


def enumerate_journeys(g: TimeVaryingGraph, s: str, d: str,
                       cap: int = 50_000) -> list[Journey]:
    """Every valid s->d journey, depth-first in (slot, edge) order.

    Journeys may revisit nodes and edges at later slots; termination comes
    from the strictly increasing slots. Raises InstanceTooLargeError as soon
    as the count would exceed cap.
    """
    _check_nodes(g, s, d)
    if s == d:
        raise ValueError("source and destination must differ")
    if cap < 1:
        raise ValueError("cap must be positive")

    # contacts that can still reach d, ignoring revisit structure: sound prune
    can_reach = _contacts_reaching(g, d)

    results: list[Journey] = []
    stack: list[Contact] = []

    def successors(node: str, after: int) -> list[Contact]:
        succ = []
        for e in g.out_edges(node):
            slots = g.active[e.eid]
            for k in range(bisect_right(slots, after), len(slots)):
                succ.append(Contact(e.eid, slots[k]))
        succ.sort(key=lambda c: (c.slot, g.edge_index(c.edge)))
        return succ

    def walk(node: str, after: int) -> None:
        for c in successors(node, after):
            if c not in can_reach:
                continue
            e = g.edge(c.edge)
            stack.append(c)
            if e.dst == d:
                if len(results) >= cap:
                    raise InstanceTooLargeError(
                        f"instance too large for exact oracle: more than {cap} journeys")
                results.append(Journey(tuple(stack)))
            walk(e.dst, c.slot)
            stack.pop()

    walk(s, 0)
    return results


def _contacts_reaching(g: TimeVaryingGraph, d: str) -> set[Contact]:
    """Contacts from which d is reachable by some journey suffix."""
    # scan contacts by decreasing slot; latest_departure[v] = latest slot at
    # which leaving v can still make it to d
    latest: dict[str, int] = {d: g.horizon + 1}
    good: set[Contact] = set()
    for c in sorted(contacts(g), key=lambda c: -c.slot):
        e = g.edge(c.edge)
        if e.dst in latest and latest[e.dst] > c.slot:
            good.add(c)
            if e.src not in latest or latest[e.src] < c.slot:
                latest[e.src] = c.slot
    return good


def interferes(j1: Journey, j2: Journey, delta: int) -> bool:
    """True iff the journeys use a common edge within delta slots."""
    if delta < 1:
        raise ValueError("delta must be positive")
    slots_by_edge: dict[str, list[int]] = {}
    for e, t in j1.hops:
        slots_by_edge.setdefault(e, []).append(t)
    for e, t in j2.hops:
        for t1 in slots_by_edge.get(e, ()):
            if abs(t - t1) < delta:
                return True
    return False


def interfering_contacts(g: TimeVaryingGraph, j: Journey,
                         delta: int) -> list[Contact]:
    """Contacts of g within delta slots of some same-edge hop of j.

    Includes j's own hops. These are exactly the contacts another journey
    may not use if it is to stay delta-disjoint from j.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    hop_slots: dict[str, list[int]] = {}
    for e, t in j.hops:
        if g.has_edge(e):
            hop_slots.setdefault(e, []).append(t)
    out: list[Contact] = []
    for e in g.edges:
        slots = hop_slots.get(e.eid)
        if not slots:
            continue
        for t in g.active[e.eid]:
            if any(abs(t - th) < delta for th in slots):
                out.append(Contact(e.eid, t))
    return out


def journey_endpoints(g: TimeVaryingGraph, j: Journey) -> tuple[str, str]:
    """(start node, end node) of a journey under g's edge definitions."""
    first = g.edge(j.hops[0].edge)
    last = g.edge(j.hops[-1].edge)
    return first.src, last.dst
