"""Model layer: construction, validation, journeys, removals, interference."""

import pytest
from hypothesis import given, settings, strategies as st

from tempocut import (Contact, DeltaRemoval, InstanceTooLargeError, Journey,
                      TimeVaryingGraph, apply_removals, contacts,
                      enumerate_journeys, gen_random_tvg, interferes,
                      is_valid_journey, reachable, removal_footprint,
                      validate_graph)
from tempocut.tvg import interfering_contacts, journey_endpoints

graphs = st.builds(
    gen_random_tvg,
    node_count=st.integers(2, 6),
    horizon=st.integers(1, 6),
    p=st.floats(0.1, 0.9),
    seed=st.integers(0, 10**6),
)


@st.composite
def graphs_with_removals(draw):
    g = draw(graphs)
    eids = [e.eid for e in g.edges]
    removal = st.builds(
        DeltaRemoval,
        edge=st.sampled_from(eids),
        head=st.integers(1, g.horizon),
        delta=st.integers(1, 4),
    )
    return g, draw(st.lists(removal, max_size=6))


def test_edge_ids_follow_declaration_order(relay):
    assert [e.eid for e in relay.edges] == ["e1", "e2"]
    assert relay.edge("e1").src == "s"
    assert relay.edge("e1").dst == "a"
    assert relay.edge("e2").dst == "d"


def test_contact_listing_is_deterministic(relay):
    assert contacts(relay) == [
        Contact("e1", 1), Contact("e1", 2), Contact("e2", 2), Contact("e2", 3),
    ]
    assert relay.contact_count == 4


def test_constructor_normalizes_slots():
    g = TimeVaryingGraph(["a", "b"], [("a", "b", [3, 1, 3, 1])], 5)
    assert g.active["e1"] == (1, 3)


def test_validate_flags_duplicate_edge():
    g = TimeVaryingGraph(["a", "b"], [("a", "b", [1]), ("a", "b", [2])], 3)
    report = validate_graph(g)
    assert not report.ok
    assert any("duplicate edge" in v for v in report.violations)


def test_validate_flags_unknown_endpoint_and_bad_slot():
    g = TimeVaryingGraph(["a"], [("a", "ghost", [0, 1, 9])], 3)
    report = validate_graph(g)
    assert any("not in node set" in v for v in report.violations)
    assert any("outside 1..3" in v for v in report.violations)


def test_loads_rejects_invalid_document():
    with pytest.raises(ValueError, match="malformed graph document"):
        TimeVaryingGraph.loads('{"nodes": ["a"]}')
    with pytest.raises(ValueError, match="invalid graph"):
        TimeVaryingGraph.loads(
            '{"T": 2, "nodes": ["a", "b"],'
            ' "edges": [{"from": "a", "to": "b", "active": [7]}]}')


@given(graphs)
def test_json_roundtrip(g):
    assert TimeVaryingGraph.loads(g.dumps()) == g


def test_enumerate_journeys_relay(relay):
    js = enumerate_journeys(relay, "s", "d")
    assert [j.to_json_obj() for j in js] == [
        [["e1", 1], ["e2", 2]],
        [["e1", 1], ["e2", 3]],
        [["e1", 2], ["e2", 3]],
    ]


def test_enumerate_journeys_allows_revisits():
    # s->a, back to s, then out again later
    g = TimeVaryingGraph(
        ["s", "a", "d"],
        [("s", "a", [1, 3]), ("a", "s", [2]), ("a", "d", [4])],
        4,
    )
    js = enumerate_journeys(g, "s", "d")
    assert len(js) == 3
    assert max(len(j.hops) for j in js) == 4  # the loop journey


def test_enumerate_journeys_cap(relay):
    with pytest.raises(InstanceTooLargeError, match="journeys"):
        enumerate_journeys(relay, "s", "d", cap=2)


def test_enumerate_journeys_needs_distinct_endpoints(relay):
    with pytest.raises(ValueError, match="must differ"):
        enumerate_journeys(relay, "s", "s")


def test_journey_requires_hops():
    with pytest.raises(ValueError, match="at least one hop"):
        Journey(())


def test_is_valid_journey_rejects_bad_chains(relay):
    good = Journey((Contact("e1", 1), Contact("e2", 2)))
    assert is_valid_journey(relay, good, "s", "d")
    # slots must strictly increase
    assert not is_valid_journey(
        relay, Journey((Contact("e1", 2), Contact("e2", 2))), "s", "d")
    # inactive slot
    assert not is_valid_journey(
        relay, Journey((Contact("e1", 3), )), "s", "a")
    # wrong terminal
    assert not is_valid_journey(relay, good, "s", "a")
    # chain must be spatially connected
    assert not is_valid_journey(
        relay, Journey((Contact("e2", 2), )), "s", "d")


@given(graphs)
@settings(max_examples=60)
def test_enumeration_agrees_with_reachability(g):
    s, d = g.nodes[0], g.nodes[-1]
    js = enumerate_journeys(g, s, d, cap=200_000)
    assert bool(js) == reachable(g, s, d)
    for j in js[:50]:
        assert is_valid_journey(g, j, s, d)
        assert journey_endpoints(g, j) == (s, d)


def test_reachable_respects_banned_contacts(relay):
    assert reachable(relay, "s", "d")
    assert not reachable(
        relay, "s", "d",
        banned=frozenset({Contact("e1", 1), Contact("e1", 2)}))
    assert reachable(relay, "s", "d", banned=frozenset({Contact("e1", 1)}))


def test_removal_footprint_window(relay):
    assert removal_footprint(relay, DeltaRemoval("e1", 1, 2)) == [
        Contact("e1", 1), Contact("e1", 2)]
    assert removal_footprint(relay, DeltaRemoval("e1", 2, 2)) == [
        Contact("e1", 2)]
    assert removal_footprint(relay, DeltaRemoval("e2", 9, 3)) == []
    with pytest.raises(ValueError, match="positive"):
        removal_footprint(relay, DeltaRemoval("e1", 1, 0))
    with pytest.raises(ValueError, match="unknown edge"):
        removal_footprint(relay, DeltaRemoval("zz", 1, 1))


@given(graphs_with_removals())
@settings(max_examples=60)
def test_apply_removals_order_insensitive(case):
    g, removals = case
    forward = apply_removals(g, removals)
    backward = apply_removals(g, list(reversed(removals)))
    assert forward == backward
    dead = set()
    for r in removals:
        dead.update(removal_footprint(g, r))
    assert set(contacts(forward)) == set(contacts(g)) - dead


def test_interferes_is_per_edge_and_windowed():
    a = Journey((Contact("e1", 1), Contact("e2", 5)))
    b = Journey((Contact("e1", 2), Contact("e3", 5)))
    assert not interferes(a, b, 1)  # delta=1 means only identical contacts clash
    assert interferes(a, b, 2)
    assert interferes(a, a, 1)
    c = Journey((Contact("e4", 1), Contact("e5", 5)))
    assert not interferes(a, c, 10)
    with pytest.raises(ValueError, match="positive"):
        interferes(a, b, 0)


def test_interfering_contacts_relay(relay):
    j = Journey((Contact("e1", 1), Contact("e2", 2)))
    assert set(interfering_contacts(relay, j, 2)) == {
        Contact("e1", 1), Contact("e1", 2), Contact("e2", 2), Contact("e2", 3)}
    assert set(interfering_contacts(relay, j, 1)) == set(j.hops)
