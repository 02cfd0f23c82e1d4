"""Journey packing: greedy approximation and the exact oracle."""

import pytest
from hypothesis import given, settings, strategies as st

from tempocut import (Contact, InstanceTooLargeError, build_line_graph,
                      enumerate_journeys, exact_maxflow_delta,
                      gen_random_tvg, greedy_bound_certificate,
                      greedy_maxflow_delta, interferes, is_valid_journey,
                      node_disjoint_maxflow)

graphs = st.builds(
    gen_random_tvg,
    node_count=st.integers(2, 6),
    horizon=st.integers(1, 6),
    p=st.floats(0.1, 0.8),
    seed=st.integers(0, 10**6),
)

deltas = st.integers(1, 4)


def _brute_pack(g, s, d, delta):
    """Reference optimum: exhaustive packing over ALL journeys, revisits
    included. Only usable on tiny instances."""
    js = enumerate_journeys(g, s, d, cap=100_000)
    m = len(js)
    if m > 26:
        return None
    conflict = [0] * m
    for i in range(m):
        for k in range(i + 1, m):
            if interferes(js[i], js[k], delta):
                conflict[i] |= 1 << k
                conflict[k] |= 1 << i
    best = 0

    def walk(start, banned, size):
        nonlocal best
        if size > best:
            best = size
        for k in range(start, m):
            if not (banned >> k) & 1:
                walk(k + 1, banned | conflict[k], size + 1)

    walk(0, 0, 0)
    return best


def test_relay_flow_values(relay):
    assert exact_maxflow_delta(relay, "s", "d", 1).count == 2
    assert exact_maxflow_delta(relay, "s", "d", 2).count == 1
    assert exact_maxflow_delta(relay, "s", "d", 3).count == 1
    assert greedy_maxflow_delta(relay, "s", "d", 1).count == 2
    assert greedy_maxflow_delta(relay, "s", "d", 2).count == 1


def test_greedy_takes_min_hop_first(relay):
    first = greedy_maxflow_delta(relay, "s", "d", 1).journeys[0]
    assert first.hops == (Contact("e1", 1), Contact("e2", 2))


def test_flow_result_shape(relay):
    res = exact_maxflow_delta(relay, "s", "d", 2)
    obj = res.to_json_dict()
    assert obj["delta"] == 2 and obj["count"] == 1 and obj["exact"] is True
    assert obj["journeys"] == [[["e1", 1], ["e2", 2]]] or obj["count"] == len(
        obj["journeys"])


def test_delta_must_be_positive(relay):
    with pytest.raises(ValueError, match="positive"):
        greedy_maxflow_delta(relay, "s", "d", 0)
    with pytest.raises(ValueError, match="positive"):
        exact_maxflow_delta(relay, "s", "d", 0)


@given(graphs, deltas)
@settings(max_examples=60, deadline=None)
def test_greedy_output_is_feasible(g, delta):
    s, d = g.nodes[0], g.nodes[-1]
    res = greedy_maxflow_delta(g, s, d, delta)
    assert res.exact is False
    for j in res.journeys:
        assert is_valid_journey(g, j, s, d)
    for i in range(res.count):
        for k in range(i + 1, res.count):
            assert not interferes(res.journeys[i], res.journeys[k], delta)


def test_exact_matches_brute_force():
    checked = 0
    for seed in range(25):
        g = gen_random_tvg(4, 4, 0.5, seed)
        for delta in (1, 2, 3):
            opt = _brute_pack(g, "n1", "n4", delta)
            if opt is None:
                continue
            res = exact_maxflow_delta(g, "n1", "n4", delta)
            assert res.count == opt
            assert res.exact is True
            for i in range(res.count):
                assert is_valid_journey(g, res.journeys[i], "n1", "n4")
                for k in range(i + 1, res.count):
                    assert not interferes(res.journeys[i], res.journeys[k],
                                          delta)
            checked += 1
    assert checked >= 50


def test_exact_anti_monotone_in_delta():
    for seed in range(15):
        g = gen_random_tvg(5, 5, 0.5, 100 + seed)
        counts = [exact_maxflow_delta(g, "n1", "n5", delta).count
                  for delta in (1, 2, 3, 5)]
        assert counts == sorted(counts, reverse=True)


def test_exact_dominates_greedy_and_unit_flow_dominates_exact():
    for seed in range(15):
        g = gen_random_tvg(5, 5, 0.6, 200 + seed)
        bound = int(node_disjoint_maxflow(build_line_graph(g, "n1", "n5")).value)
        for delta in (2, 3):
            greedy = greedy_maxflow_delta(g, "n1", "n5", delta).count
            exact = exact_maxflow_delta(g, "n1", "n5", delta).count
            assert greedy <= exact <= bound


def test_exact_respects_journey_cap(relay):
    with pytest.raises(InstanceTooLargeError, match="journeys"):
        exact_maxflow_delta(relay, "s", "d", 2, cap=1)


def test_certificate_arithmetic():
    # bound at delta=2, T=10, 4 edges: 3*sqrt(4*6)+2 = 16.69...
    assert greedy_bound_certificate(1, 3, 4, 10, 2)
    assert greedy_bound_certificate(0, 5, 1, 1, 1)
    assert not greedy_bound_certificate(4, 3, 4, 10, 2)  # alg above opt
    assert not greedy_bound_certificate(1, 900, 4, 10, 2)
    with pytest.raises(ValueError, match="positive"):
        greedy_bound_certificate(1, 1, 4, 10, 0)
