"""Disruption number: weighted relaxation, rounding, exact oracle, verdicts."""

import itertools
from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given, settings, strategies as st

from tempocut import (Contact, DeltaRemoval, InstanceTooLargeError,
                      apply_removals, contacts, delta_cover,
                      exact_mincut_delta, gen_random_tvg, sandwich_check,
                      minweight_mincut_delta, reachable, set_weights,
                      survivability_bounds, verify_cut, weighted_mincut_1)

contact_sets = st.lists(
    st.builds(Contact,
              edge=st.sampled_from(["e1", "e2"]),
              slot=st.integers(1, 12)),
    min_size=1, max_size=12).map(lambda cs: sorted(set(cs)))


def _brute_cover_size(contact_set, delta):
    """Reference minimum: try every candidate-head combination. Heads may
    sit anywhere, but anchoring at a covered slot is never worse."""
    todo = set(contact_set)
    candidates = sorted({(c.edge, c.slot) for c in contact_set})
    for k in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, k):
            covered = set()
            for edge, head in combo:
                covered.update(
                    c for c in todo
                    if c.edge == edge and head <= c.slot <= head + delta - 1)
            if covered == todo:
                return k
    raise AssertionError("unreachable")


def _brute_mincut(g, s, d, delta):
    """Reference optimum by exhausting head combinations; tiny inputs only."""
    if not reachable(g, s, d):
        return 0
    candidates = [DeltaRemoval(e.eid, h, delta)
                  for e in g.edges for h in g.active[e.eid]]
    for k in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, k):
            if not reachable(apply_removals(g, combo), s, d):
                return k
    return len(candidates)


def test_relay_cut_values(relay):
    one = exact_mincut_delta(relay, "s", "d", 1)
    assert one.count == 2 and one.exact
    assert verify_cut(relay, one, "s", "d")
    two = exact_mincut_delta(relay, "s", "d", 2)
    assert two.count == 1 and two.exact
    assert verify_cut(relay, two, "s", "d")
    assert exact_mincut_delta(relay, "s", "d", 3).count == 1


def test_set_weights_relay(relay):
    w1 = set_weights(relay, 1)
    assert all(v == 1 for v in w1.values())
    w2 = set_weights(relay, 2)
    assert set(w2) == set(contacts(relay))
    assert all(v == Fraction(1, 2) for v in w2.values())


def test_set_weights_rejects_huge_delta(relay):
    with pytest.raises(ValueError, match="too large"):
        set_weights(relay, 31)


def test_weighted_mincut_1_relay(relay):
    value, cut = weighted_mincut_1(relay, set_weights(relay, 1), "s", "d")
    assert value == Fraction(2) and len(cut) == 2
    value2, _ = weighted_mincut_1(relay, set_weights(relay, 2), "s", "d")
    assert value2 == Fraction(1)


def test_delta_cover_pinned():
    cs = [Contact("e1", 1), Contact("e1", 5), Contact("e1", 6), Contact("e2", 3)]
    assert delta_cover(cs, 3) == (
        DeltaRemoval("e1", 1, 3), DeltaRemoval("e1", 5, 3),
        DeltaRemoval("e2", 3, 3))
    assert delta_cover([], 2) == ()
    with pytest.raises(ValueError, match="positive"):
        delta_cover(cs, 0)


@given(contact_sets, st.integers(1, 5))
@settings(max_examples=80, deadline=None)
def test_delta_cover_is_optimal(cs, delta):
    greedy = delta_cover(cs, delta)
    covered = set()
    for r in greedy:
        covered.update(c for c in cs
                       if c.edge == r.edge and r.head <= c.slot <= r.head + delta - 1)
    assert covered == set(cs)
    assert len(greedy) == _brute_cover_size(cs, delta)


def test_sandwich_relay(relay):
    w = set_weights(relay, 2)
    assert sandwich_check([Contact("e1", 1), Contact("e1", 2)], w, 2)


def test_verify_cut_accepts_result_or_iterable(relay):
    assert verify_cut(relay, [DeltaRemoval("e1", 1, 2)], "s", "d")
    assert not verify_cut(relay, [DeltaRemoval("e1", 1, 1)], "s", "d")
    assert verify_cut(relay, exact_mincut_delta(relay, "s", "d", 1), "s", "d")
    assert not verify_cut(relay, [], "s", "d")


def test_minweight_cut_certificates(relay):
    res = minweight_mincut_delta(relay, "s", "d", 2)
    assert res.count == 1
    assert res.exact is False
    assert res.weight_lower_bound == Fraction(1)
    assert verify_cut(relay, res, "s", "d")
    obj = res.to_json_dict()
    assert obj["weight_lower_bound"] == "1"
    assert obj["removals"] == [{"edge": "e1", "head": 1}]


def test_exact_matches_brute_force():
    for seed in range(12):
        g = gen_random_tvg(4, 4, 0.5, 500 + seed)
        for delta in (1, 2):
            opt = _brute_mincut(g, "n1", "n4", delta)
            res = exact_mincut_delta(g, "n1", "n4", delta)
            assert res.count == opt
            assert res.exact is True
            if res.count:
                assert verify_cut(g, res, "n1", "n4")


def test_rounded_cut_stays_within_delta_factor():
    for seed in range(12):
        g = gen_random_tvg(5, 6, 0.5, 700 + seed)
        for delta in (2, 3):
            approx = minweight_mincut_delta(g, "n1", "n5", delta)
            exact = exact_mincut_delta(g, "n1", "n5", delta)
            assert exact.count <= approx.count <= delta * max(exact.count, 1)
            assert ceil(approx.weight_lower_bound) <= exact.count or \
                exact.count == 0
            assert verify_cut(g, approx, "n1", "n5") or approx.count == 0


def test_exact_respects_head_cap():
    g = gen_random_tvg(6, 6, 0.8, 1)
    with pytest.raises(InstanceTooLargeError, match="removal heads"):
        exact_mincut_delta(g, "n1", "n6", 2, head_cap=3)


def test_survivability_verdicts(relay):
    v = survivability_bounds(relay, "s", "d", 1, 1, exact=True)
    assert v.verdict == "survivable" and v.lower == v.upper == 2
    assert survivability_bounds(relay, "s", "d", 2, 1,
                                exact=True).verdict == "not-survivable"
    assert survivability_bounds(relay, "s", "d", 1, 2,
                                exact=True).verdict == "not-survivable"
    assert survivability_bounds(relay, "s", "d", 0, 2,
                                exact=True).verdict == "survivable"
    with pytest.raises(ValueError, match="nonnegative"):
        survivability_bounds(relay, "s", "d", -1, 1)


def test_approximate_verdict_never_contradicts_exact():
    for seed in range(10):
        g = gen_random_tvg(5, 6, 0.5, 900 + seed)
        for delta in (1, 2, 3):
            truth = survivability_bounds(g, "n1", "n5", 1, delta, exact=True)
            quick = survivability_bounds(g, "n1", "n5", 1, delta)
            assert quick.lower <= truth.lower
            assert quick.upper >= truth.upper
            if quick.verdict != "unknown":
                assert quick.verdict == truth.verdict
