import pytest

from tempocut import TimeVaryingGraph


@pytest.fixture
def relay():
    """Two-hop relay with a shared first edge; small enough to check by hand.

    e1: s->a active at slots 1,2
    e2: a->d active at slots 2,3
    """
    return TimeVaryingGraph(
        ("s", "a", "d"),
        [("s", "a", (1, 2)), ("a", "d", (2, 3))],
        3,
    )
