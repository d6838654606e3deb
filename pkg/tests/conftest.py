import pytest

from infinitewalk.synthetic import (
    complete_graph,
    erdos_renyi_walkable,
    triangle_with_pendant,
)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k3_pendant():
    return triangle_with_pendant()


def random_walkable_suite(count=10, weighted_every=3, seed=7):
    """Seeded walkable graphs of varied size, some weighted."""
    graphs = []
    for i in range(count):
        n = 5 + (i * 5) % 46
        p = 0.25 if n < 25 else 0.15
        graphs.append(
            erdos_renyi_walkable(n, p, seed=seed + i, weighted=(i % weighted_every == 0))
        )
    return graphs
