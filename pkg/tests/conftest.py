import numpy as np
import pytest

from seedclust import Graph, from_edges
from seedclust.datasets import karate_club, random_connected_graph, two_clique_bridge


@pytest.fixture(scope="session")
def karate() -> Graph:
    return karate_club()


@pytest.fixture(scope="session")
def two_k5() -> Graph:
    return two_clique_bridge(5)


@pytest.fixture(scope="session")
def two_k8() -> Graph:
    return two_clique_bridge(8)


@pytest.fixture
def path4() -> Graph:
    return from_edges([("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture
def two_triangles() -> Graph:
    return from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def star4() -> Graph:
    """Center 0 with three leaves."""
    return from_edges([(0, 1), (0, 2), (0, 3)])


def random_graphs(count: int, n_max: int = 64):
    """Deterministic suite of random connected graphs."""
    rng = np.random.default_rng(20240817)
    graphs = []
    for i in range(count):
        n = int(rng.integers(8, n_max + 1))
        extra = int(rng.integers(n // 2, 2 * n))
        graphs.append(random_connected_graph(n, extra, rng_seed=1000 + i))
    return graphs


def dense_transition_matrix(g: Graph) -> np.ndarray:
    """Dense lazy-walk operator: new = M @ old, M = (I + A D^-1) / 2."""
    n = g.vertex_count
    a = np.zeros((n, n))
    for u in range(n):
        a[g.neighbors(u), u] = 1.0
    d = g.degrees.astype(float)
    return 0.5 * np.eye(n) + 0.5 * (a / d[None, :])


def brute_conductance(g: Graph, members) -> float:
    """Edge-scan conductance, independent of the sweep kernels."""
    s = set(int(u) for u in members)
    cut = 0
    for u in s:
        for v in g.neighbors(u):
            if int(v) not in s:
                cut += 1
    vol = sum(g.degree(u) for u in s)
    return cut / min(vol, g.total_degree - vol)
