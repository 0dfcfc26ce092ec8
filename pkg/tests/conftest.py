import pytest

from deckrecon.catalog import configure_cache
from deckrecon.graph import Graph


def _g(n, *edges):
    return Graph.from_edges(n, edges)


# named graphs on 4 vertices unless stated
K3K1 = _g(4, (0, 1), (1, 2), (0, 2))
K13 = _g(4, (0, 1), (0, 2), (0, 3))
P4 = _g(4, (0, 1), (1, 2), (2, 3))
P3K1 = _g(4, (0, 1), (1, 2))
TWO_K2 = _g(4, (0, 1), (2, 3))
C4 = _g(4, (0, 1), (1, 2), (2, 3), (0, 3))
C5 = _g(5, (0, 1), (1, 2), (2, 3), (3, 4), (0, 4))


@pytest.fixture(autouse=True, scope="session")
def _no_disk_cache():
    configure_cache(None)
