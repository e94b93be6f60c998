import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphbraid import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    h_tree,
    p_graph,
    path_graph,
    subdivided_y,
)


@pytest.fixture
def P():
    return p_graph()


@pytest.fixture
def Y():
    return subdivided_y()


@pytest.fixture
def H():
    return h_tree()


@pytest.fixture
def K5():
    return complete_graph(5)


@pytest.fixture
def K33():
    return complete_bipartite(3, 3)


@pytest.fixture
def C4():
    return cycle_graph(4)


@pytest.fixture
def P3():
    return path_graph(3)
