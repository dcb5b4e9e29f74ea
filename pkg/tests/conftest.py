import networkx as nx
import pytest

from src.digraphs.constructions import wreath
from src.digraphs.digraph import Digraph, underlying_graph
from src.groups.named_groups import cyclic_group, dihedral_group, symmetric_group


def graph_from_networkx(graph: nx.Graph) -> Digraph:
    graph = nx.convert_node_labels_to_integers(graph, ordering='sorted')
    arcs = [(u, v) for u, v in graph.edges()] + [(v, u) for u, v in graph.edges()]
    return Digraph(graph.number_of_nodes(), arcs)


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def w3():
    return wreath(3)


@pytest.fixture
def octahedron():
    return underlying_graph(wreath(3))


@pytest.fixture
def k5():
    return graph_from_networkx(nx.complete_graph(5))


@pytest.fixture
def petersen():
    return graph_from_networkx(nx.petersen_graph())


@pytest.fixture
def cube():
    return graph_from_networkx(nx.hypercube_graph(3))


@pytest.fixture
def c6():
    return directed_cycle(6)


@pytest.fixture
def s4():
    return symmetric_group(4)


@pytest.fixture
def c4():
    return cyclic_group(4)


@pytest.fixture
def d5():
    return dihedral_group(5)
