import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperzeta.covering import complete_voltage, group_closure, voltage_from_dict
from hyperzeta.hypergraph import Hypergraph, bipartite_graph
from hyperzeta.reptheory import builtin_irreps

import golden

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def example_hypergraph():
    return Hypergraph.from_dict(golden.BASE_HYPERGRAPH)


@pytest.fixture(scope="session")
def example_bipartite(example_hypergraph):
    return bipartite_graph(example_hypergraph)


@pytest.fixture(scope="session")
def example_voltage(example_bipartite):
    return voltage_from_dict(example_bipartite, golden.VOLTAGE)


@pytest.fixture(scope="session")
def example_group(example_voltage):
    return group_closure(example_voltage)


@pytest.fixture(scope="session")
def example_catalog(example_group):
    return builtin_irreps("S2", example_group)
