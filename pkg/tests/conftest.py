import random
from pathlib import Path

import pytest

from statcommons.kg import KnowledgeGraph, load_place_registry
from statcommons.platform import Platform
from statcommons.privacy.microdata import Attribute, MicrodataTable, Role

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture()
def registry_csv() -> str:
    return (DATA_DIR / "places.csv").read_text(encoding="utf-8")


@pytest.fixture()
def kg(registry_csv) -> KnowledgeGraph:
    graph = KnowledgeGraph()
    load_place_registry(graph, registry_csv)
    return graph


@pytest.fixture()
def platform(registry_csv) -> Platform:
    p = Platform.in_memory()
    load_place_registry(p.kg, registry_csv)
    return p


def random_microdata(
    rng: random.Random,
    n_rows: int,
    n_qi: int,
    n_sensitive_values: int = 3,
) -> MicrodataTable:
    """Random microdata table: qi columns over small domains plus one
    sensitive column, so equivalence classes of varied sizes appear."""
    attributes = [
        Attribute(f"q{i}", Role.QUASI_IDENTIFIER) for i in range(n_qi)
    ] + [Attribute("condition", Role.SENSITIVE)]
    domains = [rng.choice([2, 3, 4]) for _ in range(n_qi)]
    rows = []
    for _ in range(n_rows):
        cells = [str(rng.randrange(domains[i])) for i in range(n_qi)]
        cells.append(chr(ord("A") + rng.randrange(n_sensitive_values)))
        rows.append(tuple(cells))
    return MicrodataTable(attributes=tuple(attributes), rows=tuple(rows))
