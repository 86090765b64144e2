import random
from fractions import Fraction
from pathlib import Path

import pytest
from dotenv import load_dotenv

from snc_lab.fixtures import load_fixture
from snc_lab.pair_properties import DigraphPair, WeightVector
from snc_lab.relation import Relation
from snc_lab.search import HypothesisMode, sample_pair

# Load environment variables from .env file if it exists
load_dotenv()

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def repo_root() -> Path:
    """Directory from which ``python -m snc_lab`` resolves the package without installing it."""
    return REPO_ROOT


@pytest.fixture(scope="session")
def fixture_one():
    return load_fixture(1)


@pytest.fixture(scope="session")
def fixture_two():
    return load_fixture(2)


@pytest.fixture
def rng():
    """A fresh seeded generator per test so failures replay exactly."""
    return random.Random(20240917)


def _random_relation(rng: random.Random, n: int) -> Relation:
    return Relation(n, tuple(rng.getrandbits(n) if n else 0 for _ in range(n)))


def _random_oriented(rng: random.Random, n: int, density: float = 0.6) -> Relation:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            r = rng.random()
            if r < density / 2:
                edges.append((u, v))
            elif r < density:
                edges.append((v, u))
    return Relation.from_edges(n, edges)


def _random_tournament(rng: random.Random, n: int) -> Relation:
    return Relation.from_edges(
        n,
        ((u, v) if rng.random() < 0.5 else (v, u) for u in range(n) for v in range(u + 1, n)),
    )


def _random_weights(rng: random.Random, n: int, allow_zero: bool = True) -> WeightVector:
    low = 0 if allow_zero else 1
    return WeightVector(tuple(Fraction(rng.randint(low, 6), rng.randint(1, 4)) for _ in range(n)))


@pytest.fixture
def random_relation():
    """Returns a function ``(rng, n) -> Relation`` with uniformly random rows."""
    return _random_relation


@pytest.fixture
def random_oriented():
    """Returns a function ``(rng, n) -> Relation`` building a random oriented graph."""
    return _random_oriented


@pytest.fixture
def random_tournament():
    return _random_tournament


@pytest.fixture
def random_weights():
    """Returns a function ``(rng, n, allow_zero=True) -> WeightVector`` of small rationals."""
    return _random_weights


@pytest.fixture
def random_identity_pair():
    def make(rng: random.Random, n: int) -> DigraphPair:
        return sample_pair(rng, n, HypothesisMode.IDENTITY)

    return make


@pytest.fixture
def random_tournament_pair():
    def make(rng: random.Random, n: int) -> DigraphPair:
        return sample_pair(rng, n, HypothesisMode.TOURNAMENT)

    return make


@pytest.fixture
def three_cycle() -> Relation:
    """0 -> 1 -> 2 -> 0."""
    return Relation.from_edges(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def transitive_triangle() -> Relation:
    """0 -> 1 -> 2 and 0 -> 2; vertex 2 is the sink."""
    return Relation.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def with_loops(graph: Relation) -> Relation:
    return graph | Relation.identity(graph.n)


@pytest.fixture
def looped():
    """Returns a function adding every loop to a relation."""
    return with_loops
