import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from semicross import dilation as D
from semicross.dynsys import ClassicalSystem
from semicross.lattice import OrderSpec
from semicross.scalars import GaussRat
from semicross.search import random_commuting_partner, random_map

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def non_envelope_example() -> ClassicalSystem:
    # alpha_1(a,b,c) = (a,c,c), alpha_2(a,b,c) = (c,b,c), as point maps
    return ClassicalSystem.product([0, 2, 2], [2, 1, 2])


@pytest.fixture
def non_envelope():
    return non_envelope_example()


def chain_system(levels, finest):
    """Chain system driven by ``finest``; coarser maps are its powers."""
    from semicross.dynsys import map_power

    gens = [map_power(tuple(finest), levels[-1] // lv) for lv in levels]
    return ClassicalSystem.chain(levels, gens)


def random_system(rng: random.Random, n: int, rank: int = 2, bijective: bool = False):
    f = random_map(rng, n, bijective)
    gens = [f]
    if rank == 2:
        gens.append(random_commuting_partner(rng, f, bijective))
    return ClassicalSystem.build(n, OrderSpec.product(rank), gens)


def random_grid(rng: random.Random, rank: int, max_points: int = 4, radius: int = 2):
    from semicross import lattice as L

    spec = OrderSpec.product(rank)
    while True:
        k = rng.randint(1, 3)
        pts = [tuple(rng.randint(-radius, radius) for _ in range(rank)) for _ in range(k)]
        grid = L.grid_closure(pts, spec)
        if len(grid) <= max_points:
            return grid


def random_scalar(rng: random.Random, complex_: bool = True) -> GaussRat:
    re = rng.randint(-3, 3)
    im = rng.randint(-2, 2) if complex_ and rng.random() < 0.3 else 0
    return GaussRat(re, im)


def random_function(rng: random.Random, n: int):
    return tuple(random_scalar(rng) for _ in range(n))


def random_element(rng: random.Random, sys_: ClassicalSystem, terms: int = 2, radius: int = 1):
    rank = sys_.order.rank
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        g = tuple(rng.randint(-radius, radius) for _ in range(rank))
        coeffs[g] = random_function(rng, sys_.points)
    return D.DilationElement(sys_, coeffs)


@st.composite
def product_systems(draw, max_points=5, rank=2, bijective=False):
    n = draw(st.integers(1, max_points))
    rng = draw(st.randoms(use_true_random=False))
    return random_system(rng, n, rank, bijective)


@st.composite
def systems_with_rng(draw, max_points=4, rank=2):
    sys_ = draw(product_systems(max_points=max_points, rank=rank))
    rng = draw(st.randoms(use_true_random=False))
    return sys_, rng
