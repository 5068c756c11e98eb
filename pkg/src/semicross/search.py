"""Counterexample search over small finite systems.

Targets:

``prop68`` (subgroup compatibility)
    the boundary subspace of a subgroup system differs from the restriction of
    the full one. Rank 1 searches two-level chains [1, 2] (subgroup ``index:2``);
    rank 2 searches commuting pairs (subgroup ``coord:1``).
``boundary``
    rank 2 pairs whose generators jointly have trivial kernel intersection while
    some nonzero iota(a) still decays to zero, so the decaying elements are not
    a boundary ideal.
``drift``
    rank 2 pairs where the indicator of im(phi_1), which lies in
    (ker alpha_1)^perp, is pushed out of that annihilator by every large power
    of alpha_2.

Small spaces are enumerated exhaustively; larger ones are sampled with a
seeded generator.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .dynsys import ClassicalSystem, compose, image_set
from .lattice import OrderSpec
from .scalars import ONE, ZERO

MAX_POINTS = 8
MAX_RANK = 2
EXHAUSTIVE_LIMIT = 20000
DEFAULT_SAMPLES = 400


@dataclass(frozen=True)
class Hit:
    system: ClassicalSystem
    witness: dict


@dataclass
class SearchResult:
    target: str
    points: int
    rank: int
    exhaustive: bool
    space_size: int
    examined: int = 0
    hits: list = field(default_factory=list)


def all_maps(n: int, bijective: bool = False) -> Iterator[tuple]:
    if bijective:
        return itertools.permutations(range(n))
    return itertools.product(range(n), repeat=n)


def count_maps(n: int, bijective: bool) -> int:
    import math

    return math.factorial(n) if bijective else n**n


def random_map(rng: random.Random, n: int, bijective: bool = False) -> tuple:
    if bijective:
        p = list(range(n))
        rng.shuffle(p)
        return tuple(p)
    return tuple(rng.randrange(n) for _ in range(n))


def random_commuting_partner(rng: random.Random, f: tuple, bijective: bool = False) -> tuple:
    """A random map commuting with f, by randomized backtracking.

    f itself always commutes with f, so the search cannot fail.
    """
    n = len(f)
    g = [None] * n

    def consistent(x: int) -> bool:
        # every constraint g(f(y)) = f(g(y)) whose terms are all assigned
        for y in range(n):
            if g[y] is not None and g[f[y]] is not None and g[f[y]] != f[g[y]]:
                return False
        if bijective and len({v for v in g if v is not None}) != sum(v is not None for v in g):
            return False
        return True

    def fill(x: int) -> bool:
        if x == n:
            return True
        values = list(range(n))
        rng.shuffle(values)
        for v in values:
            g[x] = v
            if consistent(x) and fill(x + 1):
                return True
        g[x] = None
        return False

    fill(0)
    return tuple(g)


def random_product_system(rng: random.Random, n: int, rank: int = 2, bijective: bool = False):
    if rank > 2:
        raise ValueError("random systems are generated for rank <= 2")
    gens = [random_map(rng, n, bijective)]
    if rank == 2:
        gens.append(random_commuting_partner(rng, gens[0], bijective))
    return ClassicalSystem.build(n, OrderSpec.product(rank), gens)


def _commuting_pairs(n: int, bijective: bool) -> Iterator[tuple]:
    maps = list(all_maps(n, bijective))
    for f in maps:
        for g in maps:
            if compose(f, g) == compose(g, f):
                yield f, g


def _candidates(target: str, n: int, rank: int, bijective: bool, seed: int, samples: int):
    """(exhaustive, size, iterator of systems)."""
    rng = random.Random(seed)
    if rank == 1:
        if target != "prop68":
            raise ValueError(f"target {target} needs rank 2")
        size = count_maps(n, bijective)
        order = OrderSpec.chain([1, 2])

        def build(psi):
            return ClassicalSystem.build(n, order, [compose(psi, psi), psi])

        if size <= EXHAUSTIVE_LIMIT:
            return True, size, (build(p) for p in all_maps(n, bijective))
        return False, size, (build(random_map(rng, n, bijective)) for _ in range(samples))
    size = count_maps(n, bijective) ** 2
    order = OrderSpec.product(2)
    if size <= EXHAUSTIVE_LIMIT:
        gen = (ClassicalSystem.build(n, order, [f, g]) for f, g in _commuting_pairs(n, bijective))
        return True, size, gen
    return False, size, (random_product_system(rng, n, 2, bijective) for _ in range(samples))


def check_subgroup_compat(sys_: ClassicalSystem) -> Optional[dict]:
    from .shilov import subgroup_compat

    sub = "index:2" if sys_.order.kind == "chain" else "coord:1"
    r = subgroup_compat(sys_, sub)
    if r.compatible:
        return None
    w = {"subgroup": sub, "sub_dim": r.sub_dim, "full_dim": r.full_dim}
    if r.witness is not None:
        w["element"] = r.witness
    if r.violation is not None:
        w["violation"] = r.violation
    return w


def eventual_joint_image(sys_: ClassicalSystem) -> frozenset:
    return image_set(sys_, sys_.window)


def check_boundary(sys_: ClassicalSystem) -> Optional[dict]:
    n = sys_.points
    covered = set()
    for i in range(sys_.rank):
        covered |= image_set(sys_, sys_.order.unit(i))
    if len(covered) != n:
        return None
    tail = eventual_joint_image(sys_)
    if len(tail) == n:
        return None
    a = tuple(ZERO if z in tail else ONE for z in range(n))
    return {"function": a, "eventual_image": tail}


def check_drift(sys_: ClassicalSystem) -> Optional[dict]:
    n = sys_.points
    im1 = image_set(sys_, (1, 0))
    if len(im1) == n:
        return None
    (c, p) = sys_.periodicity_data[1]
    for j in range(c, c + p):
        m = sys_.power((0, j))
        if not any(m[z] in im1 for z in range(n) if z not in im1):
            return None
    a = tuple(ONE if z in im1 else ZERO for z in range(n))
    return {"function": a, "powers": (c, c + p)}


CHECKS = {"prop68": check_subgroup_compat, "boundary": check_boundary, "drift": check_drift}


def search(
    target: str,
    points: int,
    rank: int,
    seed: int = 0,
    bijective: bool = False,
    max_hits: int = 3,
    samples: int = DEFAULT_SAMPLES,
) -> SearchResult:
    if target not in CHECKS:
        raise ValueError(f"unknown target {target!r}; choose from {sorted(CHECKS)}")
    if not 1 <= points <= MAX_POINTS:
        raise ValueError(f"--points must be in 1..{MAX_POINTS}")
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"--rank must be in 1..{MAX_RANK}")
    exhaustive, size, cands = _candidates(target, points, rank, bijective, seed, samples)
    result = SearchResult(target, points, rank, exhaustive, size)
    check = CHECKS[target]
    for sys_ in cands:
        result.examined += 1
        w = check(sys_)
        if w is not None:
            result.hits.append(Hit(sys_, w))
            if len(result.hits) >= max_hits:
                break
    return result


def is_relabeling(a: ClassicalSystem, b: ClassicalSystem, allow_swap: bool = True) -> bool:
    """Whether b is a with points relabeled (and, optionally, generators swapped)."""
    if a.points != b.points or a.order != b.order:
        return False
    orders = [b.generators]
    if allow_swap and len(b.generators) == 2:
        orders.append(b.generators[::-1])
    for perm in itertools.permutations(range(a.points)):
        for gens in orders:
            if all(
                tuple(perm[f[perm.index(z)]] for z in range(a.points)) == g
                for f, g in zip(a.generators, gens)
            ):
                return True
    return False
