import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicross import dilation as D
from semicross import lattice as L
from semicross import shilov as T
from semicross.dynsys import ClassicalSystem, apply_exponent
from semicross.linalg import Subspace
from semicross.scalars import delta, fn

from conftest import chain_system, product_systems, random_element, random_grid, systems_with_rng


def test_kernel_meet_examples(non_envelope):
    assert T.kernel_meet_ideal(non_envelope, [(1, 0), (0, 1)]).is_zero
    assert T.kernel_meet_ideal(non_envelope, [(-1, 0), (0, -2)]).is_full
    assert T.kernel_meet_ideal(non_envelope, []).is_full
    assert T.kernel_meet_ideal(non_envelope, [(1, 1)]).zero_set == {2}


def test_annihilator_examples(non_envelope):
    assert T.annihilator_ideal(non_envelope, [(1, 0), (0, 1)]).is_full
    assert T.annihilator_ideal(non_envelope, [(1, 0)]).zero_set == {1}
    assert T.annihilator_ideal(non_envelope, []).is_zero


def test_in_tower_ideal_examples(non_envelope):
    assert T.in_tower_ideal(D.zero_element(non_envelope), [(1, 0)])
    z = ClassicalSystem.chain([1], [[0, 0]])
    f = delta(2, 0)
    x = D.embed(z, f) - D.shift(D.embed(z, apply_exponent(z, (1,), f)), (-1,))
    assert T.in_tower_ideal(x, [(1,)])
    a = D.embed(non_envelope, fn([1, 1, 0]))
    for F in ([(1, 0)], [(1, 1)], [(0, 0), (3, 3)], [(-2, -2), (2, 2)]):
        assert not T.in_tower_ideal(a, F)


@given(product_systems(max_points=5), st.randoms(use_true_random=False))
def test_box_formula_matches_generic(sys_, rng):
    lo = (rng.randint(-2, 1), rng.randint(-2, 1))
    hi = (lo[0] + rng.randint(0, 3), lo[1] + rng.randint(0, 3))
    F = L.enum_box(lo, hi, sys_.order)
    for h in L.enum_box((-4, -4), (5, 5), sys_.order):
        assert T._allowed_set(sys_, F, h) == T._allowed_set_box(sys_, lo, hi, h)


@given(systems_with_rng(max_points=4))
def test_tower_monotone(data):
    sys_, rng = data
    x = random_element(rng, sys_)
    F = {(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(2)}
    G = F | {(rng.randint(-2, 3), rng.randint(-2, 3)) for _ in range(2)}
    if T.in_tower_ideal(x, F):
        assert T.in_tower_ideal(x, G)


@given(systems_with_rng(max_points=4))
def test_tower_basis_elements_pass_membership(data):
    sys_, rng = data
    grid = random_grid(rng, 2)
    coords, sub = T.tower_subspace(sys_, grid)
    lo = L.meet_all(coords.points, sys_.order)
    hi = L.join_all(coords.points, sys_.order)
    F = L.enum_box(lo, hi, sys_.order)
    for b in sub.basis:
        assert T.in_tower_ideal(coords.from_vector(b), F)


@given(systems_with_rng(max_points=4))
def test_subspace_is_boundary_and_invariant(data):
    sys_, rng = data
    sub = T.shilov_subspace(sys_, random_grid(rng, 2))
    r = T.boundary_invariance_check(sub)
    assert r.boundary and r.invariance


def test_corrupted_basis_fails(non_envelope):
    sub = T.shilov_subspace(non_envelope, [(0, 0), (1, 0)])
    coords = sub.coords
    bad = Subspace(coords.dimension, [[1 if j == coords.index((0, 0), 0) else 0 for j in range(coords.dimension)]])
    with pytest.raises(T.BoundaryInvarianceError):
        T.boundary_invariance_check(T.ShilovSubspace(non_envelope, coords, bad))


def test_shilov_examples(non_envelope):
    perm = ClassicalSystem.product([1, 2, 0], [2, 0, 1])
    assert T.shilov_subspace(perm, [(0, 0)]).dimension == 0
    z = ClassicalSystem.chain([1], [[0, 0]])
    s = T.shilov_subspace(z, [(0,), (1,)])
    assert s.dimension == 1
    f = delta(2, 0)
    x = D.embed(z, f) - D.shift(D.embed(z, apply_exponent(z, (1,), f)), (-1,))
    assert s.contains(x)
    s = T.shilov_subspace(non_envelope, [(0, 0), (1, 0)])
    assert s.dimension == 2
    for b in s.basis:
        assert not any(D.entry_at(b, (1, 0)))
        assert not D.entry_at(b, (0, 0))[1]
    with pytest.raises(ValueError):
        from semicross.lattice import OrderSpec

        T.shilov_subspace(ClassicalSystem(2, OrderSpec.lex(2), ((0, 1), (0, 1))), [(0, 0)])


def test_integer_case_examples():
    perm = chain_system([1], (1, 2, 0))
    grid = [(0,), (1,), (2,)]
    s = T.integer_case_ideal(perm, grid)
    coords = s.coords
    assert s.subspace == Subspace.nullspace(coords.entry_rows((2,)), coords.dimension)
    assert T.integer_case_ideal(chain_system([1], (0, 0)), [(0,), (1,)]).dimension == 1
    assert T.integer_case_ideal(chain_system([1], (0, 0)), [(0,)]).dimension == 0
    with pytest.raises(ValueError):
        T.integer_case_ideal(ClassicalSystem.product([0, 0]), [(0,)])


def test_tower_first_box_already_exhausts(non_envelope):
    # the grid's own bounding box gives the full union already
    grid = [(0, 0), (1, 0), (0, 1), (1, 1)]
    _, first = T.tower_level(non_envelope, grid, ((0, 0), (1, 1)))
    _, stable = T.tower_subspace(non_envelope, grid)
    assert first == stable


def test_envelope_examples(non_envelope):
    r = T.envelope_criterion(non_envelope)
    assert not r.is_envelope
    assert r.witness == ((1, 0),) and r.annihilator_zero_set == {1}
    point = ClassicalSystem.product([0])
    r = T.envelope_criterion(point)
    assert not r.is_envelope and r.annihilator_zero_set == frozenset()


def test_subgroup_examples():
    swap = ClassicalSystem.chain([1, 2], [[0, 1], [1, 0]])
    assert T.subgroup_compat(swap, "index:2").compatible
    collapse = ClassicalSystem.chain([1, 2], [[2, 2, 2], [2, 2, 2]])
    r = T.subgroup_compat(collapse, "index:2")
    assert not r.compatible and not r.sub_in_full and r.isometric
    assert r.witness.coeffs == {(0,): delta(3, 2), (2,): fn([-1, -1, -1])}
    h, entry, _ = r.violation
    assert h == (1,) and entry == fn([1, 1, 1])


def test_subgroup_coordinate_violation_found():
    from semicross.search import search

    res = search("prop68", 3, 2, max_hits=1)
    assert res.hits
    sys_ = res.hits[0].system
    r = T.subgroup_compat(sys_, "coord:1")
    assert not r.compatible and r.isometric


def test_bad_subgroup_specs(non_envelope):
    for spec in ("index:2", "coord:3", "coord:x", "rows:1"):
        with pytest.raises(ValueError):
            T.subgroup_compat(non_envelope, spec)


def test_subgroup_witness_with_several_offenders():
    collapse = ClassicalSystem.chain([1, 2], [[2, 2, 2], [2, 2, 2]])
    for grid in ([(0,), (1,), (2,)], [(-1,), (0,), (1,), (2,)]):
        r = T.subgroup_compat(collapse, "index:2", grid)
        assert not r.compatible and r.sub_dim == len(grid) - 1 and r.full_dim == 0
        assert r.violation is not None
