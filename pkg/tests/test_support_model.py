import pytest
from hypothesis import given

from semicross import dilation as D
from semicross import lattice as L
from semicross import support_model as M
from semicross.dynsys import ClassicalSystem, ZeroSetIdeal, annihilator, ideal_meet, kernel_ideal
from semicross.scalars import GaussRat, delta, fn, fn_add

from conftest import product_systems, random_element, random_function, systems_with_rng


def closure_oracle(sys_, support):
    """Q_S zero set as the forward closure of the Q0_S zero set under generators off S."""
    seen = set(M.base_ideal(sys_, support).zero_set)
    stack = list(seen)
    maps = [f for i, f in enumerate(sys_.generators) if i not in support]
    while stack:
        x = stack.pop()
        for f in maps:
            if f[x] not in seen:
                seen.add(f[x])
                stack.append(f[x])
    return frozenset(seen)


def ideal_from_exponent(sys_, x, reach=2):
    """Q_x straight from its definition for one exponent vector x."""
    spec = sys_.order
    supp = [i for i, c in enumerate(x) if c]
    k = ZeroSetIdeal.full(sys_.points)
    for i in supp:
        k = ideal_meet(k, kernel_ideal(sys_, spec.unit(i)))
    q0 = annihilator(k)
    hi = tuple(0 if i in supp else reach * w for i, w in enumerate(sys_.window))
    zs = set()
    for y in L.enum_box(spec.zero(), hi, spec):
        m = sys_.power(y)
        zs |= {m[z] for z in q0.zero_set}
    return frozenset(zs)


def test_support_ideal_examples(non_envelope):
    assert M.support_ideal(non_envelope, ()).is_zero
    assert M.base_ideal(non_envelope, {0}).zero_set == {1}
    assert M.support_ideal(non_envelope, {0}).zero_set == {1}
    assert M.support_ideal(non_envelope, {0, 1}).is_full


@given(product_systems(max_points=6))
def test_support_family_invariants(sys_):
    for S, q in M.all_support_ideals(sys_).items():
        assert q.zero_set == closure_oracle(sys_, S)
        assert M.base_ideal(sys_, S).zero_set <= q.zero_set  # Q_S inside Q0_S
    assert M.support_ideal(sys_, ()).is_zero


@given(product_systems(max_points=5))
def test_support_ideal_depends_only_on_support(sys_):
    for x in L.enum_box((0, 0), (3, 3), sys_.order):
        assert ideal_from_exponent(sys_, x) == M.support_ideal(sys_, M.support_of(x)).zero_set


def _raw(sys_, pairs, offset=(0, 0)):
    return M.SupportVector(sys_, tuple(sorted(pairs)), offset)


def test_advance_examples(non_envelope):
    a = fn([1, 2, 3])
    v = M.SupportVector.make(non_envelope, {(0, 0): a}, (0, 0))
    got = M.advance(non_envelope, 0, v)
    want = M.SupportVector.make(
        non_envelope, {(0, 0): fn([1, 3, 3]), (1, 0): a}, (0, 0)
    )
    assert got == want
    w = M.SupportVector.make(non_envelope, {(1, 0): a}, (0, 0))
    assert M.advance(non_envelope, 0, w) == M.SupportVector.make(non_envelope, {(2, 0): a}, (0, 0))


@given(systems_with_rng(max_points=5))
def test_advance_well_defined_and_injective(data):
    sys_, rng = data
    y = (rng.randint(0, 2), rng.randint(0, 2))
    q = M.support_ideal(sys_, M.support_of(y))
    a = random_function(rng, sys_.points)
    # add something from Q_y: a function vanishing on its zero set
    junk = tuple(GaussRat(0) if z in q.zero_set else GaussRat(rng.randint(-3, 3)) for z in range(sys_.points))
    for i in range(2):
        v1 = M.advance(sys_, i, _raw(sys_, [(y, a)]))
        v2 = M.advance(sys_, i, _raw(sys_, [(y, fn_add(a, junk))]))
        assert v1 == v2
        assert M.advance(sys_, i, _raw(sys_, [(y, junk)])).is_zero()
    v = M.SupportVector.make(
        sys_, {(rng.randint(0, 2), rng.randint(0, 2)): random_function(rng, sys_.points) for _ in range(3)}, (0, 0)
    )
    for i in range(2):
        assert M.advance(sys_, i, v).is_zero() == v.is_zero()


def test_to_support_model_examples(non_envelope):
    a = fn([0, 1, 2])
    v = M.to_support_model(non_envelope, D.embed(non_envelope, a))
    assert v.as_dict() == {(0, 0): a}
    assert M.to_support_model(non_envelope, D.zero_element(non_envelope)).is_zero()
    b = delta(3, 0)
    x = D.DilationElement(non_envelope, {(0, 0): fn([-1, 0, 0]), (1, 0): b})
    assert M.to_support_model(non_envelope, x).is_zero()


@given(systems_with_rng(max_points=4))
def test_model_map_is_equivariant_homomorphism(data):
    sys_, rng = data
    spec = sys_.order
    x, y = random_element(rng, sys_), random_element(rng, sys_)
    k = (3, 3)
    px, py = M.to_support_model(sys_, x, k), M.to_support_model(sys_, y, k)
    assert M.to_support_model(sys_, D.multiply(x, y), k) == M.model_multiply(px, py)
    for i in range(2):
        moved = D.shift(x, spec.unit(i))
        assert M.to_support_model(sys_, moved, k) == M.advance(sys_, i, px)
    assert px.max_abs2() <= D.sup_norm_sq(x)


def test_offset_must_dominate(non_envelope):
    x = D.DilationElement(non_envelope, {(1, 0): fn([1, 1, 1])})
    with pytest.raises(ValueError):
        M.to_support_model(non_envelope, x, (0, 0))
    with pytest.raises(ValueError):
        M.support_ideal(ClassicalSystem.chain([1], [[0, 0]]), ())


def test_kernel_examples(non_envelope):
    _, k = M.comparison_kernel(non_envelope, [(0, 0)])
    assert k.dimension == 0
    coords, k = M.comparison_kernel(non_envelope, [(0, 0), (1, 0)])
    assert k.dimension == 2
    x = D.DilationElement(non_envelope, {(0, 0): fn([-1, 0, 0]), (1, 0): delta(3, 0)})
    assert k.contains(coords.to_vector(x))


def test_kernel_bijective_is_decay(non_envelope):
    perm = ClassicalSystem.product([1, 2, 0], [2, 0, 1])
    grid = [(0, 0), (1, 0), (0, 1), (1, 1)]
    coords, k = M.comparison_kernel(perm, grid)
    # bijective: only Q_0 = 0 survives, so x is in the kernel iff its entries
    # at and beyond the top of the grid vanish
    top = L.join_all(grid, perm.order)
    rows = coords.entry_rows(top)
    from semicross.linalg import Subspace

    assert k == Subspace.nullspace(rows, coords.dimension)


def test_compare_kernels_example(non_envelope):
    for grid in ([(0, 0)], [(0, 0), (1, 0)], [(0, 0), (1, 0), (0, 1)], [(-1, 0), (0, 1)]):
        r = M.compare_kernels(non_envelope, grid)
        assert r.agreement, grid


@given(product_systems(max_points=4))
def test_support_window_regression(sys_):
    for S in M.all_support_ideals(sys_):
        assert ideal_from_exponent(sys_, tuple(1 if i in S else 0 for i in range(2)), reach=3) == \
            M.support_ideal(sys_, S).zero_set
