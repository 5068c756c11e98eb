import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicross import dynsys as S
from semicross.dynsys import ClassicalSystem, ZeroSetIdeal
from semicross.lattice import OrderSpec
from semicross.scalars import fn

from conftest import chain_system, product_systems, random_function


def test_non_envelope_example_validates(non_envelope):
    assert S.validate_system(non_envelope).ok


def test_noncommuting_rejected():
    sys_ = ClassicalSystem(2, OrderSpec.product(2), ((1, 0), (0, 0)))
    r = S.validate_system(sys_)
    assert not r.ok and r.witness["point"] == 0
    with pytest.raises(S.InvalidSystemError):
        ClassicalSystem.product([1, 0], [0, 0])


def test_structural_errors():
    assert not S.validate_system(ClassicalSystem(2, OrderSpec.product(1), ((0, 2),))).ok
    assert not S.validate_system(ClassicalSystem(0, OrderSpec.product(1), ((),))).ok
    assert not S.validate_system(ClassicalSystem(2, OrderSpec.lex(2), ((0, 1), (0, 1)))).ok
    # level-1 map must be the square of the level-2 map
    assert not S.validate_system(ClassicalSystem(2, OrderSpec.chain([1, 2]), ((1, 0), (1, 0)))).ok
    assert S.validate_system(ClassicalSystem(2, OrderSpec.chain([1, 2]), ((0, 1), (1, 0)))).ok


def test_identity_generators_valid():
    assert S.validate_system(ClassicalSystem(3, OrderSpec.product(2), ((0, 1, 2), (0, 1, 2)))).ok


def test_apply_exponent_examples(non_envelope):
    f = fn([1, 1, 0])
    assert S.apply_exponent(non_envelope, (0, 0), f) == f
    assert S.apply_exponent(non_envelope, (1, 1), f) == fn([0, 0, 0])
    g = fn([5, 7, 11])
    assert S.apply_exponent(non_envelope, (10**9, 0), g) == S.apply_exponent(non_envelope, (1, 0), g)
    with pytest.raises(ValueError):
        S.apply_exponent(non_envelope, (-1, 0), f)


def test_kernel_and_image(non_envelope):
    assert S.kernel_ideal(non_envelope, (1, 0)).zero_set == {0, 2}
    assert S.kernel_ideal(non_envelope, (1, 1)).zero_set == {2}
    swap = ClassicalSystem.product([1, 0])
    assert S.kernel_ideal(swap, (1,)).is_zero


def test_annihilator_and_preimage(non_envelope):
    assert S.annihilator(ZeroSetIdeal(3, {0, 2})).zero_set == {1}
    assert S.annihilator(ZeroSetIdeal.zero(3)).is_full
    assert S.preimage_ideal(non_envelope, (0, 1), ZeroSetIdeal(3, {1})).zero_set == {1}
    assert S.preimage_ideal(non_envelope, (0, 0), ZeroSetIdeal(3, {1})).zero_set == {1}
    const = ClassicalSystem.product([2, 2, 2])
    assert S.preimage_ideal(const, (1,), ZeroSetIdeal(3, {2})).zero_set == {2}


def test_ideal_algebra(non_envelope):
    meet = S.ideal_meet(ZeroSetIdeal(3, {0, 2}), ZeroSetIdeal(3, {1, 2}))
    assert meet.is_zero
    assert S.joint_kernel(non_envelope).is_zero
    i = ZeroSetIdeal(3, {1})
    assert S.ideal_meet(i, ZeroSetIdeal.full(3)) == i
    assert S.ideal_contains(ZeroSetIdeal.full(3), i)
    assert not S.ideal_contains(i, ZeroSetIdeal.full(3))


@given(st.integers(1, 6), st.sets(st.integers(0, 5)))
def test_annihilator_involution(n, zs):
    i = ZeroSetIdeal(n, frozenset(z for z in zs if z < n))
    assert S.annihilator(S.annihilator(i)) == i
    assert S.ideal_meet(i, S.annihilator(i)).is_zero


@given(product_systems(max_points=5), st.randoms(use_true_random=False))
def test_action_law_and_image_nesting(sys_, rng):
    v = (rng.randint(0, 9), rng.randint(0, 9))
    w = (rng.randint(0, 9), rng.randint(0, 9))
    f = random_function(rng, sys_.points)
    vw = (v[0] + w[0], v[1] + w[1])
    assert S.apply_exponent(sys_, vw, f) == S.apply_exponent(sys_, v, S.apply_exponent(sys_, w, f))
    assert S.image_set(sys_, vw) <= S.image_set(sys_, w)


@given(product_systems(max_points=5))
def test_reduced_powers_match_naive_composition(sys_):
    f1, f2 = sys_.generators
    bound = [2 * w for w in sys_.window]
    for a in range(bound[0] + 1):
        for b in range(bound[1] + 1):
            naive = tuple(range(sys_.points))
            for _ in range(a):
                naive = S.compose(f1, naive)
            for _ in range(b):
                naive = S.compose(f2, naive)
            assert sys_.power((a, b)) == naive


def test_periodicity():
    assert S.periodicity((0, 2, 2)) == (1, 1)
    assert S.periodicity((1, 0)) == (0, 2)
    assert S.periodicity((1, 2, 0)) == (0, 3)
    assert S.periodicity((1, 2, 3, 3)) == (3, 1)


def test_minimality_examples(non_envelope):
    assert S.is_minimal(ClassicalSystem.product([0])).minimal
    r = S.is_minimal(non_envelope)
    assert not r.minimal and r.witness == {2}
    assert S.is_minimal(ClassicalSystem.product([1, 2, 0])).minimal


def brute_force_minimal(sys_) -> bool:
    n = sys_.points
    for k in range(1, n):
        for sub in itertools.combinations(range(n), k):
            if S.is_invariant(sys_, sub):
                return False
    return True


@given(product_systems(max_points=6))
def test_minimality_matches_subset_enumeration(sys_):
    r = S.is_minimal(sys_)
    assert r.minimal == brute_force_minimal(sys_)
    if not r.minimal:
        assert S.is_invariant(sys_, r.witness) and len(r.witness) < sys_.points


def test_distinct_maps_examples(non_envelope):
    ident = ClassicalSystem.product([0, 1])
    assert S.distinct_maps_check(ident).witness == ((0,), (1,))
    swap = ClassicalSystem.product([1, 0])
    assert S.distinct_maps_check(swap).witness == ((0,), (2,))
    assert S.distinct_maps_check(non_envelope).witness == ((1, 0), (2, 0))


def test_simplicity_examples(non_envelope):
    for sys_ in (ClassicalSystem.product([0]), non_envelope, ClassicalSystem.product([1, 2, 0])):
        r = S.simplicity_verdict(sys_)
        assert r.verdict == "not simple"
        v, w = r.maps.witness
        assert v != w and sys_.power(v) == sys_.power(w)
    assert S.simplicity_verdict(ClassicalSystem.product([1, 2, 0])).minimality.minimal


def test_chain_power_uses_finest_map():
    sys_ = chain_system([1, 2, 6], (1, 2, 0))
    assert sys_.power((6,)) == sys_.generators[0]
    assert sys_.power((3,)) == sys_.generators[1]
