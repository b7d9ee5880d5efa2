import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_def, random_pert
from pertdef.morphisms import (
    NotInvariantError,
    Permutation,
    coefficient_tensor,
    embed_sym,
    grade_decompose,
    is_invariant,
    retract,
    slot_permute,
    symmetrize,
)
from pertdef.rings import DefRingSpec, PertRingSpec

seeds = st.integers(0, 10**6)


def small_spec(rng, cls):
    return cls(rng.randint(1, 3), rng.randint(1, 4))


def test_embed_examples():
    P = PertRingSpec(1, 2)
    D = DefRingSpec(1, 2)
    lam = P.gen(0)
    e1, e2 = D.gen(0, 0), D.gen(1, 0)
    assert embed_sym(lam) == e1 + e2
    assert embed_sym(lam * lam) == 2 * e1 * e2
    assert embed_sym(lam ** 3) == 0
    assert (e1 + e2) ** 3 == 0


def test_permutation_examples():
    D = DefRingSpec(2, 2)
    swap = Permutation.transposition(2, 0, 1)
    assert slot_permute(swap, D.gen(0, 0) * D.gen(1, 1)) == D.gen(0, 1) * D.gen(1, 0)
    x = random_def(random.Random(3), D)
    assert slot_permute(Permutation.identity(2), x) == x
    D13 = DefRingSpec(1, 3)
    assert slot_permute(Permutation.cycle(3, 0, 1, 2), D13.gen(0, 0)) == D13.gen(1, 0)
    with pytest.raises(ValueError):
        slot_permute(Permutation.identity(3), x)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_symmetrize_examples():
    D12 = DefRingSpec(1, 2)
    assert symmetrize(D12.gen(0, 0)) == (D12.gen(0, 0) + D12.gen(1, 0)) / 2
    D22 = DefRingSpec(2, 2)
    x = D22.gen(0, 0) * D22.gen(1, 1)
    assert symmetrize(x) == (x + D22.gen(0, 1) * D22.gen(1, 0)) / 2
    y = symmetrize(x)
    assert symmetrize(y) == y


def test_is_invariant_examples():
    D12 = DefRingSpec(1, 2)
    assert not is_invariant(D12.gen(0, 0))
    assert is_invariant(D12.const(7))
    rng = random.Random(5)
    for _ in range(5):
        assert is_invariant(embed_sym(random_pert(rng, PertRingSpec(2, 3))))


def test_retract_examples():
    D = DefRingSpec(1, 2)
    P = PertRingSpec(1, 2)
    e1, e2 = D.gen(0, 0), D.gen(1, 0)
    assert retract(e1 + e2) == P.gen(0)
    assert retract(2 * e1 * e2) == P.gen(0) ** 2
    with pytest.raises(NotInvariantError, match="slot"):
        retract(e1)


def test_grade_decompose_examples():
    D = DefRingSpec(1, 2)
    e1, e2 = D.gen(0, 0), D.gen(1, 0)
    parts = grade_decompose(3 + e1 + 5 * e1 * e2)
    assert [p.degree for p in parts] == [0, 1, 2]
    assert parts[2].element == 5 * e1 * e2
    assert grade_decompose(D.zero()) == []
    lam = PertRingSpec(1, 2).gen(0)
    parts = grade_decompose(embed_sym(lam + lam * lam))
    assert [(p.degree, p.element) for p in parts] == [(1, e1 + e2), (2, 2 * e1 * e2)]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_embed_is_morphism(seed):
    rng = random.Random(seed)
    P = small_spec(rng, PertRingSpec)
    a, b = random_pert(rng, P, 0.5), random_pert(rng, P, 0.5)
    assert embed_sym(a * b) == embed_sym(a) * embed_sym(b)
    assert embed_sym(a + b) == embed_sym(a) + embed_sym(b)
    assert retract(embed_sym(a)) == a


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_image_is_invariants(seed):
    rng = random.Random(seed)
    D = small_spec(rng, DefRingSpec)
    s = symmetrize(random_def(rng, D, 0.3))
    assert is_invariant(s)
    assert embed_sym(retract(s)) == s


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_group_action_laws(seed):
    rng = random.Random(seed)
    D = small_spec(rng, DefRingSpec)
    k = D.k
    sigma = Permutation(tuple(rng.sample(range(k), k)))
    tau = Permutation(tuple(rng.sample(range(k), k)))
    x, y = random_def(rng, D, 0.4), random_def(rng, D, 0.4)
    assert slot_permute(sigma.compose(tau), x) == slot_permute(sigma, slot_permute(tau, x))
    assert slot_permute(sigma, x * y) == slot_permute(sigma, x) * slot_permute(sigma, y)
    assert slot_permute(sigma.inverse(), slot_permute(sigma, x)) == x


def test_adjacent_check_agrees_with_full_group():
    rng = random.Random(11)
    D = DefRingSpec(2, 3)
    perms = [Permutation(p) for p in itertools.permutations(range(3))]
    for _ in range(30):
        x = random_def(rng, D, 0.2)
        if rng.random() < 0.5:
            x = symmetrize(x)
        full = all(slot_permute(s, x) == x for s in perms)
        assert is_invariant(x) == full


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_invariant_coefficients_are_symmetric(seed):
    rng = random.Random(seed)
    D = small_spec(rng, DefRingSpec)
    s = symmetrize(random_def(rng, D, 0.4))
    for m in range(1, D.k + 1):
        T = coefficient_tensor(s, m)
        for key, v in T.items():
            for perm in itertools.permutations(key):
                assert T.get(perm, 0) == v


def test_retract_of_symmetrized_pieces():
    # a symmetric tensor placed on slots {1, 2} only is not invariant under S_3
    D = DefRingSpec(1, 3)
    x = D.gen(0, 0) * D.gen(1, 0)
    assert not is_invariant(x)
    lam = PertRingSpec(1, 3).gen(0)
    assert retract(symmetrize(x)) == lam * lam / 6
