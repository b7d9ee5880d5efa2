import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_def, random_pert
from pertdef.parsing import parse_poly
from pertdef.polynomial import (
    Polynomial,
    RingColumn,
    dot,
    gradient,
    hessian,
    kernel_basis,
    partial_derivative,
    poly_eval,
)
from pertdef.rings import DefRingSpec, PertRingSpec, RingSpecMismatch

CIRCLE = parse_poly("(x1^2 + x2^2 - 1)/2", 2)


def test_partial_derivative_examples():
    f = parse_poly("x1^2 + x1*x2", 2)
    assert partial_derivative(f, 0) == parse_poly("2*x1 + x2", 2)
    assert partial_derivative(Polynomial.const(2, 5), 0).is_zero()
    P = PertRingSpec(2, 2)
    assert partial_derivative(P.gen(0) * P.gen(1), 0) == P.gen(1)
    with pytest.raises(IndexError):
        partial_derivative(f, 2)


def test_gradient_and_hessian():
    f = parse_poly("x1^3 + 2*x1*x2", 2)
    assert gradient(f) == [parse_poly("3*x1^2 + 2*x2", 2), parse_poly("2*x1", 2)]
    H = hessian(f)
    assert H[0][0] == parse_poly("6*x1", 2)
    assert H[0][1] == H[1][0] == Polynomial.const(2, 2)


def test_poly_eval_circle():
    assert poly_eval(CIRCLE, (1, 0)) == 0
    P = PertRingSpec(1, 3)
    lam = P.gen(0)
    assert poly_eval(CIRCLE, RingColumn([P.one(), lam])) == lam * lam / 2
    assert poly_eval(CIRCLE, RingColumn([1 - lam * lam / 2, lam])) == 0


def test_poly_eval_dimension_mismatch():
    P = PertRingSpec(1, 3)
    with pytest.raises(ValueError):
        poly_eval(CIRCLE, RingColumn([P.one()]))


def test_dot_examples():
    assert dot((1, 0), (0, 1)) == 0
    D = DefRingSpec(1, 1)
    e = D.gen(0, 0)
    assert dot(RingColumn([D.one(), e]), RingColumn([-e, D.one()])) == 0
    P = PertRingSpec(1, 2)
    lam = P.gen(0)
    col = RingColumn([lam, lam])
    assert dot(col, col) == 2 * lam * lam
    with pytest.raises((ValueError, RingSpecMismatch)):
        dot(col, RingColumn([lam]))


def test_ring_column_mixing():
    P = PertRingSpec(1, 2)
    col = RingColumn([P.gen(0), Fraction(3)])
    assert col[1] == P.const(3)
    assert col.spec == P
    with pytest.raises(RingSpecMismatch):
        RingColumn([P.gen(0), PertRingSpec(1, 3).gen(0)])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_poly_eval_is_morphism(seed, use_def):
    rng = random.Random(seed)
    N = rng.randint(1, 3)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(0, 4)):
            e = tuple(rng.randint(0, 2) for _ in range(N))
            terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        return Polynomial(N, terms)

    F, G = rand_poly(), rand_poly()
    if use_def:
        spec = DefRingSpec(rng.randint(1, 2), rng.randint(1, 3))
        p = RingColumn(random_def(rng, spec, 0.4) for _ in range(N))
    else:
        spec = PertRingSpec(rng.randint(1, 2), rng.randint(1, 3))
        p = RingColumn(random_pert(rng, spec, 0.4) for _ in range(N))
    assert poly_eval(F * G, p) == poly_eval(F, p) * poly_eval(G, p)
    assert poly_eval(F + G, p) == poly_eval(F, p) + poly_eval(G, p)


def test_kernel_basis():
    basis = kernel_basis([[1, 2, 3]])
    assert basis == [(-2, 1, 0), (-3, 0, 1)]
    assert kernel_basis([[0, 1]]) == [(1, 0)]
    rows = [[1, 1, 0, 2], [0, 1, 1, 1]]
    for v in kernel_basis(rows):
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)
    assert len(kernel_basis(rows)) == 2
