import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pertdef.rings import (
    DefRingSpec,
    PertRingSpec,
    RingSpecMismatch,
    as_rational,
    format_rational,
    invert_unit,
    parse_rational,
)

# -- strategies ---------------------------------------------------------------

coef = st.integers(-9, 9).map(Fraction)


@st.composite
def pert_elems(draw, spec=None, count=1, unit=False):
    if spec is None:
        spec = PertRingSpec(draw(st.integers(1, 3)), draw(st.integers(1, 4)))
    monos = [e for e in itertools.product(range(spec.k + 1), repeat=spec.n) if sum(e) <= spec.k]
    out = []
    for _ in range(count):
        terms = draw(st.dictionaries(st.sampled_from(monos), coef, max_size=8))
        if unit:
            terms[(0,) * spec.n] = draw(st.integers(1, 9).map(Fraction))
        out.append(spec.element(terms))
    return out if count > 1 else out[0]


def _def_monos(spec):
    out = []
    for size in range(spec.k + 1):
        for slots in itertools.combinations(range(spec.k), size):
            for idx in itertools.product(range(spec.n), repeat=size):
                out.append(tuple(zip(slots, idx)))
    return out


@st.composite
def def_elems(draw, spec=None, count=1, unit=False):
    if spec is None:
        spec = DefRingSpec(draw(st.integers(1, 3)), draw(st.integers(1, 4)))
    monos = _def_monos(spec)
    out = []
    for _ in range(count):
        terms = draw(st.dictionaries(st.sampled_from(monos), coef, max_size=8))
        if unit:
            terms[()] = draw(st.integers(1, 9).map(Fraction))
        out.append(spec.element(terms))
    return out if count > 1 else out[0]


@st.composite
def triples(draw):
    if draw(st.booleans()):
        spec = PertRingSpec(draw(st.integers(1, 3)), draw(st.integers(1, 4)))
        return draw(pert_elems(spec, count=3))
    spec = DefRingSpec(draw(st.integers(1, 3)), draw(st.integers(1, 4)))
    return draw(def_elems(spec, count=3))


# -- rationals ----------------------------------------------------------------


def test_rational_forms():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert as_rational("7") == 7


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "abc", "1.5"])
def test_rational_rejects(bad):
    with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
        as_rational(bad)


# -- Pert arithmetic ----------------------------------------------------------


def test_pert_examples():
    P12 = PertRingSpec(1, 2)
    lam = P12.gen(0)
    assert (1 + lam) * (1 + lam) == 1 + 2 * lam + lam * lam
    assert (1 + lam) * (1 + lam) == P12.element({(0,): 1, (1,): 2, (2,): 1})
    assert lam * (lam * lam) == 0
    P22 = PertRingSpec(2, 2)
    l1, l2 = P22.gen(0), P22.gen(1)
    assert (l1 + l2) ** 2 == P22.element({(2, 0): 1, (1, 1): 2, (0, 2): 1})


def test_pert_monomial_strings():
    P = PertRingSpec(2, 3)
    x = P.element({(2, 1): 3, (0, 1): Fraction(-1, 2), (0, 0): 1})
    assert x.to_map() == {"": "1", "l2": "-1/2", "l1^2*l2": "3"}
    assert str(P.gen(1)) == "l2"
    with pytest.raises(ValueError):
        P.parse_monomial("l2*l1")
    with pytest.raises(ValueError):
        P.parse_monomial("l3")


def test_spec_validation():
    for bad in [(0, 1), (1, 0), (-1, 2)]:
        with pytest.raises(ValueError):
            PertRingSpec(*bad)
        with pytest.raises(ValueError):
            DefRingSpec(*bad)


def test_spec_mismatch():
    with pytest.raises(RingSpecMismatch):
        PertRingSpec(1, 2).gen(0) + PertRingSpec(1, 3).gen(0)
    with pytest.raises(RingSpecMismatch):
        DefRingSpec(1, 2).gen(0, 0) * DefRingSpec(2, 2).gen(0, 0)


def test_pert_partial_derivative():
    P = PertRingSpec(2, 2)
    assert (P.gen(0) * P.gen(1)).partial_derivative(0) == P.gen(1)
    assert P.const(5).partial_derivative(1) == 0
    with pytest.raises(IndexError):
        P.gen(0).partial_derivative(2)


# -- Def arithmetic -----------------------------------------------------------


def test_def_examples():
    D22 = DefRingSpec(2, 2)
    assert D22.gen(0, 0) * D22.gen(0, 1) == 0
    D12 = DefRingSpec(1, 2)
    e1, e2 = D12.gen(0, 0), D12.gen(1, 0)
    assert (e1 + e2) ** 2 == 2 * e1 * e2
    D11 = DefRingSpec(1, 1)
    e = D11.gen(0, 0)
    assert (1 + e) * (1 - e) == 1


def test_def_monomial_strings():
    D = DefRingSpec(3, 3)
    m = D.gen(2, 0) * D.gen(0, 1)
    assert m.to_map() == {"e1_2*e3_1": "1"}
    assert D.parse_monomial("e1_2*e3_1") == ((0, 1), (2, 0))
    with pytest.raises(ValueError):
        D.parse_monomial("e3_1*e1_2")
    with pytest.raises(ValueError):
        D.parse_monomial("e1_1*e1_2")


# -- unit inversion -----------------------------------------------------------


def test_invert_examples():
    P = PertRingSpec(1, 2)
    lam = P.gen(0)
    assert invert_unit(1 - lam) == 1 + lam + lam * lam
    D = DefRingSpec(1, 2)
    e = D.gen(0, 0)
    assert invert_unit(1 + e) == 1 - e
    assert invert_unit(P.const(2)) == Fraction(1, 2)
    assert invert_unit(Fraction(2)) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        invert_unit(lam)
    assert (1 + lam) / (1 - lam) == 1 + 2 * lam + 2 * lam * lam


# -- properties ---------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    assert a * 1 == a


@settings(max_examples=40, deadline=None)
@given(pert_elems())
def test_pert_nilpotency(a):
    a = a - a.constant_term()
    assert a ** (a.spec.k + 1) == 0


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_def_no_repeated_slots(data):
    spec = DefRingSpec(data.draw(st.integers(1, 3)), data.draw(st.integers(1, 4)))
    a, b = data.draw(def_elems(spec, count=2))
    for x in (a * b, a + b, a ** 2):
        for mono in x.terms:
            slots = [s for s, _ in mono]
            assert len(slots) == len(set(slots))
            assert slots == sorted(slots)
    nil = a - a.constant_term()
    assert nil ** (spec.k + 1) == 0


@settings(max_examples=40, deadline=None)
@given(st.one_of(pert_elems(unit=True), def_elems(unit=True)))
def test_invert_unit_property(a):
    assert a * invert_unit(a) == 1


@settings(max_examples=60, deadline=None)
@given(st.one_of(pert_elems(), def_elems()))
def test_serialization_roundtrip(a):
    m = a.to_map()
    assert all(isinstance(v, str) for v in m.values())
    assert a.spec.from_map(m) == a
    assert a.spec.from_map(m).to_map() == m
    assert "0" not in m.values()
