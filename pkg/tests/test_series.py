import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from laurentcc.errors import NotAUnitError, PrecisionError, UnsupportedError, ValidationError
from laurentcc.parsing import parse_ring, parse_series
from laurentcc.rings import RingSampler
from laurentcc.sampling import Sampler
from laurentcc.series import (LaurentSeries, compose, exp_series, invert_unit, log_sharp,
                              precision, residue_pairing, unit_decompose, unit_order,
                              working_precision)

seeds = st.integers(0, 10**9)


def S(text, ring):
    return parse_series(text, parse_ring(ring))


# --- precision bookkeeping ---------------------------------------------------


def test_default_precision_and_context():
    assert working_precision() == 32
    with precision(10):
        assert working_precision() == 10
    assert working_precision() == 32


def test_precision_of_sums_and_products():
    Q = parse_ring("Q")
    a = LaurentSeries.from_dict(Q, {-1: 1, 0: 2}, prec=5)
    b = LaurentSeries.from_dict(Q, {2: 1}, prec=7)
    assert (a + b).prec == 5
    assert (a * b).prec == min(5 + 2, 7 - 1)
    assert (a * S("t^3", "Q")).prec == 8


def test_unknown_coefficients_raise():
    f = S("1 + t + O(t^2)", "Q")
    with pytest.raises(PrecisionError):
        f.coefficient(2)


# --- compose -------------------------------------------------------------------


def test_compose_examples():
    assert compose(S("t^2", "Q[e;2]"), S("t + e*t^-1", "Q[e;2]")) == S("t^2 + 2*e", "Q[e;2]")
    f = S("3 + e*t^-2 - t^5", "Q[e;2]")
    assert compose(f, S("t", "Q[e;2]")) == f
    got = compose(S("t^-1", "Q[e;2]"), S("t + e", "Q[e;2]"))
    assert got == S("t^-1 - e*t^-2", "Q[e;2]")


def test_compose_power_series_oracle():
    # (1 + t)^-1 o (2t) = 1 - 2t + 4t^2 - ... by the geometric series
    Q = parse_ring("Q")
    f = invert_unit(S("1 + t", "Q"), 8)
    got = compose(f, S("2*t", "Q"), 8)
    assert got == LaurentSeries.from_dict(Q, {k: (-2) ** k for k in range(8)}, prec=8)


def test_compose_strict_precision():
    f = S("t^-1", "Q[e;2]")
    g = S("t + t^2 + O(t^4)", "Q[e;2]")
    with pytest.raises(PrecisionError):
        compose(f, g, 10)
    assert compose(f, g, 10, strict=False).prec < 10


@pytest.mark.parametrize("ring", ["Q[e;2]", "Z/8[e;2]", "Q[e;3]"])
@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_compose_of_truncated_input_agrees_with_exact(ring, seed):
    """Regression: an inexact g must never claim coefficients it cannot know."""
    R = parse_ring(ring)
    sm = Sampler(R, seed)
    rng = random.Random(seed)
    g = sm.aut(depth=rng.randint(0, 2), degree=12).tilde
    f = LaurentSeries.from_dict(R, {k: sm.elements.element() for k in range(-4, 4)})
    exact = compose(f, g, 40)
    # the dropped tail of g is nonzero, so any overclaimed coefficient shows up
    cut = g.truncate(rng.randint(2, 10))
    approx = compose(f, cut, 30, strict=False)
    assert approx.prec is not None
    assert approx.agrees(exact)


@pytest.mark.parametrize("ring", ["Q[e;2]", "Z/8", "Z/4[e;2]"])
@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_compose_is_associative(ring, seed):
    R = parse_ring(ring)
    sm = Sampler(R, seed)
    g, h = sm.aut().tilde, sm.aut().tilde
    f = LaurentSeries.from_dict(R, {k: sm.elements.element() for k in range(-2, 4)})
    left = compose(compose(f, g, 24), h, 16, strict=False)
    right = compose(f, compose(g, h, 24), 16, strict=False)
    assert left.prec >= 4 and right.prec >= 4
    assert left.agrees(right)


# --- residue -------------------------------------------------------------------


def test_residue_pairing_examples():
    R = parse_ring("Q")
    one = LaurentSeries.one(R)
    assert residue_pairing(S("t^-1", "Q"), S("t", "Q")) == R.one
    assert residue_pairing(S("t", "Q"), S("t^-1", "Q")) == -R.one
    assert residue_pairing(one, S("3*t^-4 + t^2 - 7*t^-1", "Q")) == R.zero


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_residue_pairing_properties(seed):
    R = parse_ring("Q[e;2,d;3]")
    s = RingSampler(R, seed)

    def poly():
        return LaurentSeries.from_dict(R, {k: s.element() for k in range(-3, 4)})

    f1, f2, h = poly(), poly(), poly()
    a = s.element()
    assert residue_pairing(LaurentSeries.one(R), h) == R.zero
    assert residue_pairing(f1.scale(a) + f2, h) == a * residue_pairing(f1, h) + residue_pairing(f2, h)
    # res d(fh) = 0
    assert residue_pairing(f1, h) == -residue_pairing(h, f1)


# --- units ---------------------------------------------------------------------


def test_unit_order_examples():
    assert unit_order(S("t", "Q")) == 1
    assert unit_order(S("5", "Q")) == 0
    assert unit_order(S("e*t^2 + t^3", "Q[e;2]")) == 3
    with pytest.raises(NotAUnitError):
        unit_order(S("2*t + 4*t^2", "Z/4"))


def test_unit_decompose_examples():
    R = parse_ring("Q[e;2]")
    u = unit_decompose(S("t", "Q"), limit=4)
    assert u.negative == () and u.nu == 1 and u.a0 == parse_ring("Q").one
    assert all(not a for _, a in u.positive)
    u = unit_decompose(S("1 + e*t^-1", "Q[e;2]"), limit=4)
    assert u.negative == ((-1, -R.gen("e")),) and u.nu == 0 and u.a0 == R.one
    assert all(not a for _, a in u.positive)
    u = unit_decompose(S("2 + 2*t", "Q"), limit=4)
    Q = parse_ring("Q")
    assert u.a0 == Q(2) and u.atom(1) == Q(-1) and u.atom(2) == Q.zero


@pytest.mark.parametrize("ring", ["Q[e;2,d;3]", "Z/8"])
def test_unit_decompose_reassembles(ring):
    R = parse_ring(ring)
    sm = Sampler(R, 11)
    for _ in range(100):
        f = sm.unit()
        u = unit_decompose(f, limit=20)
        assert u.reassemble(16).agrees(f, 16)
        assert all(a.is_nilpotent() for _, a in u.negative)
        assert u.a0.is_unit()


def test_invert_unit_examples():
    assert invert_unit(S("t", "Q")) == S("t^-1", "Q")
    assert invert_unit(S("1 - e*t^-1", "Q[e;2]")) == S("1 + e*t^-1", "Q[e;2]")
    assert invert_unit(S("1 + t", "Q"), 4) == S("1 - t + t^2 - t^3 + O(t^4)", "Q")


@pytest.mark.parametrize("ring", ["Q[e;2,d;3]", "Z/8", "Z/9[e;2]"])
@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_invert_unit_multiplies_back(ring, seed):
    R = parse_ring(ring)
    f = Sampler(R, seed).unit()
    g = invert_unit(f)
    assert (f * g).agrees(LaurentSeries.one(R))
    assert (f * g).prec >= working_precision() - 8


def test_log_sharp_examples():
    assert log_sharp(S("1", "Q")) == LaurentSeries.zero(parse_ring("Q"))
    assert log_sharp(S("1 + e*t^-1", "Q[e;2]")) == S("e*t^-1", "Q[e;2]")
    assert log_sharp(S("1 + t", "Q"), 3) == S("t - t^2/2 + O(t^3)", "Q")


def test_log_sharp_rejects_outside_sharp_and_non_q():
    with pytest.raises(ValidationError):
        log_sharp(S("2 + t", "Q"))
    with pytest.raises(UnsupportedError):
        log_sharp(S("1 + 2*t^-1", "Z/4"))


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_exp_of_log_sharp(seed):
    R = parse_ring("Q[e;3]")
    f = Sampler(R, seed).sharp_unit()
    back = exp_series(log_sharp(f, 20), 20)
    assert back.agrees(f, 20)


def test_series_inverse_newton_against_recurrence():
    R = parse_ring("Z/8[e;2]")
    s = RingSampler(R, 3)
    f = LaurentSeries.from_dict(R, {0: s.unit(), **{k: s.element() for k in range(1, 9)}})
    inv = invert_unit(f, 30)
    assert (inv * f).agrees(LaurentSeries.one(R), 30)
    assert inv.coefficient(0) * f.coefficient(0) == R.one
    # recurrence: sum_{i<=k} f_i inv_{k-i} = 0 for k > 0
    for k in range(1, 30):
        acc = R.zero
        for i in range(0, k + 1):
            acc = acc + f.coefficient(i) * inv.coefficient(k - i)
        assert acc == R.zero


def test_rational_coefficients_stay_exact():
    f = invert_unit(S("3 + t", "Q"), 6)
    assert f.coefficient(5) == parse_ring("Q")(mpq(-1, 3 ** 6))
