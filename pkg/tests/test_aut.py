import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laurentcc.aut import (AutElement, DecompositionVariant, aut_from_series, apply, decompose,
                           identity, in_minus, in_minus0, in_plus, in_plus1, inverse,
                           membership, mul, reversion, tau)
from laurentcc.errors import PrecisionError, ValidationError
from laurentcc.parsing import parse_ring, parse_series
from laurentcc.sampling import Sampler
from laurentcc.series import LaurentSeries, compose, precision

seeds = st.integers(0, 10**9)
VARIANTS = list(DecompositionVariant)


def A(text, ring):
    return aut_from_series(parse_series(text, parse_ring(ring)))


def S(text, ring):
    return parse_series(text, parse_ring(ring))


def test_shape_validation():
    assert A("t", "Q").is_identity()
    assert A("t + e*t^-1", "Q[e;2]").depth == 1
    for text, ring in [("t + t^-1", "Q"), ("t^2", "Q"), ("2*t", "Z/4"), ("1 + t", "Q")]:
        with pytest.raises(ValidationError):
            A(text, ring)


def test_mul_examples():
    phi = A("2*t", "Q")
    psi = A("t + t^2", "Q")
    assert mul(identity(phi.ring), psi) == psi
    assert mul(phi, psi).tilde == S("2*t + 4*t^2", "Q")


def test_action_and_tau():
    phi = A("t + e*t^-1", "Q[e;2]")
    assert apply(phi, S("t^2", "Q[e;2]")) == S("t^2 + 2*e", "Q[e;2]")
    assert tau(identity(parse_ring("Q"))) == LaurentSeries.one(parse_ring("Q"))
    assert tau(A("t + t^2", "Q")) == S("1 + 2*t", "Q")
    assert tau(phi) == S("1 - e*t^-2", "Q[e;2]")


def test_inverse_examples():
    assert inverse(A("t + e", "Q[e;2]")).tilde == S("t - e", "Q[e;2]")
    assert inverse(A("2*t", "Q")).tilde == S("t/2", "Q")
    got = inverse(A("t + t^2", "Q"), 5)
    assert got.tilde == S("t - t^2 + 2*t^3 - 5*t^4 + O(t^5)", "Q")


def test_inverse_respects_requested_precision():
    phi = A("t + e*t^-2 + t^3", "Q[e;3]")
    assert inverse(phi, 20).tilde.prec == 20
    with precision(12):
        assert inverse(phi).tilde.prec == 13


def test_reversion_catalan():
    # reversion of t - t^2 is the Catalan generating function
    r = reversion(S("t - t^2", "Q"), 9)
    catalan = [1, 1, 2, 5, 14, 42, 132, 429]
    assert [int(r.coefficient(k).vec[0]) for k in range(1, 9)] == catalan


@pytest.mark.parametrize("ring", ["Q[e;2]", "Z/8", "Q[e;2,d;2]", "Z/4[e;2]"])
@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_group_axioms(ring, seed):
    R = parse_ring(ring)
    sm = Sampler(R, seed)
    f, g, h = sm.aut(), sm.aut(), sm.aut()
    one = identity(R)
    assert mul(one, f) == f and mul(f, one) == f
    with precision(48):
        left = mul(mul(f, g), h)
        right = mul(f, mul(g, h))
        assert left.agrees(right, 20)
        inv = inverse(f, 64)
        assert mul(f, inv).agrees(one, 20)
        assert mul(inv, f).agrees(one, 20)


@pytest.mark.parametrize("ring", ["Q[e;2]", "Z/8", "Q[e;3]"])
@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_tau_is_a_one_cocycle(ring, seed):
    R = parse_ring(ring)
    sm = Sampler(R, seed)
    f, g = sm.aut(), sm.aut()
    lhs = tau(mul(f, g))
    rhs = tau(f) * apply(f, tau(g))
    assert lhs.agrees(rhs, 16)


def test_membership_predicates():
    assert in_plus1(A("2*t + t^2", "Q")) and not in_plus1(A("t + e", "Q[e;2]"))
    assert in_plus(A("t + e", "Q[e;2]")) and not in_plus(A("t + e*t^-1", "Q[e;2]"))
    assert in_minus0(A("t + e + e*t^-1", "Q[e;2]")) and not in_minus0(A("t + t^2", "Q"))
    assert in_minus(A("t + e*t^-1", "Q[e;2]")) and not in_minus(A("t + e", "Q[e;2]"))


@pytest.mark.parametrize("variant", VARIANTS)
def test_decompose_identity(variant):
    one = identity(parse_ring("Q[e;2]"))
    alpha, beta = decompose(one, variant)
    assert alpha.is_identity() and beta.is_identity()


def test_decompose_examples():
    phi = A("t + e", "Q[e;2]")
    alpha, beta = decompose(phi, "plus*minus")
    assert alpha.tilde == S("t + e", "Q[e;2]") and beta.is_identity()
    alpha, beta = decompose(phi, "plus1*minus0")
    assert alpha.is_identity() and beta.tilde == S("t + e", "Q[e;2]")


def test_decompose_minus_plus_is_exact_on_polynomials():
    phi = A("3*t + 2*t^-1 + t^2", "Z/8")
    alpha, beta = decompose(phi, "minus0*plus1")
    assert alpha.tilde.is_exact and beta.tilde.is_exact
    assert mul(alpha, beta) == phi


def _check_decomposition(phi, variant, N):
    alpha, beta = decompose(phi, variant)
    p1, p2 = membership(variant)
    assert p1(alpha) and p2(beta)
    assert mul(alpha, beta).agrees(phi, N)
    wide = decompose(phi, variant, 2 * N)
    with precision(2 * N):
        recomposed = mul(*wide)
    again = decompose(recomposed, variant, N)
    assert again[0].agrees(alpha) and again[1].agrees(beta)


@pytest.mark.parametrize("ring", ["Q[e;2]", "Z/8", "Q[e1;2,e2;2]", "Z/4[e;2]"])
@pytest.mark.parametrize("variant", VARIANTS)
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_decompose_round_trip(ring, variant, seed):
    R = parse_ring(ring)
    phi = Sampler(R, seed, height=2).aut(depth=1, degree=2)
    with precision(20):
        _check_decomposition(phi, variant, 20)


@pytest.mark.parametrize("ring", ["Q", "Z/5"])
def test_reduced_rings_have_trivial_minus_factor(ring):
    sm = Sampler(parse_ring(ring), 3)
    for _ in range(10):
        phi = sm.aut()
        assert in_plus1(phi)
        for variant in VARIANTS:
            alpha, beta = decompose(phi, variant)
            trivial = beta if variant.value.startswith("plus") else alpha
            assert trivial.is_identity()


def test_decompose_of_inexact_input():
    phi = A("t + e*t^-1 + t^2", "Q[e;2]")
    wide = inverse(phi, 60)
    alpha, beta = decompose(wide, "plus1*minus0", 24)
    assert mul(alpha, beta).agrees(wide, 24)
    with pytest.raises(PrecisionError):
        decompose(AutElement(wide.tilde.truncate(6)), "plus1*minus0", 24)


def test_aut_elements_are_hashable_values():
    a, b = A("t + t^2", "Q"), A("t + t^2", "Q")
    assert a == b and hash(a) == hash(b) and len({a, b}) == 1
    assert compose(a.tilde, identity(a.ring).tilde) == a.tilde
