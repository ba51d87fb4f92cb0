from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laurentcc.cocycles import bott_thurston, det_cocycle
from laurentcc.errors import DescriptorError
from laurentcc.lie import (Derivation, bracket, lie_bott, lie_det, lie_from_group,
                           virasoro_pairing)
from laurentcc.parsing import parse_ring, parse_series
from laurentcc.sampling import Sampler

Q = parse_ring("Q")
seeds = st.integers(0, 10**9)


def L(n, ring=Q):
    return Derivation.L(ring, n)


def D(text, ring=Q):
    return Derivation(parse_series(text, ring))


def sample(seed, ring="Q[e;2]", count=3):
    s = Sampler(parse_ring(ring), seed)
    return [Derivation(s.derivation_series()) for _ in range(count)]


def test_bracket_examples():
    assert bracket(L(0), L(1)) == D("t^2")
    assert bracket(L(-2), L(2)) == D("4*t")
    assert bracket(L(3), L(3)) == D("0")


@pytest.mark.parametrize("m,n", [(-3, 2), (0, 4), (1, -1), (-2, -1)])
def test_witt_relations(m, n):
    assert bracket(L(m), L(n)) == L(m + n).scale(n - m)


def test_lie_bott_examples():
    assert lie_bott(L(2), L(-2)) == 12
    assert lie_bott(L(1), L(-1)) == 0
    assert lie_bott(D("t^3"), D("t^-1")) == 12


def test_lie_det_examples():
    assert lie_det(L(2), L(-2)) == 1
    assert lie_det(L(1), L(-1)) == 0
    assert lie_det(L(3), L(-3)) == 4


@pytest.mark.parametrize("m", range(-5, 6))
@pytest.mark.parametrize("n", range(-5, 6))
def test_virasoro_table(m, n):
    assert lie_bott(L(m), L(n)) == Q.scalar(virasoro_pairing(m, n, "bott"))
    assert lie_det(L(m), L(n)) == Q.scalar(virasoro_pairing(m, n, "det"))


def test_virasoro_pairing_closed_forms():
    assert virasoro_pairing(2, -2, "bott") == 12
    assert virasoro_pairing(3, -3, "det") == 4
    assert virasoro_pairing(2, 3, "det") == 0
    assert virasoro_pairing(4, -4, "det") == Fraction(4 ** 3 - 4, 6)
    with pytest.raises(ValueError):
        virasoro_pairing(1, -1, "other")


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_jacobi(seed):
    a, b, c = sample(seed)
    total = (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
             + bracket(c, bracket(a, b)))
    assert total.coefficient.is_zero()


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_cocycles_bilinear_and_antisymmetric(seed):
    a, b, c = sample(seed)
    for w in (lie_bott, lie_det):
        assert w(a, b) == -w(b, a)
        assert w(a, a) == 0
        assert w(a + b, c) == w(a, c) + w(b, c)
        assert w(a.scale(3), c) == w(a, c) * 3


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_lie_two_cocycle_identity(seed):
    a, b, c = sample(seed)
    for w in (lie_bott, lie_det):
        total = w(bracket(a, b), c) + w(bracket(b, c), a) + w(bracket(c, a), b)
        assert total == 0


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from(["Q", "Q[e;2]", "Z/4", "Z/8[e;2]"]))
def test_twelve_lie_det_is_lie_bott(seed, ring):
    a, b = sample(seed, ring, 2)
    assert lie_det(a, b) * 12 == lie_bott(a, b)


def test_lie_from_group_examples():
    t3, ti = parse_series("t^3", Q), parse_series("t^-1", Q)
    assert lie_from_group(bott_thurston, t3, ti) == 12
    assert lie_from_group(det_cocycle, t3, ti) == 1
    assert lie_from_group(bott_thurston, t3, t3) == 0
    assert lie_from_group(det_cocycle, t3, t3) == 0


@pytest.mark.parametrize("m", [-3, -2, 2, 3])
def test_lie_from_group_matches_lie_cocycles(m):
    g1, g2 = L(m).coefficient, L(-m).coefficient
    assert lie_from_group(bott_thurston, g1, g2) == lie_bott(L(m), L(-m))
    assert lie_from_group(det_cocycle, g1, g2) == lie_det(L(m), L(-m))


def test_lie_from_group_over_nilpotent_ring():
    R = parse_ring("Q[e;2]")
    g1, g2 = parse_series("t^2 + e*t^3", R), parse_series("t^-2 + t", R)
    assert lie_from_group(bott_thurston, g1, g2) == lie_bott(Derivation(g1), Derivation(g2))
    assert lie_from_group(det_cocycle, g1, g2) == lie_det(Derivation(g1), Derivation(g2))


def test_lie_from_group_rejects_name_collision():
    R = parse_ring("Q[eps1;2]")
    g = parse_series("t^2", R)
    with pytest.raises(DescriptorError):
        lie_from_group(bott_thurston, g, g)
    # other dual names avoid the collision
    assert lie_from_group(bott_thurston, g, g, names=("u", "v")) == 0
