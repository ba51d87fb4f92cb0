"""Derivations ``g d/dt`` of A((t)) and their Lie 2-cocycles.

``L_n = t^(n+1) d/dt`` spans the Witt algebra, ``[L_n, L_m] = (m - n) L_(n+m)``.
"""

from __future__ import annotations

from fractions import Fraction

from .aut import AutElement
from .errors import ConsistencyError, DescriptorError
from .series import LaurentSeries, residue


class Derivation:
    """The continuous derivation ``g d/dt``."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient):
        self.coefficient = coefficient

    @classmethod
    def L(cls, ring, n):
        return cls(LaurentSeries.monomial(ring, n + 1))

    @property
    def ring(self):
        return self.coefficient.ring

    def __call__(self, s):
        return self.coefficient * s.derivative()

    def __add__(self, other):
        return Derivation(self.coefficient + other.coefficient)

    def __sub__(self, other):
        return Derivation(self.coefficient - other.coefficient)

    def scale(self, x):
        return Derivation(self.coefficient.scale(x))

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coefficient == other.coefficient

    def __hash__(self):
        return hash(self.coefficient)

    def __repr__(self):
        return f"Derivation({self.coefficient})"


def bracket(d1, d2):
    """``[g1 d/dt, g2 d/dt] = (g1 g2' - g2 g1') d/dt``."""
    g1, g2 = d1.coefficient, d2.coefficient
    return Derivation(g1 * g2.derivative() - g2 * g1.derivative())


def lie_bott(d1, d2):
    """``2 res(g1' dg2')``."""
    g1, g2 = d1.coefficient, d2.coefficient
    return residue(g1.derivative() * g2.derivative().derivative()) * 2


def _trace_cb(r, s):
    """``tr(c_r b_s)`` for the operators ``x -> g x'``.

    ``b_s(t^k) = sum_{j<0} k g_s[j-k+1] t^j`` and
    ``c_r(t^j) = sum_{k>=0} j g_r[k-j+1] t^k``.
    """
    gr, gs = r.coefficient, s.coefficient
    ring = gr.ring
    total = ring.zero
    if gs.is_zero():
        return total
    for k in range(1, max(1, 1 - gs.low)):
        for j in range(k - 1 + gs.low, 0):
            bs = gs.coefficient(j - k + 1)
            if not bs:
                continue
            cr = gr.coefficient(k - j + 1)
            if cr:
                total = total + cr * bs * (j * k)
    return total


def lie_det(d1, d2):
    """``tr(c_{d2} b_{d1} - c_{d1} b_{d2})``, a finite trace."""
    return _trace_cb(d2, d1) - _trace_cb(d1, d2)


def virasoro_pairing(m, n, which):
    """Closed forms on ``(L_m, L_n)``: ``bott`` or ``det``."""
    if n != -m:
        return Fraction(0)
    if which == "bott":
        return Fraction(-2 * (m - m ** 3))
    if which == "det":
        return Fraction(-(m - m ** 3), 6)
    raise ValueError(f"unknown pairing {which!r}")


DUAL_NAMES = ("eps1", "eps2")


def lie_from_group(cocycle, g1, g2, names=DUAL_NAMES):
    """Lie cocycle ``b`` read off from ``Y = c(a1, a2) c(a2, a1)^-1 = 1 + b eps1 eps2``.

    ``a_i~ = t + g_i eps_i`` over ``A[eps1, eps2]/(eps1^2, eps2^2)``.
    """
    ring = g1.ring
    clash = [n for n in names if n in ring.names]
    if clash:
        raise DescriptorError(f"generator names {clash} already used by {ring.descriptor}")
    big = ring.extend(*((n, 2) for n in names))
    e1, e2 = big.gen(names[0]), big.gen(names[1])
    t = LaurentSeries.t(big)
    a1 = AutElement(t + g1.change_ring(big).scale(e1))
    a2 = AutElement(t + g2.change_ring(big).scale(e2))
    upsilon = cocycle(a1, a2) * cocycle(a2, a1).inverse()
    b = ring.zero
    top = len(ring.names)
    expected = {}
    for exps, c in upsilon.coefficients.items():
        tail = exps[top:]
        expected[exps] = c
        if tail == (0, 0):
            continue
        if tail != (1, 1):
            raise ConsistencyError(f"Y = {upsilon} is not of the shape 1 + b*eps1*eps2",
                                   upsilon)
        b = b + ring.monomial(exps[:top], c)
    constant = big.element({e: c for e, c in expected.items() if e[top:] == (0, 0)})
    if constant != big.one:
        raise ConsistencyError(f"Y = {upsilon} is not of the shape 1 + b*eps1*eps2", upsilon)
    return b
