"""The group of continuous automorphisms of A((t)).

An automorphism ``phi`` is stored through ``phi~ = phi(t)``.  The product
``phi1 * phi2`` (apply ``phi2`` first, then ``phi1``) has
``(phi1 phi2)~ = phi2~ o phi1~``, and ``phi`` acts on a series ``s`` by
``s o phi~``.
"""

from __future__ import annotations

from enum import Enum

from .errors import ConsistencyError, PrecisionError, ValidationError
from .series import (LaurentSeries, _power_series_inverse, _powers_until_zero,
                     check_auto_shape, compose, hasse, invert_unit, working_precision)


def default_target():
    """Absolute precision used for infinite automorphism series."""
    return working_precision() + 1


class AutElement:
    __slots__ = ("tilde",)

    def __init__(self, tilde):
        check_auto_shape(tilde)
        self.tilde = tilde

    @property
    def ring(self):
        return self.tilde.ring

    @property
    def depth(self):
        """Principal depth ``n`` of the nilpotent tail ``a_-n t^-n + ...``."""
        return max(0, -self.tilde.low)

    def is_identity(self):
        return self.tilde == LaurentSeries.t(self.ring)

    def __mul__(self, other):
        return mul(self, other)

    def __eq__(self, other):
        return isinstance(other, AutElement) and self.tilde == other.tilde

    def __hash__(self):
        return hash(self.tilde)

    def agrees(self, other, n=None):
        return self.tilde.agrees(other.tilde, n)

    def change_ring(self, ring):
        return AutElement(self.tilde.change_ring(ring))

    def __repr__(self):
        return f"AutElement({self.tilde})"

    def __str__(self):
        return str(self.tilde)


def aut_from_series(f):
    """Validate the automorphism shape; errors name the offending index."""
    return AutElement(f)


def identity(ring):
    return AutElement(LaurentSeries.t(ring))


def mul(phi1, phi2, n=None):
    """Group product; its tilde is ``phi2~ o phi1~``.

    Without ``n`` the result carries whatever precision the inputs allow.
    """
    strict = n is not None
    if n is None:
        n = _auto_n(phi2, phi1)
    return AutElement(compose(phi2.tilde, phi1.tilde, n, strict=strict))


def _auto_n(outer, inner):
    """Target for ``outer~ o inner~``: exact when possible, else the default."""
    f, g = outer.tilde, inner.tilde
    if f.is_exact and g.is_exact:
        v_exact_monomial = g.part(1, None).degree == 1
        if v_exact_monomial or f.low >= 0:
            return None
    return default_target()


def apply(phi, s, n=None):
    """``phi(s) = s o phi~``."""
    return compose(s, phi.tilde, n)


def tau(phi):
    """The 1-cocycle ``phi -> phi~'``."""
    return phi.tilde.derivative()


# --------------------------------------------------------------------------
# Inverse


def reversion(p, n):
    """Compositional inverse of a power series ``p = a_1 t + ...`` below ``t^n``.

    Newton iteration ``h <- h - (p o h - t) / (p' o h)`` doubles the number
    of correct coefficients per step.
    """
    ring = p.ring
    if p.low < 1:
        raise ValidationError("reversion needs a series without terms below t")
    a1 = p.coefficient(1)
    if not a1.is_unit():
        raise ValidationError("reversion needs a unit coefficient of t")
    if p.prec is not None:
        if p.prec < n:
            raise PrecisionError(f"reversion to t^{n} needs precision {n}, have {p.prec}")
    t = LaurentSeries.t(ring)
    h = t.scale(a1.inverse())
    if p.is_exact and p.degree == 1:
        return h
    dp = p.derivative()
    m = 2
    while True:
        m = min(2 * m, n)
        approx = LaurentSeries(ring, h.low, h.c)  # treat truncation as exact
        err = compose(p, approx, m) - t
        den = compose(dp, approx, m - 1)
        step = err.mul(invert_unit(den, m - 1), m)
        h = (approx - step).truncate(m)
        if m >= n:
            return h


def _minus_inverse(g):
    """Exact inverse of ``g = t + z`` with ``z`` nilpotent of degree ``<= 0``."""
    ring = g.ring
    t = LaurentSeries.t(ring)
    K = t
    cur = g
    for _ in range(ring.nil_index + 2):
        z = cur - t
        if z.is_zero():
            return K
        k = t - z
        cur = compose(cur, k)
        K = compose(K, k)
    raise ConsistencyError("nilpotent tail did not vanish by the nil index", g)


def _slack(f):
    """Precision consumed by one fixed-point solve on an input of this shape."""
    e = f.ring.nil_index
    depth = max(0, -f.low)
    return (e + 2) * (depth + 1)


def _inverse_powers(alpha, count, target):
    """``[1, alpha^-1, ..., alpha^-count]`` for a power series ``alpha = a_1 t + ...``."""
    ring = alpha.ring
    w = alpha.shift(-1)
    if w.is_exact and w.degree == 0:
        inv = LaurentSeries.monomial(ring, -1, w.coefficient(0).inverse())
    else:
        size = target + 1 + count
        if w.prec is not None:
            size = min(size, w.prec)
        vecs = _power_series_inverse(list(w.dense(0, max(size, 1))), max(size, 1), ring)
        inv = LaurentSeries(ring, -1, vecs, size - 1)
    powers = [LaurentSeries.one(ring)]
    for _ in range(count):
        powers.append(powers[-1] * inv)
    return powers


def _solve_plus1_minus0(f, target):
    """``f = alpha + sum_k b_-k alpha^-k`` with ``alpha`` in ``Aut+,1``.

    Returns ``(alpha~, beta~)`` where ``beta~ = t + sum_k b_-k t^-k``.  The
    unknowns are found by fixed-point iteration: every pass solves a
    triangular system for ``b`` and corrects ``alpha`` by ``b`` times powers
    of ``alpha^-1``.  As ``b`` is nilpotent, each pass fixes one more power of
    the nilradical, so the loop ends by the nil index.
    """
    ring = f.ring
    depth = max(0, -f.low)
    fp = f.part(1, None).truncate(target)
    fm = f.part(None, 1)
    alpha, b = fp, None
    for _ in range(ring.nil_index + 2):
        powers = _inverse_powers(alpha, depth, target)
        new_b = {}
        for k in range(depth, -1, -1):
            rest = fm.coefficient(-k)
            for l, c in new_b.items():
                rest = rest - c * powers[l].coefficient(-k)
            if rest:
                new_b[k] = rest * powers[k].coefficient(-k).inverse()
        tail = LaurentSeries.zero(ring)
        for k, c in new_b.items():
            tail = tail + powers[k].scale(c)
        new_alpha = fp - tail.part(1, None)
        if new_b == b and new_alpha.agrees(alpha):
            beta = LaurentSeries.t(ring)
            for k, c in new_b.items():
                beta = beta + LaurentSeries.monomial(ring, -k, c)
            return new_alpha, beta
        alpha, b = new_alpha, new_b
    raise ConsistencyError("plus1*minus0 iteration did not settle by the nil index", f)


def _solve_minus0_plus1(f):
    """``f = beta(t + z)`` with ``z`` nilpotent of index ``<= 0`` and ``beta`` in ``Aut+,1``.

    Expanding ``beta(t + z) = beta + z beta' + sum_(m>=2) z^m H_m beta``, the
    nonpositive part is triangular in ``z`` with unit diagonal ``beta'(0)``
    and the positive part corrects ``beta``.  Laurent polynomial input stays
    exact throughout.
    """
    ring = f.ring
    e = ring.nil_index
    depth = max(0, -f.low)
    reach = (e - 1) * depth
    fp = f.part(1, None)
    fm = f.part(None, 1)
    beta, z = fp, fm
    for _ in range(e + 2):
        db = beta.derivative()
        higher = LaurentSeries.zero(ring)
        for m, zm in enumerate(_powers_until_zero(z, e)):
            if m >= 2:
                higher = higher + zm * hasse(beta, m)
        rhs = fm - higher.part(None, 1)
        lo = min(-reach, rhs.low) if rhs.c else -reach
        d0inv = db.coefficient(0).inverse()
        coeffs = {}
        for i in range(lo, 1):
            acc = rhs.coefficient(i)
            for j, c in coeffs.items():
                if i - j > 0:
                    acc = acc - c * db.coefficient(i - j)
            if acc:
                coeffs[i] = acc * d0inv
        new_z = LaurentSeries.from_dict(ring, coeffs)
        new_beta = fp - (new_z * db + higher).part(1, None)
        if new_z == z and new_beta.agrees(beta):
            return LaurentSeries.t(ring) + new_z, new_beta
        beta, z = new_beta, new_z
    raise ConsistencyError("minus0*plus1 iteration did not settle by the nil index", f)


def _finish(series, n, strict):
    """Truncate an infinite factor at ``n``; strict targets must be reached."""
    if series.prec is None:
        return series.truncate(n) if n is not None else series
    if strict and series.prec < n:
        raise PrecisionError(f"result known to t^{series.prec}, requested t^{n}")
    if series.prec < 2:
        raise PrecisionError(f"input too coarse: result known only to t^{series.prec}")
    return series.truncate(n)


def inverse(phi, n=None):
    """Group inverse.

    Exact input factors as ``alpha * beta`` (``alpha`` a minus factor, both
    Laurent polynomials) and ``phi^-1~ = alpha^-1~ o beta^-1~`` needs only the
    exact nilpotent inverse and the reversion of a polynomial.  Otherwise the
    ``plus1*minus0`` factorization is used the same way.
    """
    f = phi.tilde
    ring = f.ring
    t = LaurentSeries.t(ring)
    if f.is_exact and f.part(1, None).degree == 1:
        # f = a t + z: invert a t + z by scaling then the nilpotent loop
        a = f.coefficient(1)
        g = compose(f, LaurentSeries.monomial(ring, 1, a.inverse()))
        K = _minus_inverse(g)
        return AutElement(compose(LaurentSeries.monomial(ring, 1, a.inverse()), K))
    strict = n is not None
    target = n if strict else default_target()
    if f.is_exact:
        minus, plus = _solve_minus0_plus1(f)
        K = _minus_inverse(minus)
        work = target + _slack(K) + 1
        r = reversion(plus, work)
        out = compose(K, r, work, strict=False)
    else:
        work = target + _slack(f)
        plus, minus = _solve_plus1_minus0(f, work)
        r = reversion(plus, work if plus.prec is None else min(work, plus.prec))
        out = compose(r, _minus_inverse(minus), work, strict=False)
    if not out.is_exact and out.prec < target and f.is_exact:
        raise PrecisionError(f"inverse known to t^{out.prec}, requested t^{target}")
    return AutElement(_finish(out, target, strict))


# --------------------------------------------------------------------------
# Decompositions


class DecompositionVariant(str, Enum):
    PLUS1_MINUS0 = "plus1*minus0"
    PLUS_MINUS = "plus*minus"
    MINUS0_PLUS1 = "minus0*plus1"
    MINUS_PLUS = "minus*plus"

    @classmethod
    def parse(cls, text):
        key = text.replace("·", "*").replace(" ", "")
        for v in cls:
            if v.value == key:
                return v
        raise ValueError(f"unknown decomposition variant {text!r}")


def _coeffs_zero_from(f, start):
    top = f.top
    return all(not any(f.vec(i)) for i in range(max(start, f.low), top))


def in_plus1(phi):
    """``a_1 t + a_2 t^2 + ...`` with ``a_1`` a unit."""
    f = phi.tilde
    return f.low >= 1


def in_plus(phi):
    """``a_0 + a_1 t + ...`` with ``a_0`` nilpotent."""
    return phi.tilde.low >= 0


def in_minus0(phi):
    """``a_-n t^-n + ... + a_0 + t`` with nilpotent ``a_i``."""
    f = phi.tilde
    return f.coefficient(1) == 1 and _coeffs_zero_from(f, 2) and f.is_exact


def in_minus(phi):
    """``a_-n t^-n + ... + a_-1 t^-1 + t`` with nilpotent ``a_i``."""
    return in_minus0(phi) and not phi.tilde.coefficient(0)


_MEMBERSHIP = {
    DecompositionVariant.PLUS1_MINUS0: (in_plus1, in_minus0),
    DecompositionVariant.PLUS_MINUS: (in_plus, in_minus),
    DecompositionVariant.MINUS0_PLUS1: (in_minus0, in_plus1),
    DecompositionVariant.MINUS_PLUS: (in_minus, in_plus),
}


def membership(variant):
    """Predicates ``(first, second)`` the factors of ``variant`` must satisfy."""
    return _MEMBERSHIP[DecompositionVariant(variant)]


def _shift_constant(plus, minus, first_is_plus):
    """Move the constant ``c`` of the minus factor into the plus factor."""
    ring = plus.ring
    c0 = minus.coefficient(0)
    if not c0:
        return plus, minus
    t = LaurentSeries.t(ring)
    c = LaurentSeries.constant(ring, c0)
    if first_is_plus:
        # beta~(alpha~) = (beta~ o (t - c)) o (alpha~ + c)
        return plus + c, compose(minus, t - c)
    # beta~(t + z) = (beta~ o (t + c)) (t + z - c)
    return compose(plus, t + c, plus.prec, strict=False), minus - c


def decompose(phi, variant, n=None, check=True):
    """Factor ``phi = alpha * beta`` with factors in the subgroups of ``variant``.

    The minus factors are Laurent polynomials and are returned exact.  The
    plus factor is known below ``t^n``; without ``n`` it is truncated at the
    working precision, or carries what an inexact input allows.
    """
    variant = DecompositionVariant(variant)
    f = phi.tilde
    strict = n is not None
    target = n if strict else default_target()
    if variant in (DecompositionVariant.PLUS1_MINUS0, DecompositionVariant.PLUS_MINUS):
        plus, minus = _solve_plus1_minus0(f, target + _slack(f))
        if variant is DecompositionVariant.PLUS_MINUS:
            plus, minus = _shift_constant(plus, minus, True)
        alpha, beta = plus, minus
    else:
        minus, plus = _solve_minus0_plus1(f)
        if variant is DecompositionVariant.MINUS_PLUS:
            plus, minus = _shift_constant(plus, minus, False)
        alpha, beta = minus, plus
    if f.is_exact and strict:
        for s in (alpha, beta):
            if s.prec is not None and s.prec < n:
                raise PrecisionError(f"factor known to t^{s.prec}, requested t^{n}")
    alpha = AutElement(_finish(alpha, target, strict))
    beta = AutElement(_finish(beta, target, strict))
    if check:
        p1, p2 = membership(variant)
        if not (p1(alpha) and p2(beta)):
            raise ConsistencyError(f"factors of {variant.value} fail the subgroup shapes",
                                   alpha, beta)
        back = mul(alpha, beta)
        if not back.agrees(phi, target):
            raise ConsistencyError("factors do not recompose to the input", alpha, beta)
    return alpha, beta
