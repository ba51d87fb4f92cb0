"""Laurent series over a configured ring with tracked absolute precision.

A series stores a dense run of coefficient vectors starting at ``low`` and an
absolute precision ``prec``: every coefficient of index ``< prec`` is known,
nothing above is.  ``prec=None`` means the series is exact (a Laurent
polynomial).  The zero series with finite precision has ``low == prec``.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from math import factorial

from . import kernels
from .errors import (ConsistencyError, NotAUnitError, PrecisionError,
                     UnsupportedError, ValidationError)
from .rings import RingElement

DEFAULT_PRECISION = 32

_precision = contextvars.ContextVar("laurentcc_precision", default=DEFAULT_PRECISION)


def working_precision():
    """Relative precision used when a caller does not ask for a target."""
    return _precision.get()


@contextlib.contextmanager
def precision(n):
    """Temporarily change the default relative working precision."""
    token = _precision.set(int(n))
    try:
        yield
    finally:
        _precision.reset(token)


def _min_prec(*precs):
    finite = [p for p in precs if p is not None]
    return min(finite) if finite else None


def _binom(i, m):
    """Binomial coefficient ``i choose m`` for any integer ``i`` and ``m >= 0``."""
    num = 1
    for k in range(m):
        num *= i - k
    return num // factorial(m)


class LaurentSeries:
    __slots__ = ("ring", "low", "c", "prec")

    def __init__(self, ring, low, coeffs, prec=None):
        """Build and canonicalize; ``coeffs[k]`` is the vector at ``low + k``."""
        coeffs = list(coeffs)
        if prec is not None:
            keep = max(0, prec - low)
            del coeffs[keep:]
        while coeffs and not any(coeffs[-1]):
            coeffs.pop()
        start = 0
        while start < len(coeffs) and not any(coeffs[start]):
            start += 1
        if start == len(coeffs):
            low = prec if prec is not None else 0
            coeffs = ()
        else:
            low += start
            coeffs = tuple(coeffs[start:])
        self.ring = ring
        self.low = low
        self.c = coeffs
        self.prec = prec

    # construction -------------------------------------------------------------

    @classmethod
    def from_dict(cls, ring, coefficients, prec=None):
        """``coefficients`` maps index to a ring element or base scalar."""
        if not coefficients:
            return cls(ring, 0, (), prec)
        lo, hi = min(coefficients), max(coefficients)
        vecs = [ring.zero_vec] * (hi - lo + 1)
        for i, x in coefficients.items():
            x = x if isinstance(x, RingElement) else ring.scalar(x)
            vecs[i - lo] = ring.vadd(vecs[i - lo], x.vec)
        return cls(ring, lo, vecs, prec)

    @classmethod
    def monomial(cls, ring, k, coeff=1):
        x = coeff if isinstance(coeff, RingElement) else ring.scalar(coeff)
        return cls(ring, k, (x.vec,))

    @classmethod
    def constant(cls, ring, coeff):
        return cls.monomial(ring, 0, coeff)

    @classmethod
    def t(cls, ring):
        return cls.monomial(ring, 1)

    @classmethod
    def one(cls, ring):
        return cls.monomial(ring, 0)

    @classmethod
    def zero(cls, ring, prec=None):
        return cls(ring, 0 if prec is None else prec, (), prec)

    # basic queries ----------------------------------------------------------

    @property
    def lowest(self):
        return self.low

    @property
    def is_exact(self):
        return self.prec is None

    @property
    def degree(self):
        """Highest stored index (``low - 1`` for zero)."""
        return self.low + len(self.c) - 1

    @property
    def top(self):
        """One past the last index whose coefficient is stored or known."""
        return self.prec if self.prec is not None else self.low + len(self.c)

    def is_zero(self):
        return not self.c

    def vec(self, i):
        if self.prec is not None and i >= self.prec:
            raise PrecisionError(f"coefficient of t^{i} is unknown (precision {self.prec})")
        k = i - self.low
        if 0 <= k < len(self.c):
            return self.c[k]
        return self.ring.zero_vec

    def coefficient(self, i):
        return RingElement(self.ring, self.vec(i))

    __getitem__ = coefficient

    @property
    def coefficients(self):
        """Nonzero coefficients as ``{index: RingElement}``."""
        return {self.low + k: RingElement(self.ring, v)
                for k, v in enumerate(self.c) if any(v)}

    def dense(self, lo, hi):
        """Coefficient vectors for indices ``lo <= i < hi`` (zeros outside)."""
        z = self.ring.zero_vec
        out = []
        for i in range(lo, hi):
            k = i - self.low
            out.append(self.c[k] if 0 <= k < len(self.c) else z)
        return out

    # structural operations --------------------------------------------------

    def truncate(self, n):
        """Forget coefficients of index ``>= n``."""
        if n is None:
            return self
        if self.prec is not None and self.prec <= n:
            return self
        if self.prec is None and self.degree < n and self.c:
            return self
        if self.prec is None and not self.c:
            return self
        return LaurentSeries(self.ring, self.low, self.c, n)

    def shift(self, k):
        """Multiply by ``t^k``."""
        prec = None if self.prec is None else self.prec + k
        return LaurentSeries(self.ring, self.low + k, self.c, prec)

    def part(self, lo=None, hi=None):
        """Terms with ``lo <= index < hi``; exact if ``hi`` is within precision."""
        start = self.low if lo is None else max(lo, self.low)
        end = self.top if hi is None else min(hi, self.top)
        if hi is None or (self.prec is not None and hi > self.prec):
            prec = self.prec
        else:
            prec = None
        if end <= start:
            return LaurentSeries(self.ring, start, (), prec) if prec is not None \
                else LaurentSeries.zero(self.ring)
        return LaurentSeries(self.ring, start, self.c[start - self.low:end - self.low], prec)

    def negative_part(self):
        return self.part(None, 0)

    def derivative(self):
        ring = self.ring
        vecs = [ring.vscale(ring.base_scalar(self.low + k), v) for k, v in enumerate(self.c)]
        prec = None if self.prec is None else self.prec - 1
        return LaurentSeries(ring, self.low - 1, vecs, prec)

    def change_ring(self, ring):
        """Image under the natural ring map ``Ring.coerce``."""
        vecs = [ring.coerce(RingElement(self.ring, v)).vec for v in self.c]
        return LaurentSeries(ring, self.low, vecs, self.prec)

    def map_coefficients(self, fn):
        ring = self.ring
        vecs = [fn(RingElement(ring, v)).vec for v in self.c]
        return LaurentSeries(ring, self.low, vecs, self.prec)

    # arithmetic ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.ring is not self.ring:
                raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return LaurentSeries.constant(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        ring = self.ring
        prec = _min_prec(self.prec, other.prec)
        if not self.c:
            return other.truncate(prec) if self.prec is None else LaurentSeries(
                ring, other.low, other.c, prec)
        if not other.c:
            return LaurentSeries(ring, self.low, self.c, prec)
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.c), other.low + len(other.c))
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return LaurentSeries(ring, lo, (), prec)
        a = self.dense(lo, hi)
        b = other.dense(lo, hi)
        return LaurentSeries(ring, lo, [ring.vadd(x, y) for x, y in zip(a, b)], prec)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return LaurentSeries(ring, self.low, [ring.vneg(v) for v in self.c], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, x):
        """Multiply by a ring element or base scalar."""
        ring = self.ring
        if isinstance(x, RingElement):
            vecs = [ring.vmul(x.vec, v) for v in self.c]
        else:
            s = ring.base_scalar(x)
            vecs = [ring.vscale(s, v) for v in self.c]
        return LaurentSeries(ring, self.low, vecs, self.prec)

    def mul(self, other, n=None):
        """Product, optionally truncated at absolute index ``n``."""
        other = self._coerce(other)
        ring = self.ring
        if (not self.c and self.prec is None) or (not other.c and other.prec is None):
            return LaurentSeries.zero(ring)
        prec = _min_prec(
            None if self.prec is None else self.prec + other.low,
            None if other.prec is None else other.prec + self.low)
        prec = _min_prec(prec, n)
        lo = self.low + other.low
        if prec is None:
            count = len(self.c) + len(other.c) - 1
        else:
            count = prec - lo
        if count <= 0 or not self.c or not other.c:
            return LaurentSeries(ring, lo, (), prec) if prec is not None \
                else LaurentSeries.zero(ring)
        vecs = kernels.series_mul(self.c, other.c, ring.table, ring.K, ring.mod, count)
        result = LaurentSeries(ring, lo, vecs, prec)
        if n is not None and result.prec is None:
            result = result.truncate(n)
        return result

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return invert_unit(self) ** (-k)
        result = LaurentSeries.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * invert_unit(other)
        x = other if isinstance(other, RingElement) else self.ring.scalar(other)
        return self.scale(x.inverse())

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentSeries):
            return (self.ring is other.ring and self.prec == other.prec
                    and self.low == other.low and self.c == other.c)
        if isinstance(other, (int, RingElement)):
            return self == LaurentSeries.constant(self.ring, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self.low, self.c, self.prec))

    def agrees(self, other, n=None):
        """Equal on every index known to both (and below ``n`` if given)."""
        other = self._coerce(other)
        hi = _min_prec(self.prec, other.prec, n)
        if hi is None:
            return self.low == other.low and self.c == other.c
        lo = min(self.low, other.low)
        return self.dense(lo, hi) == other.dense(lo, hi)

    def __repr__(self):
        from .parsing import render_series
        return f"LaurentSeries({self.ring.descriptor}, {render_series(self)})"

    def __str__(self):
        from .parsing import render_series
        return render_series(self)


# --------------------------------------------------------------------------
# Substitution


def is_auto_shaped(g):
    try:
        check_auto_shape(g)
    except (ValidationError, PrecisionError):
        return False
    return True


def check_auto_shape(g):
    """Raise unless ``g`` has nilpotent coefficients below ``t`` and a unit at ``t``."""
    ring = g.ring
    if g.prec is not None and g.prec < 2:
        raise PrecisionError(f"coefficient of t is unknown (precision {g.prec})")
    for i in range(g.low, 1):
        if not ring.base_is_nilpotent(g.vec(i)[0]):
            raise ValidationError(f"coefficient of t^{i} is not nilpotent")
    if not ring.base_is_unit(g.vec(1)[0]):
        raise ValidationError("coefficient of t^1 is not a unit")


def _powers_until_zero(x, limit):
    """``[1, x, x^2, ...]`` stopping before the first zero power."""
    powers = [LaurentSeries.one(x.ring)]
    while len(powers) <= limit:
        nxt = powers[-1] * x
        if nxt.is_zero():
            return powers
        powers.append(nxt)
    raise ConsistencyError("nilpotent part did not vanish by the nil index", x)


def hasse(f, m):
    """``sum_i binom(i, m) b_i t^(i-m)``, so ``f(t+s) = sum_m (H_m f)(t) s^m``."""
    ring = f.ring
    vecs = [ring.vscale(ring.base_scalar(_binom(f.low + k, m)), v)
            for k, v in enumerate(f.c)]
    prec = None if f.prec is None else f.prec - m
    return LaurentSeries(ring, f.low - m, vecs, prec)


def _power_series_inverse(v, count, ring):
    """Inverse of a power series given by vectors ``v`` (unit constant), ``count`` terms.

    Newton's step ``y <- y (2 - v y)`` doubles the number of correct terms.
    """
    table, K, mod = ring.table, ring.K, ring.mod
    y = [RingElement(ring, v[0]).inverse().vec]
    two = ring.scalar(2).vec
    m = 1
    while m < count:
        m = min(2 * m, count)
        e = kernels.series_mul(list(v[:m]), y, table, K, mod, m)
        e = [ring.vneg(x) for x in e] + [ring.zero_vec] * (m - len(e))
        e[0] = ring.vadd(e[0], two)
        y = kernels.series_mul(y, e, table, K, mod, m)
    return y[:count]


def _compose_plus(h, v, vprec, target):
    """``h(t * v(t))`` below index ``target`` where ``v`` is a unit power series.

    ``v`` is a list of vectors (relative precision ``vprec``, ``None`` for
    exact).  Returns a :class:`LaurentSeries` with honest precision.
    """
    ring = h.ring
    if not h.c:
        return LaurentSeries(ring, h.low, (), h.prec) if h.prec is not None \
            else LaurentSeries.zero(ring)
    monomial = vprec is None and len(v) == 1
    if monomial:
        a = RingElement(ring, v[0])
        ainv = a.inverse()
        vecs = []
        for k, c in enumerate(h.c):
            i = h.low + k
            p = a ** i if i >= 0 else ainv ** (-i)
            vecs.append(ring.vmul(c, p.vec))
        return LaurentSeries(ring, h.low, vecs, h.prec)
    prec = _min_prec(h.prec, target, None if vprec is None else h.low + vprec)
    hi = prec
    lo = h.low
    if hi - lo <= 0:
        return LaurentSeries(ring, hi, (), hi)
    table, K, mod = ring.table, ring.K, ring.mod
    top = min(h.top, hi)
    total = LaurentSeries(ring, lo, (), hi)
    start = max(lo, 0)
    if top > start:
        # t^start v^start * sum_k h_(start+k) (t v)^k, the sum by Horner
        count = hi - start
        P = [h.vec(top - 1)]
        for i in range(top - 2, start - 1, -1):
            P = [h.vec(i)] + kernels.series_mul(P, v, table, K, mod, count - 1)
        for _ in range(start):
            P = kernels.series_mul(P, v, table, K, mod, count)
        total = total + LaurentSeries(ring, start, P, hi)
    if lo < 0:
        # t^J * sum_(j=1..J) h_-j (t^-1 w)^j = w * (h_-J + w (...) + h_-1 t^(J-1)), w = 1/v
        J = -lo
        count = hi - lo
        w = _power_series_inverse(v, count, ring)
        S = [h.vec(-J)]
        for j in range(J - 1, 0, -1):
            S = kernels.series_mul(S, w, table, K, mod, count)
            if -j < top:
                c = h.vec(-j)
                if any(c):
                    S = S + [ring.zero_vec] * (J - j + 1 - len(S))
                    S[J - j] = ring.vadd(S[J - j], c)
        S = kernels.series_mul(S, w, table, K, mod, count)
        total = total + LaurentSeries(ring, lo, S, hi)
    return total


def compose(f, g, n=None, strict=True):
    """Substitute ``g`` (shape of a continuous automorphism) into ``f``.

    ``g`` is split as ``g_plus + g_minus`` with ``g_plus = a_1 t + ...`` and
    ``g_minus`` the nilpotent terms of index ``<= 0``, and
    ``f(g) = sum_m g_minus^m * (H_m f)(g_plus)``, a finite sum.  ``n`` is the
    requested absolute precision; a ``PrecisionError`` is raised if the
    inputs cannot deliver it, unless ``strict`` is false, in which case the
    result carries the precision actually reached.
    """
    if g.ring is not f.ring:
        raise TypeError(f"ring mismatch: {f.ring} vs {g.ring}")
    check_auto_shape(g)
    ring = f.ring
    gm = g.part(None, 1)
    depth = max(0, -gm.low) if gm.c else 0
    v = list(g.c[1 - g.low:]) if g.low <= 1 else [ring.zero_vec] * (g.low - 1) + list(g.c)
    vprec = None if g.prec is None else g.prec - 1
    while len(v) > 1 and not any(v[-1]):
        v.pop()
    monomial = vprec is None and len(v) == 1
    if not f.c and f.prec is None:
        return LaurentSeries.zero(ring)
    gm_pows = _powers_until_zero(gm, ring.nil_index)

    if n is None and f.prec is None and g.prec is None and not monomial and f.low >= 0:
        # polynomial in g: Horner in exact arithmetic
        acc = LaurentSeries.zero(ring)
        for i in range(f.degree, f.low - 1, -1):
            acc = acc * g + RingElement(ring, f.vec(i))
        if f.low > 0:
            acc = acc * (g ** f.low)
        return acc

    if n is not None:
        target = n
    else:
        est = min(f.low - m - m * depth for m in range(len(gm_pows)))
        target = est + working_precision()
    total = None
    for m, gp in enumerate(gm_pows):
        hm = hasse(f, m)
        if not hm.c and hm.prec is None:
            continue
        inner = _compose_plus(hm, v, vprec, target + m * depth)
        term = gp * inner
        total = term if total is None else total + term
    if total is None:
        return LaurentSeries.zero(ring)
    if not monomial:
        total = total.truncate(target)
    if n is not None:
        if strict and total.prec is not None and total.prec < n:
            raise PrecisionError(
                f"composition known to t^{total.prec}, requested t^{n}")
        total = total.truncate(n)
    return total


# --------------------------------------------------------------------------
# Residue


def residue(f):
    """Coefficient of ``t^-1``."""
    return f.coefficient(-1)


def residue_pairing(f, g):
    """``res(f dg)``: the ``t^-1`` coefficient of ``f * g'``."""
    return residue(f * g.derivative())


# --------------------------------------------------------------------------
# Units


def unit_order(f):
    """Index of the first unit coefficient; all lower ones must be nilpotent."""
    ring = f.ring
    i = f.low
    while True:
        if f.prec is not None and i >= f.prec:
            raise PrecisionError(f"no unit coefficient below t^{f.prec}")
        if f.prec is None and i > f.degree:
            raise NotAUnitError("series is not a unit: no unit coefficient")
        c = f.vec(i)[0]
        if ring.base_is_unit(c):
            return i
        if not ring.base_is_nilpotent(c):
            raise NotAUnitError(f"coefficient of t^{i} is neither nilpotent nor a unit")
        i += 1


def is_unit(f):
    try:
        unit_order(f)
    except NotAUnitError:
        return False
    return True


def _inverse_nil_poly(q):
    """Inverse of ``1 + x`` with ``x`` an exact Laurent polynomial, nilpotent coefficients."""
    x = q - 1
    out = LaurentSeries.one(q.ring)
    term = LaurentSeries.one(q.ring)
    for _ in range(q.ring.nil_index):
        term = -(term * x)
        if term.is_zero():
            return out
        out = out + term
    raise ConsistencyError("nilpotent geometric series did not terminate", q)


@dataclass(frozen=True)
class UnitSplit:
    """``f = t^nu * a0 * neg * pos`` with ``neg = 1 + O(t^-1)`` exact, ``pos = 1 + O(t)``."""

    nu: int
    a0: RingElement
    neg: LaurentSeries
    pos: LaurentSeries


def unit_split(f):
    """Separate a unit into its negative, constant, monomial and positive parts."""
    ring = f.ring
    nu = unit_order(f)
    c = f.coefficient(nu)
    h = f.shift(-nu).scale(c.inverse())
    depth = max(0, -h.low)
    e = ring.nil_index
    cap = depth * e * e + e + 2
    acc = LaurentSeries.one(ring)
    for _ in range(cap):
        if h.prec is not None and h.prec < 1:
            raise PrecisionError("precision exhausted while separating the negative part")
        neg = h.part(None, 0)
        if neg.is_zero():
            break
        h0 = h.coefficient(0)
        q = neg.scale(h0.inverse()) + 1
        h = h * _inverse_nil_poly(q)
        acc = acc * q
    else:
        raise ConsistencyError("negative part did not vanish within the iteration cap", f)
    if h.prec is not None and h.prec < 1:
        raise PrecisionError("precision exhausted while separating the negative part")
    h0 = h.coefficient(0)
    pos = h.scale(h0.inverse())
    return UnitSplit(nu, c * h0, acc, pos)


@dataclass(frozen=True)
class UnitFactorization:
    """``prod_{i<0}(1 - a_i t^i) * a0 * t^nu * prod_{i>0}(1 - a_i t^i)``.

    ``positive`` holds every index ``1..limit`` (zero coefficients included),
    ``negative`` only nonzero atoms.
    """

    negative: tuple
    a0: RingElement
    nu: int
    positive: tuple
    limit: int

    def atom(self, i):
        """Coefficient ``a_i``; zero where no factor is present."""
        ring = self.a0.ring
        if i < 0:
            for j, a in self.negative:
                if j == i:
                    return a
            return ring.zero
        if i == 0:
            return self.a0
        if i > self.limit:
            raise PrecisionError(f"positive factors were peeled only to index {self.limit}")
        return self.positive[i - 1][1]

    def reassemble(self, n):
        """Product of the factors below absolute index ``n``."""
        ring = self.a0.ring
        out = LaurentSeries.monomial(ring, self.nu, self.a0)
        for i, a in self.negative:
            out = out * (1 - LaurentSeries.monomial(ring, i, a))
        for i, a in self.positive:
            if a:
                out = out.mul(1 - LaurentSeries.monomial(ring, i, a), n)
        return out.truncate(n)


def _peel_negative(neg):
    ring = neg.ring
    atoms = []
    m = neg
    k = 1
    while not (m - 1).is_zero():
        a = -m.coefficient(-k)
        if a:
            factor = 1 - LaurentSeries.monomial(ring, -k, a)
            m = m * _inverse_nil_poly(factor)
            atoms.append((-k, a))
        k += 1
        if k > 1 + (ring.nil_index + 1) * max(1, -neg.low) * ring.nil_index:
            raise ConsistencyError("negative atoms did not terminate", neg)
    return tuple(atoms)


def _peel_positive(pos, limit):
    ring = pos.ring
    if pos.prec is not None and pos.prec <= limit:
        raise PrecisionError(
            f"positive factors up to t^{limit} need precision {limit + 1}, have {pos.prec}")
    n = limit + 1
    q = pos.truncate(n)
    atoms = []
    for i in range(1, n):
        a = -q.coefficient(i)
        atoms.append((i, a))
        if a:
            # divide by (1 - a t^i) = multiply by sum_k a^k t^{ik}
            geo = {i * k: a ** k for k in range(0, (n - 1) // i + 1)}
            q = q.mul(LaurentSeries.from_dict(ring, geo), n)
    return tuple(atoms)


def unit_decompose(f, limit=None):
    """Factor a unit into atoms ``1 - a_i t^i``, positive ones up to ``limit``."""
    split = unit_split(f)
    if limit is None:
        limit = working_precision()
    negative = _peel_negative(split.neg)
    positive = _peel_positive(split.pos, limit)
    return UnitFactorization(negative, split.a0, split.nu, positive, limit)


def invert_unit(f, n=None):
    """Multiplicative inverse, to absolute precision ``n`` when it is infinite."""
    ring = f.ring
    split = unit_split(f)
    ninv = _inverse_nil_poly(split.neg)
    lowest = -split.nu + ninv.low
    if n is None:
        n = lowest + working_precision()
        strict = False
    else:
        strict = True
    pos = split.pos
    if pos.prec is None and pos.degree == 0:
        pinv = pos
    else:
        need = n + split.nu - ninv.low
        if pos.prec is not None:
            need = min(need, pos.prec)
        count = max(need, 1)
        vecs = _power_series_inverse(list(pos.dense(0, count)), count, ring)
        pinv = LaurentSeries(ring, 0, vecs, count)
    out = (ninv * pinv).scale(split.a0.inverse()).shift(-split.nu)
    if out.prec is not None or strict:
        if strict and out.prec is not None and out.prec < n:
            raise PrecisionError(f"inverse known to t^{out.prec}, requested t^{n}")
        out = out.truncate(n)
    return out


# --------------------------------------------------------------------------
# Logarithm and exponential


def _require_q_algebra(ring, what):
    if not ring.is_q_algebra:
        raise UnsupportedError(f"{what} needs a Q-algebra, {ring.descriptor} is not one")


def in_sharp(f):
    """``f - 1`` has nilpotent coefficients in every degree ``<= 0``."""
    ring = f.ring
    if f.prec is not None and f.prec < 1:
        return False
    for i in range(min(f.low, 0), 1):
        c = f.vec(i)[0]
        if i == 0:
            c = c - 1
        if not ring.base_is_nilpotent(c):
            return False
    return True


def log_nilpotent(x):
    """``log(1 + x)`` for a nilpotent ring element (finite sum)."""
    ring = x.ring
    _require_q_algebra(ring, "log")
    out = ring.zero
    power = ring.one
    for m in range(1, ring.nil_index + 1):
        power = power * x
        if not power:
            return out
        out = out + power * (ring.scalar(1) / m if m % 2 else ring.scalar(-1) / m)
    raise ConsistencyError("log of nilpotent did not terminate", x)


def exp_nilpotent(x):
    """``exp(x)`` for a nilpotent ring element (finite sum)."""
    ring = x.ring
    _require_q_algebra(ring, "exp")
    if not x.is_nilpotent():
        raise ValidationError(f"exp needs a nilpotent argument, got {x}")
    out = ring.one
    power = ring.one
    for m in range(1, ring.nil_index + 1):
        power = power * x
        if not power:
            return out
        out = out + power * ring.scalar(1) / factorial(m)
    raise ConsistencyError("exp of nilpotent did not terminate", x)


def _log_one_plus(y, n):
    """``log(1 + y)`` for ``y`` nilpotent-coefficient Laurent polynomial or ``O(t)``."""
    ring = y.ring
    out = LaurentSeries.zero(ring)
    power = LaurentSeries.one(ring)
    m = 0
    limit = ring.nil_index if y.low <= 0 else max(n, 1)
    while True:
        m += 1
        power = power.mul(y, n) if n is not None else power * y
        if power.is_zero():
            break
        if m > limit:
            raise ConsistencyError("log series did not terminate", y)
        coeff = ring.scalar(1) / m if m % 2 else ring.scalar(-1) / m
        out = out + power.scale(coeff)
    return out if n is None or out.prec is None else out.truncate(n)


def log_sharp(f, n=None):
    """``log f`` for ``f`` in the sharp subgroup, to absolute precision ``n``.

    Computed as ``log(neg) + log(a0) + log(pos)`` over the unit split; the
    first two are finite sums, the last lives in ``t A[[t]]``.
    """
    ring = f.ring
    _require_q_algebra(ring, "log_sharp")
    if not in_sharp(f):
        raise ValidationError("log_sharp needs f - 1 nilpotent in degrees <= 0")
    split = unit_split(f)
    if n is None:
        n = working_precision()
    out = _log_one_plus(split.neg - 1, None)
    out = out + LaurentSeries.constant(ring, log_nilpotent(split.a0 - 1))
    y = split.pos - 1
    if not y.is_zero() or y.prec is not None:
        out = out + _log_one_plus(y, n)
    return out


def exp_series(x, n=None):
    """``exp(x)`` for ``x`` with nilpotent coefficients in degrees ``<= 0``."""
    ring = x.ring
    _require_q_algebra(ring, "exp_series")
    for i in range(min(x.low, 1), 1):
        if not ring.base_is_nilpotent(x.vec(i)[0]):
            raise ValidationError(f"exp needs a nilpotent coefficient at t^{i}")
    if n is None:
        n = working_precision()
    xm = x.part(None, 1)
    xp = x.part(1, None)
    out = LaurentSeries.one(ring)
    power = LaurentSeries.one(ring)
    for m in range(1, ring.nil_index + 1):
        power = power * xm
        if power.is_zero():
            break
        out = out + power.scale(ring.scalar(1) / factorial(m))
    if xp.is_zero() and xp.prec is None:
        return out
    pexp = LaurentSeries.one(ring)
    power = LaurentSeries.one(ring)
    for m in range(1, max(n, 1)):
        power = power.mul(xp, n)
        if power.is_zero():
            break
        pexp = pexp + power.scale(ring.scalar(1) / factorial(m))
    return (out * pexp.truncate(n)).truncate(n)
