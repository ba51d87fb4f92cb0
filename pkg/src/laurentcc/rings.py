"""Coefficient rings: Q or Z/p^k, extended by truncated nilpotent generators.

A ring ``Q[e;2,d;3]`` is ``Q[e, d] / (e^2, d^3)``.  Elements are stored densely
as a tuple of base scalars, one per monomial ``e^i d^j`` with ``i < 2, j < 3``,
so structural equality is ring equality.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

from gmpy2 import mpq

from . import kernels
from .errors import DescriptorError, NotAUnitError, ParseError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _prime_power(m):
    """Return ``(p, k)`` with ``m == p**k``, or ``None``."""
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (m, 1)


@dataclass(frozen=True)
class RingDescriptor:
    """``modulus=None`` selects the rationals."""

    modulus: int | None = None
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple((str(n), int(o)) for n, o in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.modulus is not None:
            if int(self.modulus) < 2:
                raise DescriptorError(f"modulus must be >= 2, got {self.modulus}")
            if _prime_power(int(self.modulus)) is None:
                # Z/m for composite m with two primes is a product ring
                raise DescriptorError(
                    f"Z/{self.modulus} has nontrivial idempotents; use a prime power")
        names = [n for n, _ in gens]
        if len(set(names)) != len(names):
            raise DescriptorError(f"duplicate generator names in {names}")
        for name, order in gens:
            if not _NAME.fullmatch(name) or name == "t":
                raise DescriptorError(f"invalid generator name {name!r}")
            if order < 2:
                raise DescriptorError(f"generator {name} needs order >= 2, got {order}")

    @property
    def is_rational(self):
        return self.modulus is None

    @classmethod
    def parse(cls, text):
        """Parse ``Q``, ``Z/8``, ``Q[e;2]``, ``Z/4[e1;2,e2;3]``."""
        s = text.replace(" ", "")
        m = re.fullmatch(r"(Q|Z/(\d+))(?:\[(.*)\])?", s)
        if m is None:
            raise ParseError(f"cannot parse ring descriptor {text!r}", 0)
        modulus = int(m.group(2)) if m.group(2) else None
        gens = []
        if m.group(3) is not None:
            for part in m.group(3).split(","):
                gm = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*);(\d+)", part)
                if gm is None:
                    raise ParseError(f"bad generator {part!r} in {text!r}",
                                     s.find(part))
                gens.append((gm.group(1), int(gm.group(2))))
        return cls(modulus, tuple(gens))

    def extend(self, *generators):
        return RingDescriptor(self.modulus, self.generators + tuple(generators))

    def __str__(self):
        base = "Q" if self.modulus is None else f"Z/{self.modulus}"
        if not self.generators:
            return base
        return base + "[" + ",".join(f"{n};{o}" for n, o in self.generators) + "]"


def make_ring(descriptor):
    """Return the (cached) ring for a descriptor or its text form."""
    if isinstance(descriptor, str):
        descriptor = RingDescriptor.parse(descriptor)
    return _make_ring(descriptor)


@lru_cache(maxsize=None)
def _make_ring(descriptor):
    return Ring(descriptor)


class Ring:
    """Exact arithmetic in one configured coefficient ring."""

    def __init__(self, descriptor):
        self.descriptor = descriptor
        self.mod = descriptor.modulus or 0
        self.names = tuple(n for n, _ in descriptor.generators)
        self.orders = tuple(o for _, o in descriptor.generators)
        self.monomials = tuple(itertools.product(*(range(o) for o in self.orders)))
        self.K = len(self.monomials)
        self._index = {e: i for i, e in enumerate(self.monomials)}
        table = []
        for i, a in enumerate(self.monomials):
            for j, b in enumerate(self.monomials):
                c = tuple(x + y for x, y in zip(a, b))
                k = self._index.get(c)
                if k is not None:
                    table.append((i, j, k))
        self.table = tuple(table)
        if self.mod:
            self.prime, self.prime_exp = _prime_power(self.mod)
        else:
            self.prime, self.prime_exp = 0, 1
        self._szero = 0 if self.mod else mpq(0)
        self.zero_vec = (self._szero,) * self.K
        self.zero = RingElement(self, self.zero_vec)
        self.one = self.scalar(1)
        # Nil = (p) + (generators); Nil^e != 0 iff e <= (k - 1) + sum(order - 1)
        self.nil_index = (self.prime_exp - 1) + sum(o - 1 for o in self.orders) + 1

    # construction ---------------------------------------------------------

    def base_scalar(self, x):
        if self.mod:
            if isinstance(x, Integral):
                return int(x) % self.mod
            x = Fraction(x) if not isinstance(x, (Fraction,)) else x
            if isinstance(x, Rational):
                den = int(x.denominator) % self.mod
                if math.gcd(den, self.mod) != 1:
                    raise NotAUnitError(f"{x.denominator} is not invertible mod {self.mod}")
                return int(x.numerator) * pow(den, -1, self.mod) % self.mod
            raise TypeError(f"cannot coerce {x!r} into Z/{self.mod}")
        if isinstance(x, (Integral, Rational)) or type(x).__name__ == "mpq":
            return mpq(x)
        if isinstance(x, str):
            return mpq(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into Q")

    def scalar(self, x):
        vec = list(self.zero_vec)
        vec[0] = self.base_scalar(x)
        return RingElement(self, tuple(vec))

    def gen(self, name):
        try:
            pos = self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a generator of {self.descriptor}") from None
        exps = tuple(1 if i == pos else 0 for i in range(len(self.names)))
        return self.monomial(exps)

    def gens(self):
        return {n: self.gen(n) for n in self.names}

    def monomial(self, exps, coeff=1):
        k = self._index.get(tuple(exps))
        if k is None:
            return self.zero
        vec = list(self.zero_vec)
        vec[k] = self.base_scalar(coeff)
        return RingElement(self, tuple(vec))

    def element(self, coefficients):
        """Build from ``{exponent-tuple: scalar}``; out-of-range monomials vanish."""
        vec = list(self.zero_vec)
        for exps, c in coefficients.items():
            k = self._index.get(tuple(exps))
            if k is not None:
                vec[k] = self.base_scalar(vec[k] + self.base_scalar(c))
        return RingElement(self, tuple(vec))

    def __call__(self, x):
        if isinstance(x, RingElement):
            return self.coerce(x)
        return self.scalar(x)

    def coerce(self, x):
        """Image of ``x`` under the natural map matching generators by name.

        Generators missing in the source map from 0, generators missing in
        the target are sent to 0, monomials beyond the target orders vanish.
        """
        if x.ring is self:
            return x
        src = x.ring
        if src.mod:
            if not self.mod or src.mod % self.mod:
                raise TypeError(f"no ring map {src.descriptor} -> {self.descriptor}")
        elif self.mod:
            raise TypeError(f"no ring map {src.descriptor} -> {self.descriptor}")
        pos = [self.names.index(n) if n in self.names else None for n in src.names]
        vec = list(self.zero_vec)
        for exps, c in zip(src.monomials, x.vec):
            if not c:
                continue
            target = [0] * len(self.names)
            dead = False
            for e, p in zip(exps, pos):
                if e == 0:
                    continue
                if p is None:
                    dead = True
                    break
                target[p] = e
            if dead:
                continue
            k = self._index.get(tuple(target))
            if k is not None:
                vec[k] = self.base_scalar(vec[k] + self.base_scalar(c))
        return RingElement(self, tuple(vec))

    def from_vec(self, vec):
        return RingElement(self, vec)

    # vector level helpers used by series code -------------------------------

    def vmul(self, a, b):
        return kernels.vec_mul(a, b, self.table, self.mod)

    def vadd(self, a, b):
        if self.mod:
            m = self.mod
            return tuple([(x + y) % m for x, y in zip(a, b)])
        return tuple([x + y for x, y in zip(a, b)])

    def vsub(self, a, b):
        if self.mod:
            m = self.mod
            return tuple([(x - y) % m for x, y in zip(a, b)])
        return tuple([x - y for x, y in zip(a, b)])

    def vneg(self, a):
        if self.mod:
            m = self.mod
            return tuple([-x % m for x in a])
        return tuple([-x for x in a])

    def vscale(self, c, a):
        """Multiply a vector by an (already coerced) base scalar."""
        if self.mod:
            m = self.mod
            return tuple([c * x % m for x in a])
        return tuple([c * x for x in a])

    # queries ---------------------------------------------------------------

    def base_is_unit(self, c):
        if self.mod:
            return c % self.prime != 0
        return c != 0

    def base_is_nilpotent(self, c):
        if self.mod:
            return c % self.prime == 0
        return c == 0

    def base_inverse(self, c):
        if not self.base_is_unit(c):
            raise NotAUnitError(f"{c} is not a unit of the base of {self.descriptor}")
        if self.mod:
            return pow(int(c), -1, self.mod)
        return 1 / mpq(c)

    @property
    def is_q_algebra(self):
        return not self.mod

    @property
    def is_reduced(self):
        return not self.orders and self.prime_exp == 1

    def extend(self, *generators):
        return make_ring(self.descriptor.extend(*generators))

    def sampler(self, seed=0, height=3, density=0.5):
        return RingSampler(self, seed, height=height, density=density)

    def __repr__(self):
        return f"Ring({self.descriptor})"

    def __str__(self):
        return str(self.descriptor)

    def __reduce__(self):
        return (make_ring, (self.descriptor,))


class RingElement:
    """Immutable element of a :class:`Ring`."""

    __slots__ = ("ring", "vec")

    def __init__(self, ring, vec):
        self.ring = ring
        self.vec = vec

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._other(other)
        return RingElement(self.ring, self.ring.vadd(self.vec, other.vec))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return RingElement(self.ring, self.ring.vsub(self.vec, other.vec))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return RingElement(self.ring, self.ring.vneg(self.vec))

    def __mul__(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
            return RingElement(self.ring, self.ring.vmul(self.vec, other.vec))
        c = self.ring.base_scalar(other)
        return RingElement(self.ring, self.ring.vscale(c, self.vec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring is other.ring and self.vec == other.vec
        try:
            return self.vec == self.ring.scalar(other).vec
        except (TypeError, NotAUnitError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self.vec))

    def __bool__(self):
        return any(self.vec)

    @property
    def constant(self):
        return self.vec[0]

    @property
    def coefficients(self):
        """Sparse view ``{exponents: scalar}`` without zero entries."""
        return {e: c for e, c in zip(self.ring.monomials, self.vec) if c}

    def is_unit(self):
        return self.ring.base_is_unit(self.vec[0])

    def is_nilpotent(self):
        return self.ring.base_is_nilpotent(self.vec[0])

    def inverse(self):
        ring = self.ring
        c0 = self.vec[0]
        if not ring.base_is_unit(c0):
            raise NotAUnitError(f"{self} is not a unit of {ring.descriptor}")
        inv0 = ring.base_inverse(c0)
        # x = c0 (1 + n) with n nilpotent; 1/x = inv0 * sum (-n)^k
        n = (self - ring.scalar(c0)) * inv0
        term = ring.one
        total = ring.one
        for _ in range(ring.nil_index):
            term = -(term * n)
            if not term:
                break
            total = total + term
        return total * inv0

    def nilpotency_order(self):
        """Smallest ``e >= 1`` with ``x**e == 0``, or ``None``."""
        if not self.is_nilpotent():
            return None
        power = self
        for e in range(1, self.ring.nil_index + 1):
            if not power:
                return e
            power = power * self
        raise AssertionError("nil_index bound violated")  # pragma: no cover

    def __repr__(self):
        return f"RingElement({self.ring.descriptor}, {render_element(self)})"

    def __str__(self):
        return render_element(self)


def nilpotency_order(x):
    return x.nilpotency_order()


def invert(x):
    return x.inverse()


def render_scalar(c):
    if type(c).__name__ == "mpq":
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render_element(x):
    """Canonical text such as ``1 + 4*e`` or ``-1/2*e*d^2``."""
    ring = x.ring
    parts = []
    for exps, c in zip(ring.monomials, x.vec):
        if not c:
            continue
        mono = "*".join(n if e == 1 else f"{n}^{e}"
                        for n, e in zip(ring.names, exps) if e)
        cs = render_scalar(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RingSampler:
    """Seeded random elements; identical seeds give identical streams."""

    def __init__(self, ring, seed=0, height=3, density=0.5):
        self.ring = ring
        self.rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        self.height = height
        self.density = density

    def scalar(self, nonzero=False):
        ring, rng, h = self.ring, self.rng, self.height
        while True:
            if ring.mod:
                c = rng.randrange(ring.mod)
            else:
                c = mpq(rng.randint(-h, h), rng.randint(1, h))
            if c or not nonzero:
                return c

    def element(self):
        ring = self.ring
        vec = [ring._szero] * ring.K
        vec[0] = self.scalar()
        for k in range(1, ring.K):
            if self.rng.random() < self.density:
                vec[k] = self.scalar()
        return RingElement(ring, tuple(vec))

    def nilpotent(self, nonzero=False):
        ring = self.ring
        if ring.is_reduced:
            return ring.zero
        while True:
            x = self.element()
            c0 = x.vec[0]
            c0 = (c0 - c0 % ring.prime) % ring.mod if ring.mod else ring._szero
            vec = (c0,) + x.vec[1:]
            y = RingElement(ring, vec)
            if y or not nonzero:
                return y

    def unit(self):
        ring = self.ring
        while True:
            x = self.element()
            if x.is_unit():
                return x
