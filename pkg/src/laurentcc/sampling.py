"""Seeded samplers for units, automorphisms and derivations.

Every sampler draws Laurent polynomials, so sampled inputs are exact.
"""

from __future__ import annotations

import random

from .aut import AutElement
from .rings import RingSampler
from .series import LaurentSeries


class Sampler:
    """Random objects over one ring from a single seeded stream."""

    def __init__(self, ring, seed=0, height=3, density=0.5):
        self.ring = ring
        self.rng = random.Random(seed)
        self.elements = RingSampler(ring, self.rng, height, density)

    def _poly(self, lo, hi, nilpotent_below=None):
        """Random coefficients on ``lo <= i <= hi``; nilpotent for ``i < nilpotent_below``."""
        coeffs = {}
        for i in range(lo, hi + 1):
            if nilpotent_below is not None and i < nilpotent_below:
                x = self.elements.nilpotent()
            else:
                x = self.elements.element()
            if x:
                coeffs[i] = x
        return coeffs

    def unit(self, depth=2, degree=3, nu_range=(-1, 1)):
        """``t^nu (a0 + nilpotent terms of negative index + power series part)``."""
        ring = self.ring
        nu = self.rng.randint(*nu_range)
        coeffs = self._poly(-depth, degree, nilpotent_below=0)
        coeffs[0] = self.elements.unit()
        return LaurentSeries.from_dict(ring, coeffs).shift(nu)

    def sharp_unit(self, depth=2, degree=3):
        """A unit ``1 + (nilpotent at index <= 0) + (terms of positive index)``."""
        ring = self.ring
        coeffs = self._poly(-depth, degree, nilpotent_below=1)
        coeffs[0] = coeffs.get(0, ring.zero) + ring.one
        return LaurentSeries.from_dict(ring, coeffs)

    def aut(self, kind="general", depth=1, degree=3):
        """Random automorphism whose tilde is a Laurent polynomial.

        ``kind`` is ``general``, ``plus1`` (power series without constant term),
        ``plus`` (power series), ``minus0`` (``t`` plus nilpotent terms of index
        ``<= 0``) or ``minus`` (as ``minus0`` without constant term).
        """
        ring = self.ring
        if kind in ("general", "plus", "plus1"):
            lo = {"general": -depth, "plus": 0, "plus1": 2}[kind]
            coeffs = self._poly(lo, degree, nilpotent_below=1) if lo <= degree else {}
            coeffs[1] = self.elements.unit()
        elif kind in ("minus", "minus0"):
            hi = 0 if kind == "minus0" else -1
            coeffs = self._poly(-depth, hi, nilpotent_below=1)
            coeffs[1] = ring.one
        else:
            raise ValueError(f"unknown automorphism kind {kind!r}")
        return AutElement(LaurentSeries.from_dict(ring, coeffs))

    def derivation_series(self, low=-3, high=3):
        """Arbitrary Laurent polynomial coefficient ``g`` of ``g d/dt``."""
        return LaurentSeries.from_dict(self.ring, self._poly(low, high))
