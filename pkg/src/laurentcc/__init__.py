"""Exact Laurent series over rings with nilpotents: the Contou-Carrere symbol,
the Bott-Thurston and determinantal 2-cocycles on automorphisms of A((t)),
and their Lie algebra counterparts."""

from .aut import (AutElement, DecompositionVariant, decompose, identity, inverse,
                  membership, mul)
from .cocycles import (CechCover, bott_thurston, cech_assemble, cech_identity_defects,
                       coboundary, cocycle_defect, det_cocycle, det_cocycle_direct,
                       probe_conjecture)
from .errors import (ConsistencyError, DescriptorError, LaurentError, NotAUnitError,
                     ParseError, PrecisionError, UnsupportedError, ValidationError,
                     WindowError)
from .kernels import BACKEND
from .lie import Derivation, bracket, lie_bott, lie_det, lie_from_group, virasoro_pairing
from .parsing import parse_ring, parse_series, render_series
from .report import VerificationReport
from .rings import Ring, RingDescriptor, RingElement, make_ring
from .series import (LaurentSeries, compose, invert_unit, log_sharp, precision, residue,
                     unit_decompose, working_precision)
from .symbol import SymbolStrategy, cc

__version__ = "0.1.0"
