"""The Contou-Carrere symbol on units of A((t)).

Two independent routes are provided: the universal product formula over
the atom factorizations of both arguments (works over every ring), and the
exponential of a residue of ``log f * dg/g`` (Q-algebras only), extended
from the sharp subgroup by ``CC(a, g) = a^nu(g)`` and ``CC(t, t) = -1``.
"""

from __future__ import annotations

import os
from enum import Enum
from math import gcd

from .errors import ConsistencyError
from .series import (_peel_negative, _peel_positive, exp_nilpotent,
                     invert_unit, log_sharp, residue, unit_split)


class SymbolStrategy(str, Enum):
    PRODUCT_FORMULA = "product-formula"
    EXP_RES_LOG = "exp-res-log"
    CROSS_CHECK = "cross-check"


def default_strategy():
    """``LAURENTCC_CC_STRATEGY`` overrides the product formula default."""
    return SymbolStrategy(os.environ.get("LAURENTCC_CC_STRATEGY", "product-formula"))


def cc_atomic(i, a, j, b):
    """``CC(1 - a t^i, 1 - b t^j)``."""
    if i == 0 or j == 0:
        raise ValueError("atom indices must be nonzero")
    ring = a.ring
    if (i > 0) == (j > 0):
        return ring.one
    if i < 0:
        return cc_atomic(j, b, i, a).inverse()
    d = gcd(i, -j)
    return (ring.one - a ** (-j // d) * b ** (i // d)) ** d


def _factor_bound(negative):
    """Largest positive index whose atom can pair nontrivially with ``negative``."""
    bound = 0
    for j, b in negative:
        order = b.nilpotency_order()
        bound = max(bound, (order - 1) * (-j))
    return bound


def cc_product_formula(f, g):
    sf, sg = unit_split(f), unit_split(g)
    neg_f, neg_g = _peel_negative(sf.neg), _peel_negative(sg.neg)
    pos_f = _peel_positive(sf.pos, _factor_bound(neg_g))
    pos_g = _peel_positive(sg.pos, _factor_bound(neg_f))
    value = sf.a0 ** sg.nu * sg.a0.inverse() ** sf.nu
    if (sf.nu * sg.nu) % 2:
        value = -value
    for i, a in pos_f:
        if not a:
            continue
        for j, b in neg_g:
            value = value * cc_atomic(i, a, j, b)
    for j, b in pos_g:
        if not b:
            continue
        for i, a in neg_f:
            value = value * cc_atomic(i, a, j, b)
    return value


def _sharp_part(split):
    return split.neg * split.pos


def _dlog(g, n):
    """``g'/g`` known at least below ``t^n``."""
    dg = g.derivative()
    ginv = invert_unit(g, n - dg.low)
    return dg.mul(ginv, n)


def cc_exp_res_log(f, g):
    """``exp res(log f dg/g)`` after splitting ``f = t^nu a0 f#``."""
    ring = f.ring
    sf, sg = unit_split(f), unit_split(g)
    e = ring.nil_index
    value = sf.a0 ** sg.nu
    if sf.nu:
        # CC(t, g) = (-1)^nu(g) b0^-1 CC(g#, t)^-1 with CC(g#, t) = exp(coef_0 log g#)
        gs = _sharp_part(sg)
        log_g = log_sharp(gs, 1)
        ctg = sg.a0.inverse() * exp_nilpotent(-log_g.coefficient(0))
        if sg.nu % 2:
            ctg = -ctg
        value = value * ctg ** sf.nu
    fs = _sharp_part(sf)
    if fs == 1:
        return value
    depth = max(0, -fs.low)
    dlog = _dlog(g, (e - 1) * depth + 2)
    log_f = log_sharp(fs, max(1, -dlog.low + 1))
    r = residue(log_f.mul(dlog, 0))
    return value * exp_nilpotent(r)


def cc(f, g, strategy=None):
    """Contou-Carrere symbol of two units of A((t))."""
    strategy = default_strategy() if strategy is None else SymbolStrategy(strategy)
    if strategy is SymbolStrategy.PRODUCT_FORMULA:
        return cc_product_formula(f, g)
    if strategy is SymbolStrategy.EXP_RES_LOG:
        return cc_exp_res_log(f, g)
    first = cc_product_formula(f, g)
    if not f.ring.is_q_algebra:
        return first
    second = cc_exp_res_log(f, g)
    if first != second:
        raise ConsistencyError(f"product formula gives {first}, exp-res-log gives {second}",
                               first, second)
    return first
