"""Group 2-cocycles on Aut(A((t))): formal Bott-Thurston and determinantal.

Operators act on A((t)) by ``T_h(s) = s o h~`` so that ``T_{fg} = T_f T_g``.
With respect to ``A((t)) = t^-1 A[t^-1] + A[[t]]`` the blocks of ``T_h`` are
``a`` (neg -> neg), ``b`` (pos -> neg), ``c`` (neg -> pos), ``d`` (pos -> pos).

Band bound: column ``t^k`` of ``d_h`` has entries only in rows
``>= k - E_h`` with ``E_h = (e - 1)(depth + 1)`` (``e`` the nil index), since
``h~^k = (a_1 t u + z)^k`` and ``z^m = 0`` for ``m >= e``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .aut import AutElement, identity, inverse, mul, tau
from .errors import ConsistencyError, PrecisionError, ValidationError, WindowError
from .linalg import berkowitz_det, elimination_det, inverse_columns
from .rings import RingElement
from .series import LaurentSeries, compose, invert_unit, working_precision
from .symbol import cc


# --------------------------------------------------------------------------
# Blocks


@dataclass(frozen=True)
class TruncatedOperator:
    """``columns[k]`` lists ``(row, RingElement)`` for the image of basis vector ``k``.

    Entries in rows ``< dimension - guard`` are exact entries of the
    untruncated operator.
    """

    ring: object
    dimension: int
    columns: tuple
    guard: int = 0

    def entry(self, r, k):
        for row, x in self.columns[k]:
            if row == r:
                return x
        return self.ring.zero

    def dense(self):
        M = self.dimension
        out = [[self.ring.zero] * M for _ in range(M)]
        for k, col in enumerate(self.columns):
            for r, x in col:
                if r < M:
                    out[r][k] = x
        return out


def band(h):
    """``E_h``: how far above the diagonal ``d_h`` reaches."""
    f = h.tilde
    ring = f.ring
    if f.low > 0:
        return 0
    if all(not any(f.vec(i)) for i in range(f.low, 1)):
        return 0
    return (ring.nil_index - 1) * (max(0, -f.low) + 1)


def _power_columns(f, count, rows):
    """Parts of ``f^k`` for ``k < count``: dense coefficients on ``t^0 .. t^(rows-1)``
    and the exact negative part."""
    ring = f.ring
    depth = max(0, -f.low)
    pos, neg = [], []
    power = LaurentSeries.one(ring)
    for k in range(count):
        if k:
            power = power * f
            if power.prec is not None and power.prec < rows:
                raise PrecisionError(
                    f"power {k} of the automorphism known only below t^{power.prec}")
            power = power.truncate(rows + (count - 1 - k) * depth + 1)
        pos.append(power.dense(0, rows))
        neg.append(power.part(None, 0))
    return pos, neg


def _inverse_powers(f, count, rows):
    """``f~^-r`` for ``1 <= r <= count``, each known at least below ``t^rows``."""
    ring = f.ring
    lowest = invert_unit(f).low
    finv = invert_unit(f, rows + (count - 1) * max(0, -lowest) + 1)
    out = []
    power = LaurentSeries.one(ring)
    for r in range(1, count + 1):
        power = power * finv
        if power.prec is not None and power.prec < rows:
            raise PrecisionError(f"f~^-{r} known only below t^{power.prec}")
        out.append(power)
    return out


def block(h, which, window):
    """The ``which`` block of ``T_h`` truncated to ``window`` basis vectors.

    Negative bases are indexed ``t^-1 -> 0, t^-2 -> 1, ...``.
    """
    ring = h.ring
    f = h.tilde
    M = window
    if which == "d":
        pos, _ = _power_columns(f, M, M)
        cols = tuple(tuple((r, RingElement(ring, v)) for r, v in enumerate(col) if any(v))
                     for col in pos)
    elif which == "b":
        _, neg = _power_columns(f, M, 0)
        cols = tuple(tuple((-i - 1, x) for i, x in sorted(s.coefficients.items())
                           if -i - 1 < M) for s in neg)
    elif which in ("a", "c"):
        cols = []
        for power in _inverse_powers(f, M, M):
            items = sorted(power.part(None, M).coefficients.items())
            if which == "c":
                cols.append(tuple((i, x) for i, x in items if i >= 0))
            else:
                cols.append(tuple((-i - 1, x) for i, x in items if i < 0 and -i - 1 < M))
        cols = tuple(cols)
    else:
        raise ValueError(f"unknown block {which!r}")
    return TruncatedOperator(ring, M, cols, 0)


# --------------------------------------------------------------------------
# Bott-Thurston


def bott_thurston(phi1, phi2, strategy=None):
    """``B(phi1, phi2) = CC(phi1~', phi2~' o phi1~)``."""
    first = tau(phi1)
    second = compose(tau(phi2), phi1.tilde, _target(phi1, phi2), strict=False)
    return cc(first, second, strategy)


def _target(*phis):
    return working_precision() + max(p.depth for p in phis) * phis[0].ring.nil_index + 2


# --------------------------------------------------------------------------
# Determinantal cocycle


def _product_tilde(f, g, rows):
    """``(fg)~ = g~ o f~`` precise enough to expand ``rows`` powers below ``t^rows``."""
    fg = mul(f, g)
    if fg.tilde.is_exact or rows == 0:
        return fg
    return mul(f, g, rows + rows * fg.depth + 2)


@dataclass(frozen=True)
class DetWindow:
    n_bound: int
    guard: int
    window: int


def det_window(f, g, fg, window=None):
    e = f.ring.nil_index
    Eg, Efg = band(g), band(fg)
    n_bound = Eg + (e - 1) * Efg
    guard = e * Efg
    if window is None:
        window = n_bound + guard + Eg + max(8, n_bound)
    return DetWindow(n_bound, guard, window)


def _neg_image(y, neg_powers, ring):
    """``b_g`` applied to a vector ``y`` given by coordinates on ``t^0, t^1, ...``."""
    acc = LaurentSeries.zero(ring)
    for j, s in enumerate(neg_powers):
        if any(y[j]) and not s.is_zero():
            acc = acc + s.scale(RingElement(ring, y[j]))
    return acc


def _c_apply(w, inverse_powers, rows, ring):
    """Coefficients on ``t^0 .. t^(rows-1)`` of ``c_f(w)`` for ``w`` in ``t^-1 A[t^-1]``."""
    out = [ring.zero_vec] * rows
    for i, x in w.coefficients.items():
        col = inverse_powers[-i - 1].dense(0, rows)
        for k in range(rows):
            if any(col[k]):
                out[k] = ring.vadd(out[k], ring.vmul(x.vec, col[k]))
    return out


def _s_matrix(f, g, window=None):
    """Leading ``n x n`` block of ``s = d_f d_g d_fg^-1`` and its window data."""
    ring = f.ring
    fg = _product_tilde(f, g, 0)
    win = det_window(f, g, fg, window)
    n, G, M = win.n_bound, win.guard, win.window
    if n == 0:
        return [], win
    fg = _product_tilde(f, g, M)
    Eg = band(g)
    pos_fg, _ = _power_columns(fg.tilde, M, M)
    T = [[pos_fg[k][r] for k in range(M)] for r in range(M)]
    ycols = inverse_columns(T, ring, M - G)
    _, neg_g = _power_columns(g.tilde, max(Eg, 1), 0)
    ws = [_neg_image(ycols[k], neg_g, ring) for k in range(M - G)]
    for k in range(n, M - G):
        if not ws[k].is_zero():
            raise WindowError(f"s(t^{k}) != t^{k} inside the window of size {M}")
    reach = max((-w.low for w in ws[:n] if not w.is_zero()), default=0)
    inv_pows = _inverse_powers(f.tilde, reach, n) if reach else []
    cols = []
    for k in range(n):
        cw = _c_apply(ws[k], inv_pows, n, ring)
        col = [ring.vsub(ring.one.vec if r == k else ring.zero_vec, cw[r]) for r in range(n)]
        cols.append(col)
    S = [[RingElement(ring, cols[k][r]) for k in range(n)] for r in range(n)]
    return S, win


def det_cocycle(f, g, window=None, retries=3):
    """``D(f, g) = det(d_f d_g d_fg^-1)`` through ``s = 1 - c_f b_g d_fg^-1``."""
    ring = f.ring
    if band(g) == 0:
        return ring.one
    M = window
    for _ in range(retries + 1):
        try:
            S, win = _s_matrix(f, g, M)
        except WindowError:
            M = 2 * (M or det_window(f, g, _product_tilde(f, g, 0)).window)
            continue
        return berkowitz_det(S, ring)
    raise WindowError("stabilization not certified after enlarging the window")


def s_matrix_direct(f, g, window=None):
    """Oracle: ``s = d_f d_g d_fg^-1`` from truncated block products."""
    ring = f.ring
    fg0 = _product_tilde(f, g, 0)
    win = det_window(f, g, fg0)
    n = win.n_bound
    Ef, Eg = band(f), band(g)
    M = window or (n + Ef + Eg + win.guard + max(8, n))
    fg = _product_tilde(f, g, M)
    pos_fg, _ = _power_columns(fg.tilde, M, M)
    T = [[pos_fg[k][r] for k in range(M)] for r in range(M)]
    ycols = inverse_columns(T, ring, max(n, 1))
    pos_g, _ = _power_columns(g.tilde, M, M)
    pos_f, _ = _power_columns(f.tilde, M, M)

    def apply(cols, y):
        out = [ring.zero_vec] * M
        for j in range(M):
            if any(y[j]):
                for r in range(M):
                    if any(cols[j][r]):
                        out[r] = ring.vadd(out[r], ring.vmul(cols[j][r], y[j]))
        return out

    S = []
    for k in range(n):
        v = apply(pos_f, apply(pos_g, ycols[k]))
        S.append(v[:n])
    return [[RingElement(ring, S[k][r]) for k in range(n)] for r in range(n)], win


def det_cocycle_direct(f, g, window=None, method="elimination"):
    S, _ = s_matrix_direct(f, g, window)
    ring = f.ring
    if method == "elimination":
        return elimination_det(S, ring)
    return berkowitz_det(S, ring)


# --------------------------------------------------------------------------
# Cochain machinery


def product_precision(*phis):
    """Precision for products of ``phis`` that keeps both cocycles computable.

    Bounds the depth of the full product and the determinant window it
    induces; callers retry with more if a ``PrecisionError`` still occurs.
    """
    e = phis[0].ring.nil_index
    depth = 0
    for phi in phis:
        depth = phi.depth + (e - 1) * (depth + 1) if depth else phi.depth
    band_bound = (e - 1) * (depth + 1)
    n_bound = band_bound * e
    window = n_bound + e * band_bound + band_bound + max(8, n_bound)
    return max(working_precision(), (window + 2) * (depth + 2))


def _with_products(fn, phis, n, attempts=3):
    n = product_precision(*phis) if n is None else n
    for k in range(attempts):
        try:
            return fn(n)
        except PrecisionError:
            if k == attempts - 1:
                raise
            n *= 2


def cocycle_defect(c, g1, g2, g3, n=None):
    """``c(g2,g3) c(g1g2,g3)^-1 c(g1,g2g3) c(g1,g2)^-1``; 1 iff the identity holds.

    Products of infinite automorphisms are formed to precision ``n``.
    """
    def run(prec):
        g12 = _mul_to(g1, g2, prec)
        g23 = _mul_to(g2, g3, prec)
        return c(g2, g3) * c(g12, g3).inverse() * c(g1, g23) * c(g1, g2).inverse()
    return _with_products(run, (g1, g2, g3), n)


def _mul_to(f, g, n):
    """Product, exact when possible, otherwise to precision ``n``."""
    fg = mul(f, g)
    if fg.tilde.is_exact:
        return fg
    return mul(f, g, n)


def coboundary(lam, g, h, n=None):
    """``lam(g) lam(h) lam(gh)^-1``."""
    def run(prec):
        gh = _mul_to(g, h, prec)
        return lam(g) * lam(h) * lam(gh).inverse()
    return _with_products(run, (g, h), n)


# --------------------------------------------------------------------------
# Cech assembly


class CechCover:
    """Transition automorphisms ``phi_ij`` on a finite index set."""

    def __init__(self, indices, transitions):
        self.indices = tuple(indices)
        self.transitions = dict(transitions)
        self.validate()

    @classmethod
    def from_charts(cls, charts, n=None):
        """``phi_ij = psi_i^-1 psi_j`` for charts ``{i: psi_i}``.

        Infinite transitions are formed to precision ``n``.
        """
        if n is None:
            n = 2 * product_precision(*charts.values())
        inv = {i: inverse(p, 2 * n) for i, p in charts.items()}
        trans = {}
        for i, j in itertools.product(charts, repeat=2):
            trans[(i, j)] = identity(charts[i].ring) if i == j else _mul_to(inv[i], charts[j], n)
        return cls(list(charts), trans)

    @classmethod
    def chain(cls, steps, n=None):
        """Indices ``0..len(steps)`` with ``phi_{i,i+1} = steps[i]``."""
        ring = steps[0].ring
        if n is None:
            n = 2 * product_precision(*steps)
        count = len(steps) + 1
        trans = {}
        for i in range(count):
            trans[(i, i)] = identity(ring)
            acc = identity(ring)
            for j in range(i + 1, count):
                acc = _mul_to(acc, steps[j - 1], 2 * n)
                trans[(i, j)] = acc
        for i in range(count):
            for j in range(i + 1, count):
                trans[(j, i)] = inverse(trans[(i, j)], n)
        return cls(range(count), trans)

    def __getitem__(self, key):
        return self.transitions[key]

    def validate(self):
        idx = self.indices
        for i in idx:
            if (i, i) not in self.transitions:
                self.transitions[(i, i)] = identity(next(iter(self.transitions.values())).ring)
            if not self.transitions[(i, i)].is_identity():
                raise ValidationError(f"phi_{i}{i} is not the identity")
        for i, j in itertools.permutations(idx, 2):
            if (i, j) not in self.transitions:
                raise ValidationError(f"missing transition ({i}, {j})")
        for i, j in itertools.permutations(idx, 2):
            if not mul(self[(i, j)], self[(j, i)]).agrees(identity(self[(i, j)].ring)):
                raise ValidationError(f"phi_{i}{j} is not inverse to phi_{j}{i}")
        for i, j, k in itertools.product(idx, repeat=3):
            if not mul(self[(i, j)], self[(j, k)]).agrees(self[(i, k)]):
                raise ValidationError(f"cocycle condition fails on ({i}, {j}, {k})")


def cech_assemble(cover, cocycle):
    """``h_ijk = c(phi_ij, phi_jk)`` on every ordered triple."""
    return {(i, j, k): cocycle(cover[(i, j)], cover[(j, k)])
            for i, j, k in itertools.product(cover.indices, repeat=3)}


def cech_identity_defects(values, indices):
    """``h_jkl h_ikl^-1 h_ijl h_ijk^-1`` on every ordered quadruple."""
    out = {}
    for i, j, k, l in itertools.product(indices, repeat=4):
        out[(i, j, k, l)] = (values[(j, k, l)] * values[(i, k, l)].inverse()
                             * values[(i, j, l)] * values[(i, j, k)].inverse())
    return out


# --------------------------------------------------------------------------
# The D^12 versus B probe


def probe_pair(f, g):
    """Pointwise and commutator ratios for one pair."""
    b_fg, b_gf = bott_thurston(f, g), bott_thurston(g, f)
    d_fg, d_gf = det_cocycle(f, g), det_cocycle(g, f)
    pointwise = d_fg ** 12 * b_fg.inverse()
    commutator = b_fg * b_gf.inverse() * (d_fg * d_gf.inverse()) ** (-12)
    return {"B(f,g)": b_fg, "B(g,f)": b_gf, "D(f,g)": d_fg, "D(g,f)": d_gf,
            "D^12/B": pointwise, "commutator ratio": commutator}


PROBE_RINGS = ("Q[e;2]", "Z/4")


def probe_conjecture(rings=PROBE_RINGS, trials=100, seed=0, depth=1, degree=2):
    """Sample pairs and record ``D^12 / B`` and the commutator ratio.

    Nothing about the outcome is asserted: each trial is a ``pass`` when both
    ratios were computed and a ``fail`` only when the computation raised.
    Trials are indexed, so the report does not depend on evaluation order.
    """
    from .report import VerificationReport
    from .rings import make_ring
    from .sampling import Sampler

    report = VerificationReport("probe", ",".join(rings), working_precision(), seed)
    for r, text in enumerate(rings):
        ring = make_ring(text)
        sampler = Sampler(ring, seed * 1000 + r)
        unit_pointwise = unit_commutator = 0
        for k in range(trials):
            f = sampler.aut(depth=depth, degree=degree)
            g = sampler.aut(depth=depth, degree=degree)
            name = f"{text} trial {k}"
            try:
                w = probe_pair(f, g)
            except (PrecisionError, WindowError, ConsistencyError) as exc:
                report.add(name, False, f=f.tilde, g=g.tilde, error=str(exc))
                continue
            unit_pointwise += w["D^12/B"] == 1
            unit_commutator += w["commutator ratio"] == 1
            report.add(name, True, f=f.tilde, g=g.tilde, **w)
        report.add(f"{text} summary", "skip", trials=trials,
                   pointwise_ratio_is_1=unit_pointwise,
                   commutator_ratio_is_1=unit_commutator)
    return report
