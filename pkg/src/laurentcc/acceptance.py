"""Acceptance criteria 1 to 11, shared by the test suite and ``laurentcc selftest``.

Each criterion returns ``(passed, details)``; :func:`run_criterion` adds the
timing and the time-limit check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .aut import AutElement, DecompositionVariant, decompose, membership, mul
from .cocycles import (CechCover, bott_thurston, cech_assemble, cech_identity_defects,
                       cocycle_defect, det_cocycle, det_cocycle_direct, det_window,
                       probe_conjecture)
from .lie import Derivation, lie_bott, lie_det, lie_from_group, virasoro_pairing
from .parsing import parse_series
from .rings import make_ring, render_element
from .sampling import Sampler
from .series import LaurentSeries, precision, unit_order, working_precision
from .symbol import cc

# Worked example: f~ = t + e t^-1, g~ = t + t^2 over Q[e;2].  Recomputed by the
# product formula, by exp-res-log and by the truncated-matrix determinant at
# two window sizes before being frozen here.
WORKED_RING = "Q[e;2]"
WORKED_F = "t + e*t^-1"
WORKED_G = "t + t^2"
WORKED_VALUES = {"B(f,g)": "1 + 4*e", "B(g,f)": "1 - 8*e",
                 "D(f,g)": "1", "D(g,f)": "1 - e"}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float | None
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.passed and (self.limit is None or self.seconds < self.limit)

    def line(self):
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        status = "PASS" if self.ok else "FAIL"
        return f"criterion {self.number:2d} {status}: {self.title} [{self.seconds:.2f}s{limit}]"


def _count(failures, label, ok, witness):
    if not ok:
        failures.append((label, witness))


# --------------------------------------------------------------------------


def virasoro_table(seed=7, size=8):
    ring = make_ring("Q")
    failures = []
    for m in range(-size, size + 1):
        for n in range(-size, size + 1):
            Lm, Ln = Derivation.L(ring, m), Derivation.L(ring, n)
            b, d = lie_bott(Lm, Ln), lie_det(Lm, Ln)
            _count(failures, f"bott({m},{n})", b == ring.scalar(virasoro_pairing(m, n, "bott")), b)
            _count(failures, f"det({m},{n})", d == ring.scalar(virasoro_pairing(m, n, "det")), d)
    return not failures, {"pairs": (2 * size + 1) ** 2, "failures": failures}


def twelve_lie_det(seed=7, pairs=50):
    failures = []
    for r, text in enumerate(("Q", "Q[e;2]", "Z/4")):
        sampler = Sampler(make_ring(text), seed * 100 + r)
        for k in range(pairs):
            d1 = Derivation(sampler.derivation_series(-4, 4))
            d2 = Derivation(sampler.derivation_series(-4, 4))
            b, d = lie_bott(d1, d2), lie_det(d1, d2)
            _count(failures, f"{text} pair {k}", d * 12 == b, (b, d))
    return not failures, {"pairs per ring": pairs, "failures": failures}


def lie_bridge(seed=7, pairs=20):
    ring = make_ring("Q")
    sampler = Sampler(ring, seed)
    failures = []
    for k in range(pairs):
        g1, g2 = sampler.derivation_series(-2, 3), sampler.derivation_series(-2, 3)
        d1, d2 = Derivation(g1), Derivation(g2)
        b = lie_from_group(bott_thurston, g1, g2)
        d = lie_from_group(det_cocycle, g1, g2)
        _count(failures, f"bott pair {k}", b == lie_bott(d1, d2), (b, lie_bott(d1, d2)))
        _count(failures, f"det pair {k}", d == lie_det(d1, d2), (d, lie_det(d1, d2)))
    return not failures, {"pairs": pairs, "failures": failures}


def _steinberg_sample(sampler):
    while True:
        f = sampler.unit(depth=2, degree=2)
        g = LaurentSeries.one(f.ring) - f
        if g.c and _is_unit(g):
            return f, g


def _is_unit(f):
    from .series import is_unit
    return is_unit(f)


def cc_consistency(seed=7, pairs=50, samples=20):
    ring = make_ring("Q[e;3]")
    sampler = Sampler(ring, seed)
    failures = []
    for k in range(pairs):
        f, g = sampler.unit(), sampler.unit()
        a = cc(f, g, "product-formula")
        b = cc(f, g, "exp-res-log")
        _count(failures, f"strategies {k}", a == b, (a, b))
    t = LaurentSeries.t(ring)
    _count(failures, "CC(t,t)", cc(t, t) == -1, cc(t, t))
    for k in range(samples):
        a, g = sampler.elements.unit(), sampler.unit()
        value = cc(LaurentSeries.constant(ring, a), g)
        _count(failures, f"CC(a,g) {k}", value == a ** unit_order(g), value)
    for k in range(samples):
        f, g = _steinberg_sample(sampler)
        _count(failures, f"Steinberg {k}", cc(f, g) == 1, cc(f, g))
    for k in range(samples):
        f1, f2, g = sampler.unit(), sampler.unit(), sampler.unit()
        lhs, rhs = cc(f1 * f2, g), cc(f1, g) * cc(f2, g)
        _count(failures, f"bimultiplicative {k}", lhs == rhs, (lhs, rhs))
        anti = cc(f1, g) * cc(g, f1)
        _count(failures, f"antisymmetric {k}", anti == 1, anti)
    return not failures, {"failures": failures}


def cocycle_identities(seed=7, triples=20):
    failures = []
    for r, text in enumerate(("Q[e;2]", "Z/4")):
        sampler = Sampler(make_ring(text), seed * 100 + r)
        for k in range(triples):
            g1, g2, g3 = (sampler.aut(depth=1, degree=2) for _ in range(3))
            for name, c in (("B", bott_thurston), ("D", det_cocycle)):
                v = cocycle_defect(c, g1, g2, g3)
                _count(failures, f"{text} {name} triple {k}", v == 1, v)
    return not failures, {"triples per ring": triples, "failures": failures}


def triviality(seed=7, samples=20):
    failures = []
    for r, text in enumerate(("Q", "Z/3")):
        sampler = Sampler(make_ring(text), seed * 100 + r)
        for k in range(samples):
            f, g = sampler.aut(), sampler.aut()
            v = bott_thurston(f, g)
            _count(failures, f"reduced {text} {k}", v == 1, v)
    for r, text in enumerate(("Q[e;2]", "Z/4")):
        sampler = Sampler(make_ring(text), seed * 100 + 10 + r)
        for k in range(samples):
            f, g = sampler.aut("plus1"), sampler.aut("plus1")
            b, d = bott_thurston(f, g), det_cocycle(f, g)
            _count(failures, f"plus1 {text} {k}", b == 1 and d == 1, (b, d))
    return not failures, {"failures": failures}


def worked_example_values():
    """The four values with every oracle, as rendered strings."""
    ring = make_ring(WORKED_RING)
    f = AutElement(parse_series(WORKED_F, ring))
    g = AutElement(parse_series(WORKED_G, ring))
    out = {}
    for (a, b), label in (((f, g), "f,g"), ((g, f), "g,f")):
        out[f"B({label})"] = {render_element(bott_thurston(a, b, s))
                              for s in ("product-formula", "exp-res-log")}
        window = det_window(a, b, mul(a, b)).window
        out[f"D({label})"] = {
            render_element(det_cocycle(a, b)),
            render_element(det_cocycle(a, b, window=2 * window)),
            render_element(det_cocycle_direct(a, b)),
            render_element(det_cocycle_direct(a, b, window=2 * window + 8, method="berkowitz")),
        }
    return out, (f, g)


def worked_example(seed=7):
    values, (f, g) = worked_example_values()
    failures = []
    for key, expected in WORKED_VALUES.items():
        _count(failures, key, values[key] == {expected}, sorted(values[key]))
    bfg, bgf = bott_thurston(f, g), bott_thurston(g, f)
    dfg, dgf = det_cocycle(f, g), det_cocycle(g, f)
    lhs = bfg * bgf.inverse()
    rhs = (dfg * dgf.inverse()) ** 12
    _count(failures, "commutator pairing", lhs == rhs, (lhs, rhs))
    return not failures, {"values": {k: sorted(v) for k, v in values.items()},
                          "failures": failures}


def decomposition_suite(seed=7, samples=100):
    failures = []
    for r, text in enumerate(("Z/8", "Q[e1;2,e2;3]")):
        sampler = Sampler(make_ring(text), seed * 100 + r, height=2)
        for k in range(samples):
            phi = sampler.aut(depth=1, degree=2)
            for variant in DecompositionVariant:
                label = f"{text} {variant.value} {k}"
                try:
                    alpha, beta = decompose(phi, variant)
                    # recompose from factors known to 2N, then decompose again at N
                    N = working_precision()
                    wide = decompose(phi, variant, 2 * N)
                    with precision(2 * N):
                        recomposed = mul(*wide)
                    again = decompose(recomposed, variant, N)
                except Exception as exc:  # noqa: BLE001 - recorded as a failure
                    failures.append((label, repr(exc)))
                    continue
                p1, p2 = membership(variant)
                ok = (p1(alpha) and p2(beta) and mul(alpha, beta).agrees(phi)
                      and again[0].agrees(alpha) and again[1].agrees(beta))
                _count(failures, label, ok, (alpha.tilde, beta.tilde))
    return not failures, {"samples per ring": samples, "failures": failures}


def _stability_values(seed):
    out = []
    ring = make_ring("Q[e;3]")
    sampler = Sampler(ring, seed)
    for _ in range(10):
        f, g = sampler.unit(), sampler.unit()
        out.append(("cc", (f, g), lambda f=f, g=g: cc(f, g)))
    for r, text in enumerate(("Q[e;2]", "Z/4")):
        sampler = Sampler(make_ring(text), seed * 100 + r)
        for _ in range(10):
            a, b = sampler.aut(depth=1, degree=2), sampler.aut(depth=1, degree=2)
            out.append(("B", (a, b), lambda a=a, b=b: bott_thurston(a, b)))
            out.append(("D", (a, b), lambda a=a, b=b: det_cocycle(a, b)))
            window = det_window(a, b, mul(a, b)).window
            out.append(("D window", (a, b),
                        lambda a=a, b=b, w=window: det_cocycle(a, b, window=2 * w)))
    return out


def stability(seed=7):
    failures = []
    N = working_precision()
    for name, args, fn in _stability_values(seed):
        base = fn()
        with precision(2 * N):
            doubled = fn()
        _count(failures, name, base == doubled, (base, doubled))
        if name == "D":
            a, b = args
            window = det_window(a, b, mul(a, b)).window
            wide = det_cocycle(a, b, window=2 * window)
            _count(failures, "D at 2M", base == wide, (base, wide))
    with precision(2 * N):
        doubled, _ = worked_example_values()
    for key, expected in WORKED_VALUES.items():
        _count(failures, f"worked {key} at 2N", doubled[key] == {expected}, sorted(doubled[key]))
    return not failures, {"precision": N, "failures": failures}


def cech(seed=7):
    ring = make_ring(WORKED_RING)
    f = AutElement(parse_series(WORKED_F, ring))
    g = AutElement(parse_series(WORKED_G, ring))
    cover = CechCover.chain([f, g])
    failures = []
    values = {}
    for name, c in (("B", bott_thurston), ("D", det_cocycle)):
        h = cech_assemble(cover, c)
        values[name] = {str(k): v for k, v in h.items()}
        for key, v in cech_identity_defects(h, cover.indices).items():
            _count(failures, f"{name} {key}", v == 1, v)
    return not failures, {"values": values, "failures": failures}


def probe(seed=7, trials=100):
    first = probe_conjecture(trials=trials, seed=seed)
    second = probe_conjecture(trials=trials, seed=seed)
    completed = all(c.status != "fail" for c in first.checks)
    deterministic = first.to_json() == second.to_json()
    summary = [c.as_dict() for c in first.checks if c.name.endswith("summary")]
    return completed and deterministic, {"completed": completed,
                                         "deterministic": deterministic,
                                         "summary": summary}


CRITERIA = {
    1: ("Virasoro table |m|,|n| <= 8", virasoro_table, 1.0),
    2: ("12 lie_det = lie_bott on seeded derivation pairs", twelve_lie_det, 5.0),
    3: ("lie_from_group recovers both Lie cocycles", lie_bridge, 30.0),
    4: ("Contou-Carrere symbol consistency", cc_consistency, 30.0),
    5: ("cocycle identity for B and D", cocycle_identities, 60.0),
    6: ("triviality on reduced rings and Aut+,1", triviality, None),
    7: ("worked-example regression", worked_example, None),
    8: ("decomposition suite", decomposition_suite, 60.0),
    9: ("stability under N -> 2N and M -> 2M", stability, None),
    10: ("Cech 2-cocycle identity", cech, 5.0),
    11: ("probe completion and determinism", probe, None),
}


def run_criterion(number, seed=7):
    title, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    try:
        passed, details = fn(seed=seed)
    except Exception as exc:  # noqa: BLE001 - a crash is a failed criterion
        passed, details = False, {"error": repr(exc)}
    elapsed = time.perf_counter() - start
    return CriterionResult(number, title, passed, elapsed, limit, details)


def run_all(seed=7, only=None):
    return [run_criterion(k, seed) for k in sorted(CRITERIA) if only is None or k in only]
