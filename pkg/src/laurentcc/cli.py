"""Command-line entry point: ``laurentcc <verb> [options] [arguments]``.

Every verb prints a verification report (text, or JSON with ``--json``).
Exit codes: 0 all checks pass, 1 a check failed, 2 usage, parse or
validation error, 3 internal inconsistency (strategy mismatch, window or
precision exhausted).
"""

from __future__ import annotations

import argparse
import shlex
import sys

from . import acceptance
from .aut import DecompositionVariant, aut_from_series, decompose, identity, inverse, membership, mul
from .cocycles import (CechCover, bott_thurston, cech_assemble, cech_identity_defects,
                       cocycle_defect, det_cocycle, det_window, probe_conjecture)
from .errors import (ConsistencyError, DescriptorError, NotAUnitError, ParseError,
                     PrecisionError, UnsupportedError, ValidationError, WindowError)
from .lie import Derivation, lie_bott, lie_det, virasoro_pairing
from .parsing import parse_ring, parse_series
from .report import VerificationReport
from .rings import make_ring
from .series import precision
from .symbol import SymbolStrategy, cc

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

_USAGE_ERRORS = (ParseError, DescriptorError, ValidationError, NotAUnitError,
                 UnsupportedError, ValueError)
_INTERNAL_ERRORS = (ConsistencyError, WindowError, PrecisionError)


class UsageError(Exception):
    pass


def _ring(args):
    return parse_ring(args.ring)


def _series(args, ring, count):
    if len(args.args) != count:
        raise UsageError(f"{args.verb} takes {count} series arguments, got {len(args.args)}")
    return [parse_series(text, ring) for text in args.args]


def _auts(args, ring, count):
    return [aut_from_series(s) for s in _series(args, ring, count)]


def _stable(report, args, name, compute, base):
    """Recompute at ``2N`` unless ``--no-stability``; record the comparison."""
    if args.no_stability:
        return
    with precision(2 * args.N):
        doubled = compute()
    report.add(f"{name} stable at 2N", doubled == base, value=base, at_2N=doubled)


def _cocycle(name, args):
    if name == "bott":
        return lambda a, b: bott_thurston(a, b, strategy=args.strategy)
    if name == "det":
        return lambda a, b: det_cocycle(a, b, window=args.window)
    raise UsageError(f"unknown cocycle {name!r}; use bott or det")


# ---------------------------------------------------------------------------
# verbs


def cmd_cc(args, report):
    ring = _ring(args)
    f, g = _series(args, ring, 2)

    def compute():
        return cc(f, g, strategy=args.strategy)

    value = compute()
    report.add("cc", True, f=f, g=g, value=value)
    _stable(report, args, "cc", compute, value)


def cmd_bott(args, report):
    ring = _ring(args)
    phi1, phi2 = _auts(args, ring, 2)

    def compute():
        return bott_thurston(phi1, phi2, strategy=args.strategy)

    value = compute()
    report.add("bott", True, phi1=phi1, phi2=phi2, value=value)
    _stable(report, args, "bott", compute, value)


def cmd_det(args, report):
    ring = _ring(args)
    phi1, phi2 = _auts(args, ring, 2)

    def compute(window=args.window):
        return det_cocycle(phi1, phi2, window=window)

    value = compute()
    window = det_window(phi1, phi2, mul(phi1, phi2), args.window)
    report.add("det", True, phi1=phi1, phi2=phi2, value=value, n=window.n_bound,
               window=window.window)
    _stable(report, args, "det", compute, value)
    if not args.no_stability:
        wide = compute(2 * window.window)
        report.add("det stable at 2M", wide == value, value=value, at_2M=wide)


def _lie(args, fn, name):
    ring = _ring(args)
    g1, g2 = _series(args, ring, 2)
    return name, {"g1": g1, "g2": g2, "value": fn(Derivation(g1), Derivation(g2))}


def cmd_lie_bott(args, report):
    name, w = _lie(args, lie_bott, "lie-bott")
    report.add(name, True, **w)


def cmd_lie_det(args, report):
    name, w = _lie(args, lie_det, "lie-det")
    report.add(name, True, **w)


def cmd_virasoro(args, report):
    ring = make_ring("Q")
    fn = {"bott": lie_bott, "det": lie_det}[args.which]
    top = args.max
    for m in range(-top, top + 1):
        for n in range(-top, top + 1):
            value = fn(Derivation.L(ring, m), Derivation.L(ring, n))
            expected = virasoro_pairing(m, n, args.which)
            if value or expected:
                report.add(f"({m},{n})", value == expected, value=value, expected=str(expected))
            elif value != expected:
                report.add(f"({m},{n})", False, value=value, expected=str(expected))


def cmd_decompose(args, report):
    ring = _ring(args)
    (phi,) = _auts(args, ring, 1)
    variant = DecompositionVariant.parse(args.variant)
    alpha, beta = decompose(phi, variant, check=False)
    p1, p2 = membership(variant)
    report.add("factor shapes", p1(alpha) and p2(beta), variant=variant.value,
               alpha=alpha, beta=beta)
    back = mul(alpha, beta)
    report.add("alpha * beta = phi", back.agrees(phi), phi=phi, product=back)


def cmd_invert(args, report):
    ring = _ring(args)
    (phi,) = _auts(args, ring, 1)
    inv = inverse(phi)
    report.add("inverse", True, phi=phi, inverse=inv)
    # products lose precision against a deep tail, so check with a wider inverse
    wide = inverse(phi, 3 * args.N)
    report.add("agrees with the inverse to 3N", inv.agrees(wide))
    one = identity(ring)
    with precision(3 * args.N):
        report.add("phi * phi^-1 = id", mul(phi, wide).agrees(one, args.N))
        report.add("phi^-1 * phi = id", mul(wide, phi).agrees(one, args.N))


def cmd_defect(args, report):
    ring = _ring(args)
    g1, g2, g3 = _auts(args, ring, 3)
    c = _cocycle(args.cocycle, args)

    def compute():
        return cocycle_defect(c, g1, g2, g3)

    value = compute()
    report.add(f"{args.cocycle} defect = 1", value == 1, value=value)
    _stable(report, args, f"{args.cocycle} defect", compute, value)


def cmd_cech(args, report):
    ring = _ring(args)
    if len(args.args) < 2:
        raise UsageError("cech takes at least two chart automorphisms")
    charts = {i: aut_from_series(parse_series(text, ring)) for i, text in enumerate(args.args)}
    cover = CechCover.from_charts(charts)
    values = cech_assemble(cover, _cocycle(args.cocycle, args))
    defects = cech_identity_defects(values, cover.indices)
    bad = {k: v for k, v in defects.items() if v != 1}
    report.add(f"Cech identity for {args.cocycle}", not bad, quadruples=len(defects),
               failures=sorted(bad.items())[:5])


def cmd_probe(args, report):
    found = probe_conjecture(trials=args.trials, seed=args.seed)
    report.ring = found.ring
    report.checks.extend(found.checks)


def cmd_selftest(args, report):
    for result in acceptance.run_all(seed=args.seed):
        report.add(f"criterion {result.number}: {result.title}", result.ok,
                   seconds=round(result.seconds, 2), limit=result.limit)


VERBS = {
    "cc": (cmd_cc, "Contou-Carrere symbol CC(f, g) of two units"),
    "bott": (cmd_bott, "Bott-Thurston cocycle B(phi1, phi2)"),
    "det": (cmd_det, "determinantal cocycle D(phi1, phi2)"),
    "lie-bott": (cmd_lie_bott, "Lie cocycle 2 res(g1' dg2') of g1 d/dt, g2 d/dt"),
    "lie-det": (cmd_lie_det, "Lie cocycle from the determinantal extension"),
    "virasoro": (cmd_virasoro, "table of a Lie cocycle on (L_m, L_n)"),
    "decompose": (cmd_decompose, "factor phi = alpha * beta in a chosen pair of subgroups"),
    "invert": (cmd_invert, "group inverse of an automorphism"),
    "defect": (cmd_defect, "2-cocycle defect on a triple of automorphisms"),
    "probe": (cmd_probe, "sample D^12 / B and the commutator ratio (no expected outcome)"),
    "cech": (cmd_cech, "Cech 2-cocycle identity for transitions psi_i^-1 psi_j of charts"),
    "selftest": (cmd_selftest, "run the acceptance suite"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="laurentcc", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=sorted(VERBS), help="computation to run")
    parser.add_argument("args", nargs="*", help="series or automorphism literals, e.g. 't + e*t^-1'")
    parser.add_argument("--ring", default="Q", help="ring descriptor, e.g. 'Q[e;2]' or 'Z/4'")
    parser.add_argument("-N", type=int, default=32, help="working precision (default 32)")
    parser.add_argument("--no-stability", action="store_true",
                        help="skip the recomputation at 2N")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--strategy", choices=[s.value for s in SymbolStrategy], default=None,
                        help="Contou-Carrere evaluation strategy")
    parser.add_argument("--window", type=int, default=None,
                        help="truncation window M for the determinantal cocycle")
    parser.add_argument("--variant", default="plus1*minus0",
                        choices=[v.value for v in DecompositionVariant])
    parser.add_argument("--cocycle", default="bott", choices=["bott", "det"])
    parser.add_argument("--max", type=int, default=3, help="virasoro: largest |m|, |n|")
    parser.add_argument("--which", default="bott", choices=["bott", "det"])
    parser.add_argument("--trials", type=int, default=100, help="probe: pairs per ring")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    return parser


def run(argv):
    """Parse ``argv``, execute, and return ``(exit code, report or None)``."""
    parser = build_parser()
    args = parser.parse_intermixed_args(argv)
    if args.N < 2:
        parser.error("-N must be at least 2")
    if args.window is not None and args.window < 1:
        parser.error("--window must be positive")
    command = " ".join(["laurentcc"] + [shlex.quote(a) for a in argv])
    report = VerificationReport(command, args.ring, args.N,
                                args.seed if args.verb in ("probe", "selftest") else None)
    fn = VERBS[args.verb][0]
    try:
        with precision(args.N):
            fn(args, report)
    except UsageError as exc:
        parser.error(str(exc))
    except _INTERNAL_ERRORS as exc:
        return EXIT_INTERNAL, report, f"{type(exc).__name__}: {exc}"
    except _USAGE_ERRORS as exc:
        return EXIT_USAGE, report, f"{type(exc).__name__}: {exc}"
    if args.verb == "probe":
        return EXIT_PASS, report, None
    return (EXIT_PASS if report.ok else EXIT_FAIL), report, None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report, error = run(argv)
    if error is not None:
        print(f"laurentcc: error: {error}", file=sys.stderr)
        return code
    as_json = "--json" in argv
    print(report.to_json() if as_json else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
