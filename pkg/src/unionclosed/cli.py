"""Command-line front end: construct, analyze, bounds, good-set, verify,
random-check.

Families travel in the line-oriented text format (or JSON); every frequency
in JSON output is an exact "p/q" string, entropies are binary64 rounded to 12
significant digits.  Exit codes: 0 success, 1 verification failure (with a
reproducer), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import constructions, entropy, formats, good_sets, verifier
from .family import (SetFamily, elements_of, frequencies, mask_of,
                     project_away_top, support)


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _bits(x: float) -> float:
    return float(f"{x:.12g}")


def _parse_alpha(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational or decimal: {text!r}") from exc
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1), got {text}")
    return value


def _parse_k_or_all(text: str):
    if text == "all":
        return None
    try:
        k = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}") from exc
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unionclosed",
        description="Exact desk-scale checks on union-closed set families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit one of the named families")
    kind = p.add_subparsers(dest="kind", required=True)
    q = kind.add_parser("near-k-cube", help="cube on [k-1] plus one larger set")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--extra", type=int, nargs="+", metavar="ELEM",
                   help="extra elements of the odd set out (default: {k})")
    q.add_argument("--format", choices=("text", "json"), default="text")
    q = kind.add_parser("power-cube", help="all subsets of [d]")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q = kind.add_parser("nagel-example", help="product family with k-th frequency 1/2 - 1/(2 m^(1/(k-1)))")
    q.add_argument("--n", type=int, required=True, help="block parameter (blocks live on n+1 elements)")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q = kind.add_parser("direct-sum", help="direct sum of families read from files")
    q.add_argument("files", nargs="+", metavar="FILE")
    q.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("analyze", help="full report on one family")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=_parse_alpha,
                   help="ratio parameter for the union-entropy report "
                        "(default: the projected max frequency)")

    p = sub.add_parser("bounds", help="size bounds for a frequency cap alpha")
    p.add_argument("--alpha", type=_parse_alpha, required=True,
                   metavar="RATIONAL", help="e.g. 1/9 or 0.1111")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("good-set", help="minimal k-good set certificate for a family")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("verify", help="exhaustive sweep over union-closed families on [n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=_parse_k_or_all, default=None, metavar="K|all")
    p.add_argument("--require-empty", action="store_true",
                   help="enumerate only families containing the empty set")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget-seconds", type=float, default=None)

    p = sub.add_parser("random-check", help="seeded random closure families, bound checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    return parser


def _emit_family(family: SetFamily, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(formats.family_to_json_obj(family)))
    else:
        sys.stdout.write(formats.family_to_text(family))


def _cmd_construct(args: argparse.Namespace) -> int:
    if args.kind == "near-k-cube":
        extra = mask_of(args.extra) if args.extra else None
        fam = constructions.near_k_cube(args.k, extra)
    elif args.kind == "power-cube":
        fam = constructions.power_cube(args.d)
    elif args.kind == "nagel-example":
        fam = constructions.nagel_example(args.n, args.k)
    else:
        parts = [formats.load_family(path) for path in args.files]
        fam = constructions.direct_sum(parts)
    _emit_family(fam, args.format)
    return 0


def _certificate_doc(family: SetFamily, cert: good_sets.GoodSetCertificate) -> dict:
    doc = {
        "k": cert.k,
        "good_set": list(elements_of(cert.cover)),
        "witnesses": {str(y): list(elements_of(w)) for y, w in cert.witnesses},
        "bound_by_cover": _frac(cert.cover_bound),
        "bound_by_log": _bits(cert.log_bound),
        "injection_verified": good_sets.verify_union_injection(family, cert),
    }
    return doc


def _cmd_good_set(args: argparse.Namespace) -> int:
    fam = formats.load_family(args.file)
    cert = good_sets.minimal_k_good(fam, args.k)
    doc = _certificate_doc(fam, cert)
    from .family import kth_frequency
    doc["f_k"] = _frac(kth_frequency(fam, args.k))
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    report = entropy.refined_size_bound(args.alpha, args.k)
    doc = {
        "alpha": _frac(args.alpha),
        "k": args.k,
        "lambda": _bits(report.lam),
        "simple_bound_bits": _bits(report.simple_bound),
        "refined_bound_bits": _bits(report.refined_bound),
        "rho_star": _bits(report.rho_star),
        "min_family_size_simple": math.ceil(2 ** report.simple_bound),
        "min_family_size_refined": math.ceil(2 ** report.refined_bound),
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    fam = formats.load_family(args.file)
    k = args.k
    supp_size = support(fam).bit_count()
    if k > supp_size:
        print(f"error: k={k} exceeds support size {supp_size}", file=sys.stderr)
        return 2
    nagel = verifier.check_nagel(fam, k)
    tag = verifier.classify_range(fam.m, k)
    doc = {
        "n": fam.n,
        "m": fam.m,
        "support_size": supp_size,
        "log2_m": _bits(math.log2(fam.m)),
        "frequencies": {str(i): _frac(f) for i, f in enumerate(frequencies(fam), start=1)},
        "nagel": {
            "k": k,
            "f_k": _frac(nagel.kth_freq),
            "threshold": _frac(nagel.threshold),
            "status": nagel.status,
        },
        "range": {
            "tag": tag.tag,
            "intervals": [{"regime": name, "min_size": lo, "max_size": hi}
                          for name, lo, hi in tag.intervals],
        },
        "conditional_entropy_bits": _bits(entropy.conditional_entropy_given_projection(fam, k)),
    }

    try:
        cert = good_sets.minimal_k_good(fam, k)
        cert_doc = _certificate_doc(fam, cert)
        if fam.m > 2 ** (k - 1):
            cert_doc["knill_lower_bound"] = _frac(good_sets.knill_lower_bound(fam, k))
        doc["good_set"] = cert_doc
    except ValueError as exc:
        doc["good_set"] = {"skipped": str(exc)}

    projected, _ = project_away_top(fam, k)
    proj_freqs = frequencies(projected)
    proj_max = max(proj_freqs) if proj_freqs else Fraction(0)
    alpha = args.alpha if args.alpha is not None else proj_max
    if alpha == 0:
        alpha = Fraction(3, 10)  # trivial projection; any admissible ratio works
    if entropy.below_alpha_threshold(alpha) and proj_max <= alpha:
        rep = entropy.check_union_entropy_inequality(projected, alpha)
        doc["union_entropy"] = {
            "alpha": _frac(alpha),
            "lambda": _bits(rep.lam),
            "projected_max_frequency": _frac(rep.max_frequency),
            "lhs_bits": _bits(rep.lhs),
            "rhs_bits": _bits(rep.rhs),
            "holds": rep.holds,
        }
    else:
        doc["union_entropy"] = {
            "skipped": f"projected max frequency {_frac(proj_max)} is not below "
                       f"the threshold (3-sqrt5)/2 ~ {entropy.ALPHA_THRESHOLD:.6f}",
        }
    print(json.dumps(doc, indent=2))
    return 0


def _sweep_doc(report: verifier.SweepReport) -> dict:
    ks = sorted(set(report.strict_counts) | set(report.equality_counts))
    return {
        "n": report.n,
        "require_empty": report.require_empty,
        "count_enumerated": report.count_enumerated,
        "complete": report.complete,
        "jobs": report.jobs,
        "elapsed_seconds": round(report.elapsed_seconds, 3),
        "per_k": {str(k): {"strict": report.strict_counts.get(k, 0),
                           "equality": report.equality_counts.get(k, 0)}
                  for k in ks},
        "equality_families": {
            str(k): [formats.family_to_json_obj(f) for f in fams]
            for k, fams in sorted(report.equality_families.items())},
        "violations": 0,
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    ks = None if args.k is None else (args.k,)
    try:
        report = verifier.sweep(args.n, ks=ks, require_empty=args.require_empty,
                                jobs=args.jobs, budget_seconds=args.budget_seconds)
    except verifier.SweepViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(_sweep_doc(report), indent=2))
    return 0


def _cmd_random_check(args: argparse.Namespace) -> int:
    from .family import is_union_closed, kth_frequency
    violations = []
    checked = 0
    for i in range(args.count):
        fam = verifier.random_union_closed(args.n, args.generators, args.seed + i)
        if not is_union_closed(fam):
            violations.append({"seed": args.seed + i, "reason": "closure failed"})
            continue
        supp_size = support(fam).bit_count()
        for k in range(2, supp_size + 1):
            checked += 1
            chk = verifier.check_nagel(fam, k, assume_union_closed=True)
            if chk.status == "violation":
                violations.append({"seed": args.seed + i, "k": k,
                                   "family": formats.family_to_json_obj(fam)})
                continue
            if fam.m > 2 ** (k - 1):
                cert = good_sets.minimal_k_good(fam, k)
                if (not good_sets.verify_union_injection(fam, cert)
                        or cert.cover_bound > kth_frequency(fam, k)):
                    violations.append({"seed": args.seed + i, "k": k,
                                       "reason": "certificate failed",
                                       "family": formats.family_to_json_obj(fam)})
    doc = {
        "n": args.n,
        "generators": args.generators,
        "count": args.count,
        "seed": args.seed,
        "rng": "random.Random (Mersenne Twister), per-family seed = seed + index",
        "checks": checked,
        "violations": violations,
    }
    print(json.dumps(doc, indent=2))
    return 0 if not violations else 1


_DISPATCH = {
    "construct": _cmd_construct,
    "analyze": _cmd_analyze,
    "bounds": _cmd_bounds,
    "good-set": _cmd_good_set,
    "verify": _cmd_verify,
    "random-check": _cmd_random_check,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except formats.FamilyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
