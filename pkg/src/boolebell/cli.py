"""Command-line interface.

Exit codes: 0 = consistent / no violation, 1 = inconsistent data or a
violated inequality, 2 = usage or input error. Report-only commands
(``bounds``, ``scan``, ``mc``) exit 0 on success.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .bounds import boole_intersection_bounds, boole_union_bounds
from .constraints import ConstraintError, parse_constraints
from .core import LinearInequality, as_rational, mask_subset
from .errors import BooleBellError
from .game import DEFAULT_TARGET, WEIGHT_NAMES, CorrelationTarget, solve_mixing
from .montecarlo import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    empirical_bell_effect,
    empirical_ch,
    empirical_lhv_ch,
)
from .polytope import check_membership
from .quantum import AngleConfig, ch_value, scan_ch, write_scan_csv
from .rng import RngSpec

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def fmt_float(x: float) -> str:
    return f"{x:.12g}"


def fmt_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return fmt_float(float(x))


def json_number(x):
    """Rationals become "a/b" strings; floats carry the same 12 digits as text output."""
    if isinstance(x, (Fraction, int)):
        return str(Fraction(x))
    return float(fmt_float(float(x)))


def _emit(args, text_lines, payload):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _rationals(text: str) -> list[Fraction]:
    try:
        return [as_rational(tok) for tok in text.split(",")]
    except (BooleBellError, TypeError, ValueError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}") from None


def _inequality_json(ineq: LinearInequality) -> dict:
    return {
        "terms": [{"subset": list(s), "coefficient": str(c)} for s, c in ineq.terms().items()],
        "sense": ineq.sense,
        "constant": str(ineq.constant),
        "text": str(ineq),
    }


def _atom_label(atom: int) -> str:
    return "{" + ",".join(map(str, mask_subset(atom))) + "}"


# -- commands --------------------------------------------------------------

def cmd_check(args) -> int:
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    cfile = parse_constraints(text)
    verdict = check_membership(cfile.to_assignment())
    lines = [f"verdict: {verdict.status}"]
    payload = {"command": "check", "events": cfile.n, "verdict": verdict.status}
    if verdict.inside:
        support = verdict.witness.support()
        if args.witness:
            lines.append("witness:")
            lines += [f"  atom {_atom_label(a)}: {w}" for a, w in support.items()]
        payload["witness"] = [
            {"atom": list(mask_subset(a)), "weight": str(w)} for a, w in support.items()
        ]
        code = EXIT_OK
    else:
        lines.append(f"certificate: {verdict.certificate}")
        lines.append(f"violation: {verdict.violation}")
        payload["certificate"] = _inequality_json(verdict.certificate)
        payload["violation"] = str(verdict.violation)
        code = EXIT_VIOLATED
    _emit(args, lines, payload)
    return code


def cmd_bounds(args) -> int:
    if args.union is None and args.intersection is None:
        raise UsageError("give --union and/or --intersection marginals")
    lines, reports = [], []
    for target, raw, fn in (("union", args.union, boole_union_bounds),
                            ("intersection", args.intersection, boole_intersection_bounds)):
        if raw is None:
            continue
        report = fn(_rationals(raw), witnesses=args.witnesses)
        lines.append(f"{target}: {report.interval}")
        entry = {"target": target, "lower": str(report.interval.lower),
                 "upper": str(report.interval.upper)}
        if report.witnesses:
            for label, dist in zip(("lower_witness", "upper_witness"), report.witnesses):
                support = dist.support()
                lines.append(f"  {label}: " + ", ".join(
                    f"{_atom_label(a)}={w}" for a, w in support.items()))
                entry[label] = [{"atom": list(mask_subset(a)), "weight": str(w)}
                                for a, w in support.items()]
        reports.append(entry)
    _emit(args, lines, {"command": "bounds", "bounds": reports})
    return EXIT_OK


def cmd_game(args) -> int:
    target = DEFAULT_TARGET if args.target is None else CorrelationTarget.parse(_rationals(args.target))
    sol = solve_mixing(target)
    lines = [
        f"target: equal = {target.same_when_equal}, AB = {target.same_AB}, "
        f"BC = {target.same_BC}, AC = {target.same_AC}"
    ]
    payload = {
        "command": "game",
        "target": {"equal": str(target.same_when_equal), "AB": str(target.same_AB),
                   "BC": str(target.same_BC), "AC": str(target.same_AC)},
        "feasible": sol.feasible,
        "negative_components": list(sol.negative_components),
    }
    if sol.weights is None:
        lines.append("weights: undetermined (singular system)")
        payload["weights"] = None
    else:
        lines += [f"{name} = {w}" for name, w in zip(WEIGHT_NAMES, sol.weights)]
        payload["weights"] = {name: str(w) for name, w in zip(WEIGHT_NAMES, sol.weights)}
    if sol.feasible:
        lines.append("feasible")
    elif sol.negative_components:
        named = dict(zip(WEIGHT_NAMES, sol.weights))
        lines.append("infeasible: " + ", ".join(
            f"{name} = {named[name]}" for name in sol.negative_components))
    else:
        lines.append("infeasible")
    _emit(args, lines, payload)
    return EXIT_OK if sol.feasible else EXIT_VIOLATED


def _angle_config(args) -> AngleConfig:
    if args.paper_angles:
        return AngleConfig.default()
    if args.pi_angles is not None:
        values = _rationals(args.pi_angles)
        if len(values) != 4:
            raise UsageError("--pi-angles needs four values")
        return AngleConfig.from_pi_multiples(*values)
    if args.angles is not None:
        try:
            values = [float(tok) for tok in args.angles.split(",")]
        except ValueError:
            raise UsageError(f"bad angle list {args.angles!r}") from None
        if len(values) != 4:
            raise UsageError("--angles needs four values")
        return AngleConfig(*values)
    return AngleConfig.default()


def _pi_text(r: Fraction) -> str:
    if r == 0:
        return "0"
    if r == 1:
        return "pi"
    return f"{r}*pi"


def _add_angle_flags(p):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--paper-angles", action="store_true",
                       help="alpha1=pi/3, alpha2=pi, beta1=0, beta2=2pi/3 (the default)")
    group.add_argument("--pi-angles", metavar="A1,A2,B1,B2",
                       help="angles as rational multiples of pi, e.g. 1/3,1,0,2/3")
    group.add_argument("--angles", metavar="A1,A2,B1,B2", help="angles in radians")


def cmd_bell(args) -> int:
    config = _angle_config(args)
    exact = config.exact
    if exact:
        try:
            br = ch_value(config, exact=True)
        except BooleBellError:
            exact = False
    if not exact:
        br = ch_value(config)
    names = ("p(a1,b1|++)", "p(a1,b2|++)", "p(a2,b2|++)", "p(a2,b1|++)", "p1(a1|+)", "p2(b2|+)")
    values = (br.joint_11, br.joint_12, br.joint_22, br.joint_21, br.marginal_a1, br.marginal_b2)
    if config.exact:
        angle_text = ", ".join(f"{n} = {_pi_text(r)}" for n, r in
                               zip(("alpha1", "alpha2", "beta1", "beta2"), config.pi_multiples))
    else:
        angle_text = ", ".join(f"{n} = {fmt_float(a)}" for n, a in
                               zip(("alpha1", "alpha2", "beta1", "beta2"), config.angles))
    lines = [f"angles: {angle_text}", f"path: {'exact' if exact else 'floating'}"]
    lines += [f"{n} = {fmt_number(v)}" for n, v in zip(names, values)]
    lines += [f"total = {fmt_number(br.total)}",
              f"lower_violation = {fmt_number(br.lower_violation)}",
              f"upper_violation = {fmt_number(br.upper_violation)}"]
    payload = {
        "command": "bell",
        "path": "exact" if exact else "floating",
        "angles": [json_number(a) for a in config.angles],
        "terms": {n: json_number(v) for n, v in zip(names, values)},
        "total": json_number(br.total),
        "lower_violation": json_number(br.lower_violation),
        "upper_violation": json_number(br.upper_violation),
    }
    if config.exact:
        payload["pi_multiples"] = [str(r) for r in config.pi_multiples]
    _emit(args, lines, payload)
    return EXIT_VIOLATED if br.violated else EXIT_OK


def cmd_scan(args) -> int:
    report = scan_ch(args.steps)
    if args.output in (None, "-"):
        write_scan_csv(report, sys.stdout)
        return EXIT_OK
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        write_scan_csv(report, fh)
    lo = report.rows[report.argmax_lower]
    hi = report.rows[report.argmax_upper]
    lines = [
        f"rows: {len(report)}",
        f"max lower_violation = {fmt_float(report.max_lower_violation)} at "
        + ",".join(fmt_float(a) for a in lo[:4]),
        f"max upper_violation = {fmt_float(report.max_upper_violation)} at "
        + ",".join(fmt_float(a) for a in hi[:4]),
        f"written: {args.output}",
    ]
    payload = {
        "command": "scan", "steps": report.steps, "rows": len(report), "output": args.output,
        "max_lower_violation": json_number(report.max_lower_violation),
        "argmax_lower": [json_number(a) for a in lo[:4]],
        "max_upper_violation": json_number(report.max_upper_violation),
        "argmax_upper": [json_number(a) for a in hi[:4]],
    }
    _emit(args, lines, payload)
    return EXIT_OK


def _estimate_output(args, kind, est):
    lines = [f"estimate = {fmt_float(est.estimate)}",
             f"standard_error = {fmt_float(est.standard_error)}",
             f"sigma_below_minus_one = {fmt_float(est.lower_sigma)}"]
    payload = {"command": "mc", "kind": kind, "seed": args.seed, "trials": args.trials,
               "estimate": json_number(est.estimate),
               "standard_error": json_number(est.standard_error),
               "sigma_below_minus_one": json_number(est.lower_sigma)
               if math.isfinite(est.lower_sigma) else None}
    _emit(args, lines, payload)


def cmd_mc(args) -> int:
    rng = RngSpec(args.seed, args.stream)
    if args.kind == "ch":
        est = empirical_ch(_angle_config(args), args.trials, rng, workers=args.workers)
        _estimate_output(args, "ch", est)
    elif args.kind == "lhv":
        mixing = [Fraction(1, 16)] * 16 if args.mixing is None else _rationals(args.mixing)
        est = empirical_lhv_ch(mixing, args.trials, rng, workers=args.workers)
        _estimate_output(args, "lhv", est)
    else:
        freqs = empirical_bell_effect(args.trials, rng, workers=args.workers)
        pairs = ("AA", "AB", "BC", "AC")
        lines = [f"same({p[0]},{p[1]}) = {fmt_float(float(freqs.frequency(p)))}" for p in pairs]
        payload = {"command": "mc", "kind": "bell-effect", "seed": args.seed,
                   "trials": args.trials,
                   "frequencies": {p: json_number(float(freqs.frequency(p))) for p in pairs},
                   "counts": freqs.counts}
        _emit(args, lines, payload)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _u64(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boolebell", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[fmt], help="exact consistency check of a constraint file")
    p.add_argument("file", help="constraint file, or - for standard input")
    p.add_argument("--witness", action="store_true", help="print the realizing distribution")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", parents=[fmt], help="Boole bounds from marginals")
    p.add_argument("--union", metavar="P1,P2,...")
    p.add_argument("--intersection", metavar="P1,P2,...")
    p.add_argument("--witnesses", action="store_true", help="also print attaining distributions")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("game", parents=[fmt], help="mixing weights for the question game")
    p.add_argument("--target", metavar="EQ,AB,BC,AC", help="default 1,3/4,3/4,1/4")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("bell", parents=[fmt], help="CH expression under the singlet model")
    _add_angle_flags(p)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("scan", parents=[fmt], help="CH value over a uniform angle grid, as CSV")
    p.add_argument("--steps", type=_positive_int, default=24)
    p.add_argument("--output", help="CSV path (default: standard output)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("mc", parents=[fmt], help="Monte Carlo estimates")
    p.add_argument("kind", choices=("ch", "lhv", "bell-effect"))
    p.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=_u64, default=DEFAULT_SEED)
    p.add_argument("--stream", type=_u64, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--mixing", metavar="W1,...,W16", help="LHV weights (default uniform)")
    _add_angle_flags(p)
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except ConstraintError as exc:
        for d in exc.diagnostics:
            sys.stderr.write(f"{getattr(args, 'file', '<input>')}:{d}\n")
        return EXIT_USAGE
    except (UsageError, BooleBellError, ValueError, TypeError) as exc:
        sys.stderr.write(f"boolebell: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
