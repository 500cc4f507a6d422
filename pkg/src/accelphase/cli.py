"""Command-line front end: ``accelphase {sweep,figure,crossing,validate}``.

Exit codes: 0 success, 1 validation failure, 2 bad arguments, 3 out-of-scope
request. Options may also come from a ``key = value`` file given with
``--config``; a flag on the command line wins over the file.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .figures import FIGURES, OutOfScopeError, make_figure
from .model import InvalidParameterError
from .sweep import QUANTITIES, VARIABLES, SweepError, SweepSpec, run_sweep, write_csv

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_SCOPE = 0, 1, 2, 3
BOOLEAN_KEYS = {"data_only"}


def _accel(text):
    if text == "a_star":
        return text
    return _number(text)


def _number(text):
    """Float, accepting ``pi`` multiples such as ``pi/4`` or ``0.5pi``."""
    t = text.strip().lower().replace(" ", "")
    try:
        if "pi" in t:
            num, _, den = t.partition("/")
            coef = num.replace("*", "").replace("pi", "") or "1"
            value = float(coef) * math.pi / (float(den) if den else 1.0)
        else:
            value = float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def _z(text):
    if text.strip().lower() in ("none", "free", "inf"):
        return None
    return _number(text)


def _csv_list(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_point_options(p):
    p.add_argument("--accel", type=_accel, help="a/omega0, or 'a_star' for the crossing value")
    p.add_argument("--theta", type=_number, help="initial polar angle (accepts pi/4)")
    p.add_argument("--z", type=_z, help="mirror distance z*omega0; 'none' for free space")
    p.add_argument("--gamma0", type=_number, help="gamma0/omega0 (default 1e-3)")
    p.add_argument("--omega-eff", type=_number, help="Omega/omega0 (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="accelphase", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value file; command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep one parameter and write a CSV")
    p.add_argument("--variable", choices=VARIABLES, required=True)
    p.add_argument("--start", type=_number, required=True)
    p.add_argument("--stop", type=_number, required=True)
    p.add_argument("--count", type=int, default=200)
    _add_point_options(p)
    p.add_argument("--scenarios", type=_csv_list, default=("linear", "circular"))
    p.add_argument("--methods", type=_csv_list, default=("perturbative",))
    p.add_argument("--quantity", choices=QUANTITIES, default="delta")
    p.add_argument("--out", required=True, help="CSV path")
    p.add_argument("--plot", help="optional plot path (format from suffix, e.g. .svg)")
    p.add_argument("--jobs", type=_positive_int, default=1)

    p = sub.add_parser("figure", help="reproduce a figure: CSV per panel plus a vector plot")
    p.add_argument("fig", type=int, choices=sorted(FIGURES))
    p.add_argument("--panel", help="panel key (a/b/c, left); default all")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--data-only", action="store_true", help="write CSV only")
    p.add_argument("--jobs", type=_positive_int, default=1)

    sub.add_parser("crossing", help="solve the phase and rate crossing accelerations")

    p = sub.add_parser("validate", help="run the oracle cross-checks")
    p.add_argument("--profile", choices=("default", "strict"), default="default")
    p.add_argument("--checks", type=_csv_list, help="comma-separated subset of check names")
    return parser


def read_config(path):
    """Parse a ``key = value`` file (``#`` comments, blank lines ignored)."""
    entries = []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"{path}:{n}: expected key = value")
        entries.append((key.strip().replace("-", "_"), value.strip()))
    return entries


def _config_tokens(entries):
    tokens = []
    for key, value in entries:
        flag = "--" + key.replace("_", "-")
        if key in BOOLEAN_KEYS:
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(flag)
        else:
            tokens.extend([flag, value])
    return tokens


def _with_config(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if known.config is None:
        return rest
    try:
        tokens = _config_tokens(read_config(known.config))
    except (OSError, ValueError) as exc:
        raise _UsageError(f"config: {exc}") from exc
    # insert after the subcommand so later command-line flags override
    for i, tok in enumerate(rest):
        if not tok.startswith("-"):
            return rest[: i + 1] + tokens + rest[i + 1:]
    return rest


class _UsageError(Exception):
    pass


def cmd_sweep(args) -> int:
    fixed = {k: getattr(args, k) for k in ("accel", "theta", "gamma0", "omega_eff") if getattr(args, k) is not None}
    fixed["z"] = args.z
    if fixed.get("accel") == "a_star":
        from .phase import phase_crossing

        fixed["accel"] = phase_crossing().accel
    spec = SweepSpec(args.variable, args.start, args.stop, args.count, fixed,
                     args.scenarios, args.methods, args.quantity)
    rows = run_sweep(spec, jobs=args.jobs)
    write_csv(args.out, spec.variable, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot:
        from .figures import Panel
        from .plotting import render_panels

        panel = Panel("", "", spec.variable, spec.start, spec.stop, {}, spec.quantity)
        render_panels([("", panel.xlabel, panel.ylabel, rows)], args.plot)
        print(f"wrote {args.plot}")
    return EXIT_OK


def cmd_figure(args) -> int:
    for path in make_figure(args.fig, args.out, args.panel, args.count, args.data_only, args.jobs):
        print(f"wrote {path}")
    return EXIT_OK


def cmd_crossing(args) -> int:
    from .dissipator import rate_crossing
    from .phase import phase_crossing

    phase = phase_crossing()
    rate = rate_crossing()
    print(f"phase crossing: linear and circular corrections agree at a/omega0 = {phase.accel:.10f}")
    print(f"rate crossing: relative transition rates agree at a/omega0 = {rate.accel:.10f} (Gamma = {rate.value:.10f})")
    print(f"a_star={phase.accel!r}")
    print(f"a_star_residual={phase.residual!r}")
    print(f"a_gamma={rate.accel!r}")
    print(f"a_gamma_residual={rate.residual!r}")
    print(f"gamma_at_a_gamma={rate.value!r}")
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validation import CHECKS, run_checks

    if args.checks:
        unknown = sorted(set(args.checks) - set(CHECKS))
        if unknown:
            raise _UsageError(f"unknown checks: {', '.join(unknown)}")
    results = run_checks(args.profile, args.checks)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return EXIT_VALIDATION
    print(f"all {len(results)} checks passed ({args.profile} profile)")
    return EXIT_OK


COMMANDS = {"sweep": cmd_sweep, "figure": cmd_figure, "crossing": cmd_crossing, "validate": cmd_validate}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_with_config(argv))
    except SystemExit as exc:  # argparse: --help or bad arguments
        return int(exc.code or 0)
    except _UsageError as exc:
        print(f"accelphase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except OutOfScopeError as exc:
        print(f"accelphase: out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (_UsageError, SweepError, InvalidParameterError, KeyError, ValueError, OSError) as exc:
        print(f"accelphase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
