"""Command line: ``epdiff1d run | compare | verify``.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure
(step failure, divergence, failed verification), 3 I/O error.
"""

import argparse
import json
import sys

from .config import ConfigError, PRESETS, parse_config, preset, with_overrides
from .errors import DivergenceError, RealityError, StepFailure

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


def _parser():
    p = argparse.ArgumentParser(prog="epdiff1d", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, text in (("run", "integrate one configuration"),
                       ("compare", "schemes vs the RK4 reference")):
        s = sub.add_parser(name, help=text)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", metavar="PATH", help="YAML run configuration")
        src.add_argument("--preset", metavar="NAME", help=f"one of: {', '.join(PRESETS)}")
        s.add_argument("--out", metavar="DIR", help="output directory")
        s.add_argument("--scheme", metavar="NAME")
        s.add_argument("--dt", type=float, metavar="X")
        s.add_argument("--tfinal", type=float, metavar="X")
        s.add_argument("--nmodes", type=int, metavar="N")
        s.add_argument("--alpha", type=float, metavar="X")
    v = sub.add_parser("verify", help="oracle-equivalence and invariant checks")
    v.add_argument("--out", metavar="FILE", help="also write the JSON report here")
    v.add_argument("--seed", type=int, default=0)
    return p


def _load(args):
    cfg = parse_config(args.config) if args.config else preset(args.preset)
    return with_overrides(cfg, scheme=args.scheme, dt=args.dt, t_final=args.tfinal,
                          n_modes=args.nmodes, alpha=args.alpha, out=args.out)


def _dispatch(args):
    from . import harness

    if args.command == "verify":
        report = harness.cmd_verify(seed=args.seed)
        text = json.dumps(report, indent=2)
        print(text)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        return EXIT_OK if report["passed"] else EXIT_NUMERIC
    cfg = _load(args)
    if args.command == "run":
        result = harness.cmd_run(cfg)
        rec = result.record
        status = "completed" if rec.completed else f"FAILED: {rec.failure}"
        print(f"{cfg.scheme}: {len(rec.times) - 1} steps, {status}; wrote {result.directory}")
        return EXIT_OK if rec.completed else EXIT_NUMERIC
    report = harness.cmd_compare(cfg)
    show = lambda x, f: "-" if x is None else format(x, f)  # noqa: E731
    for row in report["table"]:
        print(f"{row['scheme']:>10} dt={row['dt']:<8g} {row['status']:>9} "
              f"err_inf={show(row['err_inf'], '.3e')} order={show(row['order_inf'], '.3f')}")
    if report["note"]:
        print(report["note"])
    print(f"wrote {cfg.output.directory}")
    return EXIT_OK if report["all_completed"] else EXIT_NUMERIC


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        # a missing --config file is a usage problem, not an output failure
        if args.command != "verify" and args.config and exc.filename == args.config:
            print(f"configuration error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (StepFailure, DivergenceError, RealityError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
