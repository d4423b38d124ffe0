"""Command line entry point ``mq-spinsim``.

Exit codes: 0 success, 2 argument error, 3 invariant breach with --strict,
4 I/O error.
"""
import argparse
import configparser
import sys

import numpy as np

from .coherence import SignalParams
from .coupling import CouplingModel
from .exceptions import DimensionBudgetError
from .experiment import FIGURES, ExperimentConfig, reproduce_figure, run_sweep, write_output
from .thermal import ThermalConfig

EXIT_OK, EXIT_ARGS, EXIT_INVARIANT, EXIT_IO = 0, 2, 3, 4

OBSERVABLES = ("coherences", "concurrence", "eof")
BOOL_KEYS = {"strict", "normalized"}


def parse_pairs(text):
    if text.strip().lower() == "all":
        return "all"
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            m, n = (int(x) for x in item.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad pair {item!r}; expected M:N")
        pairs.append((m, n))
    return pairs


def parse_observables(text):
    obs = {o.strip() for o in text.split(",") if o.strip()}
    unknown = obs - set(OBSERVABLES)
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown observables {sorted(unknown)}")
    return obs


def parse_orders(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


def load_config_file(path):
    """Read a flat ``key = value`` file whose keys are long flag names."""
    parser = configparser.ConfigParser(interpolation=None)
    with open(path) as f:
        parser.read_string("[run]\n" + f.read(), source=str(path))
    out = {}
    for key, value in parser["run"].items():
        dest = key.strip().lstrip("-").replace("-", "_")
        if dest in BOOL_KEYS:
            out[dest] = value.strip().lower() in ("1", "true", "yes", "on")
        else:
            out[dest] = value.strip()
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="mq-spinsim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one tau sweep")
    run.add_argument("--config", help="flat key = value file of flag defaults")
    run.add_argument("--spins", type=int, default=8)
    run.add_argument("--model", choices=("nn", "full"), default="full")
    run.add_argument("--d-nn", type=float, default=1.0, help="nearest-neighbour coupling, 1/s")
    run.add_argument("--beta-norm", type=float, default=10.0)
    run.add_argument("--norm", choices=("larmor", "spectral"), default="larmor",
                     help="how beta*||H|| maps to the Zeeman exponent")
    run.add_argument("--b", type=float, default=None, help="set beta*w0 directly")
    run.add_argument("--tau-min", type=float, default=0.0)
    run.add_argument("--tau-max", type=float, default=20.0)
    run.add_argument("--tau-steps", type=int, default=201)
    run.add_argument("--pairs", type=parse_pairs, default="all")
    run.add_argument("--orders", type=parse_orders, default=None,
                     help="comma-separated orders to output (default: all even)")
    run.add_argument("--observables", type=parse_observables, default="coherences,concurrence,eof")
    run.add_argument("--signal-offset", type=float, default=None, help="RF offset, rad/s")
    run.add_argument("--signal-tmax", type=float, default=None)
    run.add_argument("--signal-steps", type=int, default=64)
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--out")
    run.add_argument("--normalized", action="store_true", help="add J<n>_norm columns")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--strict", action="store_true", help="exit 3 on any invariant breach")

    rep = sub.add_parser("reproduce", help="regenerate the data behind a figure")
    rep.add_argument("figure", choices=FIGURES)
    rep.add_argument("--out-dir", required=True)
    rep.add_argument("--tau-max", type=float, default=20.0)
    rep.add_argument("--tau-steps", type=int, default=201)
    rep.add_argument("--workers", type=int, default=1)
    rep.add_argument("--strict", action="store_true")
    return p, run


def config_from_args(args):
    signal = None
    if args.signal_offset is not None:
        tmax = args.signal_tmax if args.signal_tmax is not None else 0.0
        signal = SignalParams(args.signal_offset, np.linspace(0.0, tmax, args.signal_steps))
    obs = args.observables
    return ExperimentConfig(
        n_spins=args.spins,
        model=CouplingModel(args.model, args.d_nn),
        thermal=ThermalConfig(args.beta_norm, args.norm, args.b),
        tau_start=args.tau_min,
        tau_end=args.tau_max,
        tau_steps=args.tau_steps,
        pairs=args.pairs,
        orders=args.orders,
        coherences="coherences" in obs,
        concurrences="concurrence" in obs,
        eof="eof" in obs,
        signal=signal,
        workers=args.workers,
    )


def _report(result, stream=sys.stderr):
    for name, s in result.check_summary().items():
        if not s["ok"]:
            print(f"invariant breach: {name} worst={s['worst']:.3e} "
                  f"threshold={s['threshold']:.1e}", file=stream)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, run_parser = build_parser()

    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and argv and argv[0] == "run":
        try:
            values = load_config_file(known.config)
        except (OSError, configparser.Error) as exc:
            print(f"mq-spinsim: cannot read config {known.config}: {exc}", file=sys.stderr)
            return EXIT_ARGS
        valid = {a.dest for a in run_parser._actions} - {"help", "config"}
        unknown = sorted(set(values) - valid)
        if unknown:
            print(f"mq-spinsim: unknown keys in {known.config}: {unknown}", file=sys.stderr)
            return EXIT_ARGS
        run_parser.set_defaults(**values)

    args = parser.parse_args(argv)
    if args.command == "run" and not args.out:
        parser.error("run: --out is required (flag or config file)")

    try:
        if args.command == "run":
            cfg = config_from_args(args)
            result = run_sweep(cfg)
            write_output(result, args.format, args.out, normalized=args.normalized)
            results = [result]
        else:
            results = list(reproduce_figure(
                args.figure, args.out_dir, tau_steps=args.tau_steps,
                tau_end=args.tau_max, workers=args.workers,
            ).values())
    except (ValueError, DimensionBudgetError, argparse.ArgumentTypeError) as exc:
        print(f"mq-spinsim: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"mq-spinsim: {exc}", file=sys.stderr)
        return EXIT_IO

    breached = [r for r in results if not r.passed]
    for r in breached:
        _report(r)
    if breached and args.strict:
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
