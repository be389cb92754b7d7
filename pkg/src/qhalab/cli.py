"""Command-line entry point ``qha``."""

from __future__ import annotations

import argparse
import sys

from . import qhaop
from .errors import ConfigError, FormatError
from .experiments import EXPERIMENTS, ExperimentConfig, run, run_props

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qha", description="Finite-grid quantum harmonic analysis experiments.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        e = sub.add_parser(name, help=f"run the {name} experiment")
        e.add_argument("--config", help="JSON or TOML config file")
        e.add_argument("--out", help="write the table here instead of stdout")
        e.add_argument("--format", choices=("csv", "json"))
        e.add_argument("--seed", type=int)
        e.add_argument("--threads", type=int, default=1)
        if name == "props":
            e.add_argument("--repeats", type=int)
            e.add_argument("--break-convention", action="store_true", help=argparse.SUPPRESS)
    s = sub.add_parser("save", help="convert a .npy array to a QHAOP file")
    s.add_argument("source")
    s.add_argument("dest")
    s.add_argument("--kind", choices=qhaop.KINDS)
    lo = sub.add_parser("load", help="print the header of a QHAOP file and check its payload")
    lo.add_argument("source")
    lo.add_argument("--npy", help="also write the decoded array to this .npy file")
    return p


def _config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        data = ExperimentConfig.load(args.config, args.command).echo()
    overrides = {"seed": args.seed, "format": args.format, "out": args.out}
    if args.command == "props" and args.repeats is not None:
        overrides["repeats"] = args.repeats
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_mapping(data, args.command)


def _run_experiment(args) -> int:
    cfg = _config(args)
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    if args.command == "props":
        table = run_props(cfg, args.threads, broken_convention=args.break_convention)
    else:
        table = run(cfg, args.threads)
    text = table.render(cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for msg in table.failures:
        print(f"FAIL {msg}", file=sys.stderr)
    return EXIT_PASS if table.passed else EXIT_FAIL


def _save(args) -> int:
    import numpy as np

    try:
        arr = np.load(args.source)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read {args.source}: {exc}") from exc
    qhaop.save(args.dest, arr, args.kind)
    return EXIT_PASS


def _load(args) -> int:
    import numpy as np

    with open(args.source) as fh:
        text = fh.read()
    kind, value = qhaop.loads(text)
    print(text.split("\n", 1)[0])
    if args.npy:
        if kind == "measure":
            value = value.to_grid()
        np.save(args.npy, value)
    return EXIT_PASS


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "save":
            return _save(args)
        if args.command == "load":
            return _load(args)
        return _run_experiment(args)
    except (ConfigError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
