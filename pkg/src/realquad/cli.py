"""Command-line entry point.

Exit codes: 0 ok, 1 identity failure, 2 config error, 3 scale cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import (COMMANDS, ConfigError, EXIT_CONFIG, EXIT_SCALE,
                      ScaleCapError, parse_config, run_command)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with flag values "
                   "(explicit flags override)")
    p.add_argument("--q", type=int)
    p.add_argument("--d", help="ascending comma-separated coefficients, "
                   'e.g. "1,0,1" for T^2+1')
    p.add_argument("--prec", type=int, dest="tail_exp",
                   help="Laurent tail exponent (precision)")
    p.add_argument("--seed", type=int)
    p.add_argument("--nmin", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--delta-exp", type=int, dest="delta_exp")
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--c-exp", type=int, dest="c_exp")
    p.add_argument("--max-norm-exp", type=int, dest="max_norm_exp")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--x1", help="explicit target component, "
                   '"top:coeffs,desc:tail" Laurent text')
    p.add_argument("--x2")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"))
    p.add_argument("--out", help="artifact path (stdout when omitted)")
    p.add_argument("--scale-cap", type=int, dest="scale_cap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="realquad",
        description="Exact experiments on Diophantine approximation by "
        "prime elements of real quadratic function fields")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        _add_common(sub.add_parser(name))
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(ns).items()
             if k not in ("command", "config")}
    try:
        if ns.config:
            with open(ns.config) as fh:
                file_flags = json.load(fh)
            if not isinstance(file_flags, dict):
                raise ConfigError("config file must hold a JSON object")
            for k, v in file_flags.items():
                if flags.get(k) is None:
                    flags[k] = v
        cfg = parse_config(ns.command, flags)
        code, text, summary = run_command(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ScaleCapError as exc:
        print(f"scale cap: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    if not cfg.out:
        sys.stdout.write(text)
    print(summary)
    return code


if __name__ == "__main__":
    sys.exit(main())
