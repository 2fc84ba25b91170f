"""Command line entry point: ``jacwalk <subcommand> --config <path> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import InvariantViolation, JacwalkError
from .generator import WalkConfig, emit_stream
from .harness import (
    ExperimentConfig,
    export,
    find_curves,
    run_experiment,
    summarize,
    verify_lemmas,
    _rng,
)
from .jacobian import MAX_JACOBIAN_ENUM_PRIME, random_element
from .lincomp import profile


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _load_config(args) -> ExperimentConfig:
    try:
        obj = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise SystemExit(f"jacwalk: cannot read config {args.config}: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit(f"jacwalk: config {args.config} is not valid JSON: {exc}")
    return ExperimentConfig.from_json(obj, seed=args.seed, out=args.out, workers=getattr(args, "workers", None))


def _write(args, text: str) -> None:
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise SystemExit(f"jacwalk: cannot write {args.out}: {exc}")
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_curve_search(args, cfg: ExperimentConfig) -> str:
    found = [c for p in cfg.primes for c in find_curves(p, cfg.curves_per_prime, cfg.seed)]
    if args.format == "json":
        return json.dumps([c.to_json() for c in found], indent=1) + "\n"
    rows = [
        [c.curve.p, *c.curve.b, c.info.n1, c.info.n2, c.info.order, c.t, json.dumps(c.D.to_json())]
        for c in found
    ]
    return _csv(["p", "b1", "b2", "b3", "b4", "b5", "n1", "n2", "group_order", "t", "D"], rows)


def _selected_walk(args, cfg: ExperimentConfig):
    p = args.prime if args.prime is not None else cfg.primes[0]
    choices = find_curves(p, cfg.curves_per_prime, cfg.seed)
    if not 0 <= args.curve_index < len(choices):
        raise SystemExit(f"jacwalk: curve index {args.curve_index} out of range")
    ch = choices[args.curve_index]
    # same W0 as the experiment run draws for this curve
    W0 = random_element(ch.curve, _rng(cfg.seed, "w0", p, args.curve_index))
    tag = args.tag or cfg.tags[0]
    N = args.length or min(ch.t, cfg.n_max)
    wcfg = WalkConfig(ch.curve, ch.D, W0, ch.t)
    return wcfg, tag, emit_stream(wcfg, tag, N)


def cmd_walk(args, cfg: ExperimentConfig) -> str:
    wcfg, tag, stream = _selected_walk(args, cfg)
    if args.format == "json":
        return json.dumps({
            "curve": wcfg.curve.to_json(),
            "D": wcfg.D.to_json(),
            "W0": wcfg.W0.to_json(),
            "t": wcfg.t,
            "tag": tag,
            "values": list(stream.values),
            "poles": sorted(stream.pole_positions),
        }, indent=1) + "\n"
    buf = io.StringIO()
    stream.write_csv(buf)
    return buf.getvalue()


def cmd_profile(args, cfg: ExperimentConfig) -> str:
    wcfg, tag, stream = _selected_walk(args, cfg)
    prof = profile(stream.values, wcfg.curve.p)
    if args.format == "json":
        return json.dumps({"tag": tag, "t": wcfg.t, "L": list(prof.L_of_N)}) + "\n"
    buf = io.StringIO()
    prof.write_csv(buf)
    return buf.getvalue()


def cmd_experiment(args, cfg: ExperimentConfig) -> str:
    records = run_experiment(cfg)
    summary = summarize(records)
    print(json.dumps(summary.to_json()), file=sys.stderr)
    return export(records, args.format, timing=args.timing)


def cmd_verify_lemmas(args, cfg: ExperimentConfig) -> str:
    reports = []
    for p in cfg.primes:
        if p > MAX_JACOBIAN_ENUM_PRIME:
            print(f"jacwalk: skipping p = {p} (> {MAX_JACOBIAN_ENUM_PRIME})", file=sys.stderr)
            continue
        for ch in find_curves(p, cfg.curves_per_prime, cfg.seed):
            reports.append(verify_lemmas(p, ch.curve))
    if args.format == "json":
        return json.dumps([r.to_json() for r in reports], indent=1) + "\n"
    rows = [
        [r.p, *r.curve.b, r.u_size, r.theta_size, r.max_theta_intersection, r.pairs_checked,
         r.max_common_zeros, r.translates_contained]
        for r in reports
    ]
    header = ["p", "b1", "b2", "b3", "b4", "b5", "u_size", "theta_size", "max_theta_intersection",
              "pairs_checked", "max_common_zeros", "translates_contained"]
    return _csv(header, rows)


COMMANDS = {
    "curve-search": cmd_curve_search,
    "walk": cmd_walk,
    "profile": cmd_profile,
    "experiment": cmd_experiment,
    "verify-lemmas": cmd_verify_lemmas,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacwalk", description="Genus-2 Jacobian walks and their linear complexity.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON experiment config")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--seed", type=_u64, help="override the config seed")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        if name in ("walk", "profile"):
            sp.add_argument("--prime", type=int, help="prime to use (default: first in config)")
            sp.add_argument("--curve-index", type=int, default=0)
            sp.add_argument("--tag", help="coordinate tag (default: first in config)")
            sp.add_argument("--length", type=int, help="stream length (default: min(t, n_max))")
        if name == "experiment":
            sp.add_argument("--workers", type=int, default=1)
            sp.add_argument("--timing", action="store_true", help="include wall_time (breaks byte-stability)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        text = COMMANDS[args.command](args, cfg)
    except InvariantViolation as exc:
        print(f"jacwalk: invariant violated: {exc}", file=sys.stderr)
        print(json.dumps(exc.counterexample, default=str), file=sys.stderr)
        return 3
    except (JacwalkError, ValueError, KeyError) as exc:
        print(f"jacwalk: {exc}", file=sys.stderr)
        return 2
    _write(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
