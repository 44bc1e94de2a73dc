"""Command line: ``mealylearn {learn,bench,project,compose,profile}``.

On failure the process exits nonzero and prints ``error[<category>]: <message>``
to stderr.
"""

import argparse
import json
import sys
from pathlib import Path

from . import io as mio
from .benchgen import decomposition_profile
from .errors import AlphabetError, CompositionError, SearchLimitError
from .experiments import BenchParams, ExperimentConfig, bench, learn
from .mealy import OutputMap, compose, indicator_map, minimize, project
from .oracle import WpConfig

EXIT_CODES = {"usage": 2, "alphabet": 3, "composition": 4, "io": 5, "resource": 6, "format": 7}


class CliError(Exception):
    def __init__(self, category, message):
        self.category = category
        super().__init__(message)


def _add_oracle_args(p):
    p.add_argument("--oracle", choices=["exact", "random-wp"], default=None)
    p.add_argument("--seed", type=int, default=None, help="Wp random seed")
    p.add_argument("--max-tests", type=int, default=None)
    p.add_argument("--middle-length", type=float, default=None, help="expected random infix length")
    p.add_argument("--depth-bound", type=int, default=None, help="maximum random infix length")


def _wp_from(args, base=None):
    base = base or WpConfig()
    return WpConfig(
        random_seed=base.random_seed if args.seed is None else args.seed,
        max_tests=base.max_tests if args.max_tests is None else args.max_tests,
        expected_random_middle_length=(
            base.expected_random_middle_length if args.middle_length is None else args.middle_length
        ),
        depth_bound=base.depth_bound if args.depth_bound is None else args.depth_bound,
    )


def build_parser():
    parser = argparse.ArgumentParser(prog="mealylearn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn one target with L* and/or OL*")
    p.add_argument("target", nargs="?", help="machine file (or give --config)")
    p.add_argument("--config", help="JSON experiment configuration")
    p.add_argument("--algorithms", nargs="+", choices=["lstar", "olstar"], default=None)
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--out", default=None)
    _add_oracle_args(p)

    p = sub.add_parser("bench", help="compare L* and OL* on generated benchmarks")
    p.add_argument("--family", choices=["switching", "interleaving", "random"], default="switching")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--bench-seed", type=int, default=0, help="seed for instance generation")
    p.add_argument("--components", type=int, default=3)
    p.add_argument("--min-states", type=int, default=4)
    p.add_argument("--max-states", type=int, default=6)
    p.add_argument("--inputs", type=int, default=2, help="inputs per component (interleaving, random)")
    p.add_argument("--outputs", type=int, default=2, help="outputs per component")
    p.add_argument("--disjoint-outputs", action="store_true", help="interleaving: no shared outputs")
    p.add_argument("--out", default="bench-results")
    _add_oracle_args(p)

    p = sub.add_parser("project", help="write minimised projections and the decomposition profile")
    p.add_argument("machine")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--output", help="output symbol to project onto")
    g.add_argument("--all", action="store_true")
    p.add_argument("--out", default="projections")

    p = sub.add_parser("compose", help="recompose component machines along output maps")
    p.add_argument("parts", nargs="+", help="component machine files, in map-index order")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help="output-map file: '<index> <target-output> <component-output>' lines")
    g.add_argument("--indicators", nargs="+", help="component i is the projection onto the i-th symbol")
    p.add_argument("--outputs", nargs="+", help="target output alphabet (default: from the maps)")
    p.add_argument("--out", required=True, help="machine file to write")

    p = sub.add_parser("profile", help="print per-output minimised projection sizes")
    p.add_argument("machine")
    return parser


def _read(path):
    try:
        return mio.read_machine(path)
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}") from exc
    except mio.FormatError as exc:
        raise CliError("format", f"{path}: {exc}") from exc


def cmd_learn(args):
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        if args.target:
            cfg.target = args.target
    elif args.target:
        cfg = ExperimentConfig(target=args.target)
    else:
        raise CliError("usage", "give a target machine file or --config")
    if args.algorithms:
        cfg.algorithms = tuple(args.algorithms)
    if args.oracle:
        cfg.oracle = args.oracle
    if args.repetitions:
        cfg.repetitions = args.repetitions
    if args.out:
        cfg.out_dir = args.out
    cfg.wp = _wp_from(args, cfg.wp)
    if isinstance(cfg.target, str):
        _read(cfg.target)
    rows = learn(cfg)
    for r in rows:
        print(f"{r.benchmark} {r.algorithm}: states={r.learned_states} mq={r.mq_count} "
              f"mq_symbols={r.mq_symbols} tests={r.test_count} eq={r.eq_count} {r.status}")
    return 0


def cmd_bench(args):
    params = BenchParams(
        family=args.family,
        count=args.count,
        seed=args.bench_seed,
        components=args.components,
        min_states=args.min_states,
        max_states=args.max_states,
        n_inputs=args.inputs,
        n_outputs=args.outputs,
        shared_outputs=not args.disjoint_outputs,
    )
    rows = bench(params, args.oracle or "random-wp", _wp_from(args), args.out)
    pairs = {}
    for r in rows:
        pairs.setdefault(r.benchmark, {})[r.algorithm] = r.total_symbols
    below = sum(1 for d in pairs.values() if d["olstar"] < d["lstar"])
    print(f"{len(pairs)} instances, OL* used fewer symbols on {below}; results in {args.out}")
    return 0


def cmd_project(args):
    m = _read(args.machine)
    symbols = list(m.outputs) if args.all else [args.output]
    if args.output is not None and args.output not in m.outputs:
        raise CliError("alphabet", f"{args.output!r} is not an output of {args.machine}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for y in symbols:
        mio.write_machine(minimize(project(m, y)), out / f"proj_{y}.txt")
    maps = [indicator_map(y, m.outputs) for y in symbols]
    (out / "indicators.map").write_text(mio.dumps_maps(maps), encoding="utf-8")
    profile = decomposition_profile(m)
    (out / "profile.json").write_text(json.dumps(profile, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(profile))
    return 0


def cmd_compose(args):
    machines = [_read(p) for p in args.parts]
    if args.indicators:
        if len(args.indicators) != len(machines):
            raise CliError("usage", "need one indicator symbol per component")
        target = tuple(args.outputs or args.indicators)
        maps = [indicator_map(y, target) for y in args.indicators]
    else:
        try:
            text = Path(args.map).read_text(encoding="utf-8")
        except OSError as exc:
            raise CliError("io", f"cannot read {args.map}: {exc.strerror}") from exc
        try:
            target, maps = mio.loads_maps(text, len(machines))
        except mio.FormatError as exc:
            raise CliError("format", f"{args.map}: {exc}") from exc
        if args.outputs:
            target = tuple(args.outputs)
        # component outputs a map never hits still belong to its codomain
        maps = [
            OutputMap(target, tuple(dict.fromkeys(list(f.codomain) + list(m.outputs))), f.table)
            for f, m in zip(maps, machines)
        ]
    result = compose(list(zip(machines, maps)), target)
    mio.write_machine(result, args.out)
    print(f"wrote {args.out} ({len(result)} states)")
    return 0


def cmd_profile(args):
    print(json.dumps(decomposition_profile(_read(args.machine))))
    return 0


COMMANDS = {
    "learn": cmd_learn,
    "bench": cmd_bench,
    "project": cmd_project,
    "compose": cmd_compose,
    "profile": cmd_profile,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        category, message = exc.category, str(exc)
    except CompositionError as exc:
        category, message = "composition", f"{exc.kind}: witness word {' '.join(exc.word)}"
    except AlphabetError as exc:
        category, message = "alphabet", str(exc)
    except SearchLimitError as exc:
        category, message = "resource", str(exc)
    except (OSError, ValueError) as exc:
        category, message = "io" if isinstance(exc, OSError) else "usage", str(exc)
    print(f"error[{category}]: {message}", file=sys.stderr)
    return EXIT_CODES[category]


if __name__ == "__main__":
    sys.exit(main())
