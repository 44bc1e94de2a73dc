"""Experiment harness: run L* and OL* on targets and record query costs as CSV."""

import csv
import io
import json
import random
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Union

from .benchgen import BenchSpec, generate, interleaving_spec, switching_spec
from .errors import SearchLimitError
from .io import read_machine, write_machine
from .lstar import run_lstar
from .mealy import MealyMachine, equivalent, minimize
from .olstar import run_olstar
from .oracle import Teacher, WpConfig

CSV_VERSION_LINE = "# mealylearn-results v1"
ALGORITHMS = {"lstar": run_lstar, "olstar": run_olstar}
ORACLES = ("exact", "random-wp")
METRICS = {
    "symbols": lambda r: r.mq_symbols + r.test_symbols,
    "queries": lambda r: r.mq_count + r.test_count,
    "mq": lambda r: r.mq_count,
    "tests": lambda r: r.test_count,
    "eq": lambda r: r.eq_count,
}


@dataclass
class ResultRow:
    benchmark: str
    algorithm: str
    target_states: int
    learned_states: int
    mq_count: int
    mq_symbols: int
    test_count: int
    test_symbols: int
    eq_count: int
    component_sizes: str  # ";"-joined, OL* only
    wall_time: float
    seed: str = ""  # Wp seed, empty for the exact oracle
    correct: str = ""  # post-hoc check against the target
    status: str = "ok"

    @property
    def total_symbols(self):
        return self.mq_symbols + self.test_symbols


COLUMNS = [f.name for f in fields(ResultRow)]


@dataclass
class ExperimentConfig:
    target: Union[str, BenchSpec]
    algorithms: tuple = ("lstar", "olstar")
    oracle: str = "exact"
    wp: WpConfig = field(default_factory=WpConfig)
    repetitions: int = 1
    out_dir: str = "results"

    def __post_init__(self):
        self.algorithms = tuple(self.algorithms)
        if not self.algorithms or any(a not in ALGORITHMS for a in self.algorithms):
            raise ValueError(f"algorithms must be a non-empty subset of {sorted(ALGORITHMS)}")
        if self.oracle not in ORACLES:
            raise ValueError(f"oracle must be one of {ORACLES}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        target = d.pop("target")
        if isinstance(target, dict):
            target = spec_from_dict(target)
        wp = WpConfig(**d.pop("wp", {}))
        return cls(target=target, wp=wp, **d)

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self):
        target = self.target if isinstance(self.target, str) else asdict(self.target)
        return {
            "target": target,
            "algorithms": list(self.algorithms),
            "oracle": self.oracle,
            "wp": asdict(self.wp),
            "repetitions": self.repetitions,
            "out_dir": self.out_dir,
        }


def spec_from_dict(d) -> BenchSpec:
    """BenchSpec from a config entry; alphabets may be given explicitly or as counts."""
    d = dict(d)
    family = d["family"]
    if "inputs_per_component" in d:
        return BenchSpec(
            seed=d["seed"],
            family=family,
            component_sizes=tuple(d["component_sizes"]),
            inputs_per_component=tuple(tuple(x) for x in d["inputs_per_component"]),
            outputs_per_component=tuple(tuple(y) for y in d["outputs_per_component"]),
            switch_output=d.get("switch_output", "sw"),
        )
    sizes = tuple(d["component_sizes"])
    if family == "switching":
        return switching_spec(d["seed"], sizes, d.get("n_outputs", 2))
    if family == "interleaving":
        return interleaving_spec(
            d["seed"], sizes, d.get("n_inputs", 2), d.get("n_outputs", 2), d.get("shared_outputs", True)
        )
    n_in, n_out = d.get("n_inputs", 2), d.get("n_outputs", 2)
    inputs = tuple(chr(ord("a") + i) for i in range(n_in))
    outputs = tuple(f"o{j}" for j in range(n_out))
    return BenchSpec(d["seed"], "random", sizes[:1], (inputs,), (outputs,))


def make_teacher(target, oracle, wp: WpConfig):
    return Teacher(target, "exact" if oracle == "exact" else wp)


def run_algorithm(target: MealyMachine, algorithm, oracle="exact", wp=None, benchmark="target", observer=None):
    """Learn ``target`` once; returns ``(ResultRow, LearnResult or None)``."""
    wp = wp or WpConfig()
    teacher = make_teacher(target, oracle, wp)
    start = time.perf_counter()
    seed = "" if oracle == "exact" else str(wp.random_seed)
    try:
        result = ALGORITHMS[algorithm](target.inputs, teacher, observer=observer)
    except SearchLimitError as exc:
        s = teacher.snapshot_stats()
        row = ResultRow(
            benchmark, algorithm, len(target), 0, s.mq_count, s.mq_symbols, s.test_count,
            s.test_symbols, s.eq_count, "", round(time.perf_counter() - start, 4), seed, "",
            f"failed:resource:{exc.explored}",
        )
        return row, None
    elapsed = time.perf_counter() - start
    s = result.stats
    sizes = ";".join(str(len(m)) for m in result.components.values()) if result.components else ""
    row = ResultRow(
        benchmark=benchmark,
        algorithm=algorithm,
        target_states=len(target),
        learned_states=len(minimize(result.machine)),
        mq_count=s.mq_count,
        mq_symbols=s.mq_symbols,
        test_count=s.test_count,
        test_symbols=s.test_symbols,
        eq_count=s.eq_count,
        component_sizes=sizes,
        wall_time=round(elapsed, 4),
        seed=seed,
        correct=str(equivalent(target, result.machine) is None).lower(),
    )
    return row, result


class ResultWriter:
    """Appends rows to a versioned CSV; each row is written with one call and flushed."""

    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if not self.path.exists() or self.path.stat().st_size == 0:
            self._write_line([CSV_VERSION_LINE], raw=True)
            self._write_line(COLUMNS)

    def _write_line(self, values, raw=False):
        if raw:
            text = values[0] + "\n"
        else:
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerow(values)
            text = buf.getvalue()
        with open(self.path, "a", encoding="utf-8", newline="") as f:
            f.write(text)
            f.flush()

    def write(self, row: ResultRow):
        self._write_line([getattr(row, c) for c in COLUMNS])


def read_rows(path) -> list:
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if not ln.startswith("#")]
    rows = []
    for d in csv.DictReader(lines):
        rows.append(d)
    return rows


def load_target(target) -> tuple:
    """``(benchmark id, machine)`` for a config target."""
    if isinstance(target, BenchSpec):
        return f"{target.family}-{target.seed}", generate(target)
    return Path(target).stem, read_machine(target)


def learn(config: ExperimentConfig, observer=None) -> list:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bench_id, target = load_target(config.target)
    writer = ResultWriter(out / "results.csv")
    (out / "config.json").write_text(json.dumps(config.to_dict(), indent=2) + "\n", encoding="utf-8")
    rows = []
    for _ in range(config.repetitions):
        for alg in config.algorithms:
            row, result = run_algorithm(target, alg, config.oracle, config.wp, bench_id, observer)
            writer.write(row)
            rows.append(row)
            if result is not None:
                write_machine(result.machine, out / f"{bench_id}.{alg}.txt")
                for y, comp in (result.components or {}).items():
                    write_machine(comp, out / f"{bench_id}.{alg}.component-{y}.txt")
    return rows


@dataclass
class BenchParams:
    family: str = "switching"
    count: int = 10
    seed: int = 0
    components: int = 3
    min_states: int = 4
    max_states: int = 6
    n_inputs: int = 2
    n_outputs: int = 2
    shared_outputs: bool = True


def instance_spec(params: BenchParams, index: int) -> BenchSpec:
    rng = random.Random(f"{params.family}:{params.seed}:{index}")
    k = params.components if params.family != "random" else 1
    sizes = tuple(rng.randint(params.min_states, params.max_states) for _ in range(k))
    d = {
        "family": params.family,
        "seed": rng.randrange(2**32),
        "component_sizes": sizes,
        "n_inputs": params.n_inputs,
        "n_outputs": params.n_outputs,
        "shared_outputs": params.shared_outputs,
    }
    return spec_from_dict(d)


def bench(params: BenchParams, oracle="random-wp", wp=None, out_dir=None, observer=None) -> list:
    """Run L* and OL* on ``params.count`` generated instances.

    Writes ``results.csv`` and one two-column scatter file per metric when
    ``out_dir`` is given.
    """
    wp = wp or WpConfig()
    writer = None
    if out_dir is not None:
        out = Path(out_dir)
        writer = ResultWriter(out / "results.csv")
    rows = []
    for i in range(params.count):
        spec = instance_spec(params, i)
        target = generate(spec)
        bench_id = f"{params.family}-{params.seed}-{i:03d}"
        inst_wp = WpConfig(wp.random_seed + i, wp.max_tests, wp.expected_random_middle_length, wp.depth_bound)
        for alg in ("lstar", "olstar"):
            row, _ = run_algorithm(target, alg, oracle, inst_wp, bench_id, observer)
            rows.append(row)
            if writer is not None:
                writer.write(row)
    if out_dir is not None:
        write_scatter(rows, Path(out_dir))
    return rows


def scatter_points(rows, metric) -> list:
    """``(benchmark, L* value, OL* value)`` per benchmark having both rows."""
    by = {}
    for r in rows:
        by.setdefault(r.benchmark, {})[r.algorithm] = r
    fn = METRICS[metric]
    return [
        (b, fn(d["lstar"]), fn(d["olstar"]))
        for b, d in by.items()
        if "lstar" in d and "olstar" in d and d["lstar"].status == d["olstar"].status == "ok"
    ]


def write_scatter(rows, out: Path):
    out.mkdir(parents=True, exist_ok=True)
    for metric in METRICS:
        with open(out / f"scatter_{metric}.csv", "w", encoding="utf-8", newline="") as f:
            f.write(f"# x = L*, y = OL*, metric = {metric}\n")
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["benchmark", "lstar", "olstar"])
            w.writerows(scatter_points(rows, metric))


def strip_wall_time(line: str) -> str:
    """CSV data line without the wall-time column (for determinism checks)."""
    values = next(csv.reader([line]))
    i = COLUMNS.index("wall_time")
    return ",".join(values[:i] + values[i + 1:])


def learned_matches(row: ResultRow, target: MealyMachine) -> bool:
    return row.learned_states == len(minimize(target))
