"""Interleaved products with shared outputs: projections rarely shrink, so OL* has little to gain."""

import argparse

from mealylearn.benchgen import decomposition_profile, generate
from mealylearn.experiments import BenchParams, bench, instance_spec


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--disjoint", action="store_true", help="give each component its own outputs")
    p.add_argument("--out", default="results/interleaving")
    args = p.parse_args()

    params = BenchParams(family="interleaving", count=args.count, seed=args.seed,
                         shared_outputs=not args.disjoint)
    rows = bench(params, oracle="exact", out_dir=args.out)
    by = {}
    for r in rows:
        by.setdefault(r.benchmark, {})[r.algorithm] = r
    for i, (b, d) in enumerate(by.items()):
        prof = decomposition_profile(generate(instance_spec(params, i)))
        print(f"{b}  minimal={prof['original']:4d}  projections={prof['projections']}  "
              f"L*={d['lstar'].total_symbols:7d}  OL*={d['olstar'].total_symbols:7d}  "
              f"correct={d['lstar'].correct}/{d['olstar'].correct}")


if __name__ == "__main__":
    main()
