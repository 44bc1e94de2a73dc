"""Compare L* and OL* on seeded switching benchmarks and summarise the symbol counts."""

import argparse

from mealylearn.experiments import BenchParams, bench
from mealylearn.oracle import WpConfig


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", choices=["exact", "random-wp"], default="random-wp")
    p.add_argument("--out", default="results/switching")
    args = p.parse_args()

    params = BenchParams(family="switching", count=args.count, seed=args.seed)
    rows = bench(params, oracle=args.oracle, wp=WpConfig(), out_dir=args.out)
    by = {}
    for r in rows:
        by.setdefault(r.benchmark, {})[r.algorithm] = r
    wins = 0
    for b, d in by.items():
        l, o = d["lstar"].total_symbols, d["olstar"].total_symbols
        wins += o < l
        print(f"{b}  states={d['lstar'].target_states:4d}  L*={l:8d}  OL*={o:8d}  "
              f"components={d['olstar'].component_sizes}")
    print(f"\nOL* used fewer symbols on {wins}/{len(by)} instances; CSVs in {args.out}")


if __name__ == "__main__":
    main()
