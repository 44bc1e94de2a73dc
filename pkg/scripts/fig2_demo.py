"""Learn the six-state worked example with L* and OL* and show the components."""

import argparse

from mealylearn import io as mio
from mealylearn.fixtures import fig2
from mealylearn.lstar import run_lstar
from mealylearn.olstar import run_olstar
from mealylearn.oracle import Teacher


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--table", action="store_true", help="print the final OL* table")
    args = parser.parse_args()

    m = fig2()
    for name, alg in (("L*", run_lstar), ("OL*", run_olstar)):
        res = alg(m.inputs, Teacher(m))
        s = res.stats
        print(f"{name:4} states={len(res.machine)} mq={s.mq_count} mq_symbols={s.mq_symbols} eq={s.eq_count}")
        if res.components:
            for y, comp in res.components.items():
                print(f"\n-- component {y} ({len(comp)} states)")
                print(mio.dumps(comp), end="")
            if args.table:
                print()
                print(res.table.dump(views=list(res.components)))


if __name__ == "__main__":
    main()
