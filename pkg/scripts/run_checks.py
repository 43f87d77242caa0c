"""Run the invariant suites over several seeds and print per-check timings."""
import argparse

from clifspin.checks import SUITES, SuiteConfig, run_suite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--suite", default="all", choices=("all",) + SUITES)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seeds", type=int, nargs="+", default=[0])
    args = parser.parse_args()

    failures = 0
    for seed in args.seeds:
        print(f"seed {seed}")
        for result in run_suite(args.suite, SuiteConfig(trials=args.trials, seed=seed)):
            failures += not result.passed
            print(f"  {result.seconds:7.2f}s  {result.line()}")
    print(f"{failures} failing checks")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
