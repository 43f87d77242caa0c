"""Time the dense geometric product and the inverse for growing n."""
import argparse
import time

import numpy as np

from clifspin.core import Multivector, Signature, inverse


def bench(fn, repeats):
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'product (ms)':>14} {'inverse (ms)':>14}")
    for n in range(1, args.max_n + 1):
        sig = Signature(n // 2, n - n // 2)
        x = Multivector(sig, rng.standard_normal(sig.dim))
        y = Multivector(sig, rng.standard_normal(sig.dim))
        repeats = max(1, 2000 >> n)
        t_mul = bench(lambda: x * y, repeats)
        t_inv = bench(lambda: inverse(x), max(1, repeats // 4)) if n <= 8 else float("nan")
        print(f"{n:>3} {1e3 * t_mul:>14.3f} {1e3 * t_inv:>14.3f}")


if __name__ == "__main__":
    main()
