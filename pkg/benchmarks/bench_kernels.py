"""Compare the compiled and pure-Python counting kernels.

    python benchmarks/bench_kernels.py --primes 31,61,101,211 --repeat 5
"""

from __future__ import annotations

import argparse
import time

from kummer_sandwich import kernels
from kummer_sandwich.arith import PrimeField, binomials_mod_p
from kummer_sandwich.counting import main2_cover


def best_of(call, repeat: int) -> tuple[int, int]:
    best, value = None, None
    for _ in range(repeat):
        t0 = time.perf_counter_ns()
        value = call()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return value, best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--primes", default="31,61,101,211")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    impls = kernels.backends()
    print(f"{'p':>5} {'kernel':<14}" + "".join(f"{name:>14}" for name in impls) + f"{'speedup':>10}")
    for p in (int(v) for v in args.primes.split(",")):
        ctx = PrimeField(p)
        binom = binomials_mod_p(ctx.half, ctx)
        matrix = [[ctx.reduce(c) for c in row] for row in main2_cover(2, 3, 5).f.coefficient_matrix()]
        for kernel in ("naive", "convolution", "character_sum"):
            times, values = {}, set()
            for name, impl in impls.items():
                call = {
                    "naive": lambda: impl.closed_form_naive(2, 3, 5, p, binom),
                    "convolution": lambda: impl.closed_form_conv(2, 3, 5, p, binom),
                    "character_sum": lambda: impl.charsum_matrix(matrix, p, ctx.residue_table, args.threads),
                }[kernel]
                value, times[name] = best_of(call, args.repeat)
                values.add(value)
            if len(values) != 1:
                raise SystemExit(f"backends disagree at p={p}, kernel={kernel}: {values}")
            speedup = times["pure"] / times["compiled"] if "compiled" in times else float("nan")
            cells = "".join(f"{times[name] / 1e6:>12.3f}ms" for name in impls)
            print(f"{p:>5} {kernel:<14}{cells}{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
