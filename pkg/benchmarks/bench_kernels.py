"""Compare the compiled and pure-Python root-counting kernels.

    python benchmarks/bench_kernels.py --h 8 12 16 --repeat 3
"""
import argparse
import random
import time

from z2paths import _accel
from z2paths.counting import encode
from z2paths.gf2poly import Monomial, Polynomial, x


def random_system(rng, h, polys=4, terms=6, degree=3):
    def poly():
        return Polynomial(
            Monomial.of(*(x(k) for k in rng.sample(range(1, h + 1), rng.randint(0, min(degree, h)))))
            for _ in range(terms)
        )

    return [poly() for _ in range(polys)], poly()


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--h", type=int, nargs="+", default=[8, 12, 16, 18])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    kernels = sorted(_accel.KERNELS)
    print(f"kernels available: {', '.join(kernels)}")
    print(f"{'h':>3} " + " ".join(f"{k + ' [s]':>14}" for k in kernels) + f" {'speedup':>9}")
    rng = random.Random(args.seed)
    for h in args.h:
        constraints, phase = random_system(rng, h)
        masks, offsets = encode(constraints, h)
        phase_masks, _ = encode([phase], h)
        timings, results = {}, set()
        for name in kernels:
            k = _accel.KERNELS[name]
            t, res = best_of(lambda: k.count_split(masks, offsets, phase_masks, 0, 1 << h), args.repeat)
            timings[name] = t
            results.add(tuple(res))
        if len(results) != 1:
            raise SystemExit(f"kernels disagree at h={h}: {results}")
        speedup = timings["python"] / timings["cython"] if "cython" in timings else float("nan")
        print(f"{h:>3} " + " ".join(f"{timings[k]:>14.6f}" for k in kernels) + f" {speedup:>8.1f}x")


if __name__ == "__main__":
    main()
