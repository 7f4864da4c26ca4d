"""Time the compiled kernels against the numpy fallback.

Run with ``python benchmarks/bench_kernels.py [--sizes 30,100,300]``.
Each line reports the best-of-5 time per call for both backends and
the speedup of the compiled one.
"""

import argparse
import timeit

import numpy as np

from lpgraph import _kernels_py

try:
    from lpgraph import _kernels as _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None


def cases(n, rng):
    w = rng.dirichlet(np.ones(n))
    t1 = rng.normal(size=n)
    probs = rng.dirichlet(np.ones(n * n)).reshape(n, n)
    tx = _kernels_py.lp_polynomials(t1, w, 10, 1e-9)
    coefs = rng.normal(size=20)
    js = rng.integers(0, tx.shape[0], size=20)
    ks = rng.integers(0, tx.shape[0], size=20)
    return {
        "lp_polynomials": lambda k: k.lp_polynomials(t1, w, 10, 1e-9),
        "lp_transform": lambda k: k.lp_transform(probs, tx, tx),
        "reconstruct": lambda k: k.reconstruct(coefs, js, ks, tx, tx),
    }


def best(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=5)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="30,100,300")
    parser.add_argument("--number", type=int, default=50)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'n':>6}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        for name, call in cases(n, rng).items():
            t_py = best(lambda: call(_kernels_py), args.number)
            if _kernels_cy is None:
                print(f"{name:<16}{n:>6}{t_py * 1e6:>14.1f}{'n/a':>14}{'':>10}")
                continue
            t_cy = best(lambda: call(_kernels_cy), args.number)
            print(f"{name:<16}{n:>6}{t_py * 1e6:>14.1f}{t_cy * 1e6:>14.1f}{t_py / t_cy:>10.2f}")


if __name__ == "__main__":
    main()
