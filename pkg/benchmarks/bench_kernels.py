"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-N time per call for each kernel and backend, the speedup,
and the largest disagreement between the two backends.
"""

import argparse
import importlib.util
import timeit

import numpy as np

from hexflip import kernels
from hexflip.sextuple import sample_random


def _cases(rng):
    z = sample_random(3, 0.5).array()
    # a short word and its inverse, repeated: long, but the points stay in the disc
    while True:
        idx = rng.integers(1, 7, 16)
        sgn = rng.choice((-1, 1), 16)
        if np.abs(kernels.apply_word(z, idx, sgn)).max() < 0.95:
            break
    loop_idx = np.tile(np.concatenate([idx, idx[::-1]]), 128)
    loop_sgn = np.tile(np.concatenate([sgn, -sgn[::-1]]), 128)
    pts = 0.05 * np.sqrt(rng.random(600)) * np.exp(2j * np.pi * rng.random(600))
    r = 0.01 * rng.random(4096)
    a = np.cosh(r) * np.exp(2j * np.pi * rng.random(4096))
    b = np.sinh(r) * np.exp(2j * np.pi * rng.random(4096))
    return {
        "apply_word(4096 letters)": lambda be: kernels.apply_word(z, loop_idx, loop_sgn, backend=be),
        "half_turn_product(600 points)": lambda be: kernels.half_turn_product(pts, backend=be),
        "mobius_chain(4096 maps)": lambda be: kernels.mobius_chain(a, b, backend=be),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if importlib.util.find_spec("hexflip._ckernels") is None:
        print("compiled extension not built; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'python':>12s} {'cython':>12s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in _cases(rng).items():
        times = {}
        for be in ("python", "cython"):
            number = 20
            times[be] = min(timeit.repeat(lambda: fn(be), number=number, repeat=args.repeat)) / number
        diff = np.max(np.abs(np.asarray(fn("python")) - np.asarray(fn("cython"))))
        print(f"{name:32s} {times['python'] * 1e6:10.1f}us {times['cython'] * 1e6:10.1f}us "
              f"{times['python'] / times['cython']:7.1f}x {diff:10.2e}")


if __name__ == "__main__":
    main()
