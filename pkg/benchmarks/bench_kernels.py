"""Benchmark the compiled kernels against their pure-numpy twins.

Each kernel in trisemi._kernels ships in two variants; the active one is
chosen at import time (numba when importable, numpy otherwise, numpy
always when TRISEMI_NO_NUMBA=1).  This script times both directly so the
dispatch choice can be sanity-checked on the current machine.

Run:  python3 benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from trisemi import _kernels as K

RNG = np.random.default_rng(12345)


def timeit(fn, *args, repeat=5):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, numba_fn, numpy_fn, args):
    if numba_fn is None:
        print(f"{name:24s}  numba unavailable")
        return
    numba_fn(*args)  # compile outside the timed region
    t_nb = timeit(numba_fn, *args)
    t_np = timeit(numpy_fn, *args)
    print(f"{name:24s}  numba {t_nb * 1e3:9.3f} ms   numpy {t_np * 1e3:9.3f} ms   x{t_np / t_nb:6.2f}")


def main():
    print(f"active backend: {K.active_backend()}")

    freqs = np.array([1.0, math.sqrt(2), math.sqrt(3)])
    bench(
        "recurrence_devs",
        K.recurrence_devs_numba,
        K.recurrence_devs_numpy,
        (freqs, 2_000_000),
    )

    devs = K.recurrence_devs_numpy(freqs, 2_000_000)
    bench(
        "successive_minima",
        K.successive_minima_numba,
        K.successive_minima_numpy,
        (devs, 0.05),
    )

    n = 400
    packets = tuple(
        (RNG.standard_normal(n) + 1j * RNG.standard_normal(n)).astype(np.complex128)
        for _ in range(8)
    )
    amp1, b1, c1, amp2, b2, c2 = packets[0], packets[2], packets[3], packets[4], packets[6], packets[7]
    a1 = 1.0 + np.abs(packets[1])
    a2 = 1.0 + np.abs(packets[5])
    bench(
        "packet_inner_matrix",
        K.packet_inner_matrix_numba,
        K.packet_inner_matrix_numpy,
        (amp1, a1, b1, c1, amp2, a2, b2, c2),
    )

    deltas = RNG.uniform(-10, 10, 64)
    bench(
        "phase_mean_weights",
        K.phase_mean_weights_numba,
        K.phase_mean_weights_numpy,
        (deltas, 400.0, 65536),
    )

    ts = np.linspace(-2.0, 2.0, 4096)
    betas = np.array([1.0, math.sqrt(2)])
    bench(
        "bf_kernel_values",
        K.bf_kernel_values_numba,
        K.bf_kernel_values_numpy,
        (ts, betas, math.factorial(3)),
    )


if __name__ == "__main__":
    main()
