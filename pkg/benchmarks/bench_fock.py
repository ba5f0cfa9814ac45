#!/usr/bin/env python3
"""Benchmark the Fock-oracle Hamiltonian assembly: numba kernel vs numpy.

The assembly is the only loop-bound kernel in the package (everything
else is FFT or LAPACK dominated).  Run as

    python benchmarks/bench_fock.py

or force the fallback everywhere with BOGOLIB_DISABLE_NUMBA=1.
"""

import time

import numpy as np

from bogolib._fock_kernels import (
    NUMBA_AVAILABLE,
    _assemble_jit,
    _assemble_numpy,
    build_index_map,
)
from bogolib.homogeneous import _enumerate_states


def time_call(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    print(f"numba available: {NUMBA_AVAILABLE}")
    print(f"{'N':>5} {'cap':>5} {'states':>8} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    for n_particles, cap in [(20, 20), (40, 40), (60, 60), (60, 60)]:
        states = _enumerate_states(n_particles, cap)
        index_map = build_index_map(states, cap)
        args = (states, index_map, 0.5, 0.01)
        t_numpy = time_call(_assemble_numpy, *args)
        if NUMBA_AVAILABLE:
            _assemble_jit(*args)  # compile outside the timed region
            t_jit = time_call(_assemble_jit, *args)
            ref = _assemble_numpy(*args)
            fast = _assemble_jit(*args)
            assert np.max(np.abs(ref - fast)) < 1e-12, "kernels disagree"
            speedup = t_numpy / t_jit
            print(
                f"{n_particles:>5} {cap:>5} {states.shape[0]:>8} "
                f"{1e3 * t_numpy:>12.3f} {1e3 * t_jit:>12.3f} {speedup:>8.2f}"
            )
        else:
            print(
                f"{n_particles:>5} {cap:>5} {states.shape[0]:>8} "
                f"{1e3 * t_numpy:>12.3f} {'-':>12} {'-':>8}"
            )


if __name__ == "__main__":
    main()
