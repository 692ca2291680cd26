"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Times the Jacobi eigensolver on random Hermitian matrices (2 to 8 qubits)
and the Pauli-string expectation/synthesis pair (3 to 5 qubits), and checks
that both backends agree.
"""

import argparse
import time

import numpy as np

from spinflip import _backend
from spinflip.harness import random_density
from spinflip.rng import SplitMix64


def random_hermitian(n, seed):
    g = SplitMix64(seed).complex_normal((2 ** n, 2 ** n))
    return 0.5 * (g + g.conj().T)


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--jacobi-max", type=int, default=8, help="largest qubit count for Jacobi")
    args = parser.parse_args(argv)

    backends = _backend.available()
    names = sorted(backends)
    print(f"active backend: {_backend.NAME}; comparing {', '.join(names)}")
    if "cython" not in backends:
        print("compiled extension not built; only the fallback is timed")

    print(f"\n{'kernel':<22s}{'n':>3s}" + "".join(f"{name:>12s}" for name in names) + f"{'speedup':>10s}{'agree':>10s}")
    for n in range(2, args.jacobi_max + 1):
        h = random_hermitian(n, seed=n)
        times, outs = {}, {}
        for name in names:
            k = backends[name]
            times[name] = best_time(lambda: k.jacobi_eigh(h), args.repeat if n < 7 else 1)
            outs[name] = np.sort(k.jacobi_eigh(h)[0])
        report("jacobi_eigh", n, names, times, outs)

    for n in range(3, 6):
        rho = random_density(n, 2 ** n, seed=10 + n).mat
        times, outs = {}, {}
        for name in names:
            k = backends[name]
            times[name] = best_time(lambda: k.pauli_synthesis(k.pauli_expectations(rho).real, n), args.repeat)
            outs[name] = k.pauli_expectations(rho)
        report("pauli round trip", n, names, times, outs)


def report(label, n, names, times, outs):
    speed = times["python"] / times["cython"] if "cython" in times else 1.0
    agree = max(float(np.max(np.abs(outs[a] - outs[names[0]]))) for a in names)
    print(f"{label:<22s}{n:>3d}" + "".join(f"{times[name] * 1e3:>10.2f}ms" for name in names)
          + f"{speed:>9.1f}x{agree:>10.1e}")


if __name__ == "__main__":
    main()
