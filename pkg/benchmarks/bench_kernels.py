"""Time the compiled kernels against the numpy fallback.

python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from hybridqudit import _backend
from hybridqudit.gates import sum_gate
from hybridqudit.linalg import realign
from hybridqudit.register import HybridRegister


def jacobi_case(n_a, n_b):
    m = realign(sum_gate(n_a, n_b).matrix, n_a, n_b)
    work = m.conj().T if m.shape[0] < m.shape[1] else m

    def run(kern):
        a = np.asfortranarray(work.copy())
        v = np.asfortranarray(np.eye(a.shape[1], dtype=np.complex128))
        kern.jacobi_sweeps(a, v, 1e-12, 0.0, 60)

    return f"jacobi realign SUM({n_a},{n_b}) {work.shape}", run


def random_jacobi_case(n, seed=0):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))

    def run(kern):
        a = np.asfortranarray(m.copy())
        v = np.asfortranarray(np.eye(n, dtype=np.complex128))
        kern.jacobi_sweeps(a, v, 1e-12, 0.0, 60)

    return f"jacobi random {n}x{n}", run


def apply_case(dims, targets, seed=0):
    rng = np.random.default_rng(seed)
    reg = HybridRegister(dims)
    sub, rest = reg.offsets(targets)
    g = np.ascontiguousarray(rng.normal(size=(len(sub), len(sub))) + 0j)
    psi = rng.normal(size=reg.dimension) + 0j

    def run(kern):
        kern.apply_gate(g, psi, sub, rest)

    return f"apply {len(targets)}-site gate, register dim {reg.dimension}", run


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _backend.compiled_kernels is None:
        print("compiled extension not available; only the numpy kernels will be timed")
    cases = [
        jacobi_case(6, 6),
        jacobi_case(9, 7),
        random_jacobi_case(32),
        random_jacobi_case(81),
        apply_case((3, 2, 4, 5, 3, 2, 3), (1, 4)),
        apply_case((2,) * 14, (3, 9, 12)),
    ]
    print(f"{'case':<44} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for name, run in cases:
        t_py = min(
            timeit.repeat(lambda: run(_backend.python_kernels), number=1, repeat=args.repeat)
        )
        if _backend.compiled_kernels is not None:
            t_c = min(
                timeit.repeat(lambda: run(_backend.compiled_kernels), number=1, repeat=args.repeat)
            )
            print(f"{name:<44} {t_py * 1e3:>10.2f} {t_c * 1e3:>12.2f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<44} {t_py * 1e3:>10.2f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
