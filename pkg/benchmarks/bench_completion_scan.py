"""Benchmark the completion-search kernels: numba vs pure numpy.

The hot loop of the feasibility engine evaluates the smallest eigenvalue
of one small Hermitian matrix per candidate filling.  This script times
both backends on (a) a raw batched min-eigenvalue workload and (b) a full
grid scan with no feasible point, so neither backend can exit early.

Run:  python benchmarks/bench_completion_scan.py

Representative results (Linux container, numba 0.66, numpy 2.2):
    min-eig batch  n=3 x 200000    numpy 0.32s   numba 0.15s   2.2x
    min-eig batch  n=4 x 100000    numpy 0.21s   numba 0.19s   1.1x
    min-eig batch  n=6 x  50000    numpy 0.19s   numba 0.34s   0.5x
    exhaustive scan, 2 free slots  numpy 0.34s   numba 0.31s   1.1x

The jitted Jacobi solver beats batched LAPACK only for the smallest
matrices (the dominant case here: the built-in scenarios have n = 3);
for larger families the blocked LAPACK path wins, which is why the
automatic backend choice stays with numpy unless the workload is large.
"""

import time

import numpy as np

from qcatalysis import _kernels


def _hermitian_batch(rng, count, n):
    m = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    return (m + m.conj().transpose(0, 2, 1)) / 2.0


def _time(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def bench_min_eigs(rng):
    print("batched smallest eigenvalue")
    for n, count in ((3, 200_000), (4, 100_000), (6, 50_000)):
        mats = _hermitian_batch(rng, count, n)
        a, t_numpy = _time(lambda: _kernels.min_eigenvalues(mats, backend="numpy"))
        b, t_numba = _time(lambda: _kernels.min_eigenvalues(mats, backend="numba"))
        err = np.max(np.abs(a - b))
        print(
            f"  n={n} x {count:>7}: numpy {t_numpy:6.2f}s   numba {t_numba:6.2f}s"
            f"   {t_numpy / t_numba:5.1f}x   max dev {err:.1e}"
        )


def bench_scan(rng):
    # determined part is contradictory, so every candidate fails and the
    # scan has to sweep the entire two-slot grid
    n = 4
    base = np.eye(n, dtype=np.complex128)
    for i, j, v in ((0, 2, 1.0), (0, 3, 1.0), (2, 3, 0.0)):
        base[i, j] = v
        base[j, i] = np.conj(v)
    pairs = np.array([[0, 1], [1, 2]])
    mods = np.linspace(0.0, 1.0, 21)
    phases = np.arange(20) * (2.0 * np.pi / 20.0)
    grid = (mods[:, None] * np.exp(1j * phases[None, :])).reshape(-1)
    values = np.stack([grid, grid])
    counts = np.array([grid.size, grid.size])
    total = grid.size**2
    print(f"exhaustive completion scan, 2 free slots, {total} candidates")
    res_np, t_numpy = _time(
        lambda: _kernels.scan_completions(base, pairs, values, counts, 1e-9, "numpy")
    )
    res_nb, t_numba = _time(
        lambda: _kernels.scan_completions(base, pairs, values, counts, 1e-9, "numba")
    )
    agree = res_np.found == res_nb.found and res_np.best == res_nb.best
    print(
        f"  numpy {t_numpy:6.2f}s   numba {t_numba:6.2f}s"
        f"   {t_numpy / t_numba:5.1f}x   results agree: {agree}"
    )


def main():
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy fallback is available")
        print("install the 'accel' extra to compare backends")
        return
    rng = np.random.default_rng(0)
    print("warming up the JIT...")
    _kernels.min_eigenvalues(_hermitian_batch(rng, 10, 3), backend="numba")
    _kernels.scan_completions(
        np.eye(2, dtype=np.complex128),
        np.array([[0, 1]]),
        np.array([[0.5 + 0.0j]]),
        np.array([1]),
        1e-9,
        "numba",
    )
    bench_min_eigs(rng)
    bench_scan(rng)


if __name__ == "__main__":
    main()
