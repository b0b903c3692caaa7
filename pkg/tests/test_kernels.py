"""Backend-equivalence checks for the min-eigenvalue kernels."""

import subprocess
import sys
import textwrap

import numpy as np
import pytest

from helpers import random_hermitian
from qcatalysis import _kernels

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


@pytest.mark.parametrize("backend", BACKENDS)
def test_min_eigenvalues_match_lapack(backend):
    rng = np.random.default_rng(2)
    for n in (1, 2, 3, 4, 6, 8, 12):
        mats = np.stack([random_hermitian(rng, n) for _ in range(60)])
        got = _kernels.min_eigenvalues(mats, backend=backend)
        want = np.linalg.eigvalsh(mats)[:, 0]
        np.testing.assert_allclose(got, want, atol=1e-10)


def _example_scan_problem():
    # 3x3 with (0,2) and (1,2) pinned to 1: only the all-ones completion
    # of slot (0,1) is feasible
    base = np.eye(3, dtype=np.complex128)
    base[0, 2] = base[2, 0] = 1.0
    base[1, 2] = base[2, 1] = 1.0
    pairs = np.array([[0, 1]])
    mods = np.linspace(0.0, 1.0, 21)
    phases = np.arange(20) * (2.0 * np.pi / 20.0)
    values = (mods[:, None] * np.exp(1j * phases[None, :])).reshape(1, -1)
    counts = np.array([values.shape[1]])
    return base, pairs, values, counts


@pytest.mark.parametrize("backend", BACKENDS)
def test_scan_finds_forced_corner(backend):
    base, pairs, values, counts = _example_scan_problem()
    result = _kernels.scan_completions(base, pairs, values, counts, 1e-9, backend)
    assert result.found >= 0
    fill = _kernels.decode_candidate(result.found, values, counts)
    assert abs(fill[0] - 1.0) < 1e-12


def test_backends_agree_on_scan():
    if not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(9)
    for trial in range(10):
        n = int(rng.integers(2, 5))
        h = random_hermitian(rng, n) / n
        base = np.eye(n, dtype=np.complex128) + 0.2 * h
        np.fill_diagonal(base, 1.0)
        i, j = 0, n - 1
        base[i, j] = base[j, i] = 0.0
        pairs = np.array([[i, j]])
        mods = np.linspace(0.0, 1.0, 11)
        phases = np.arange(8) * (2.0 * np.pi / 8.0)
        values = (mods[:, None] * np.exp(1j * phases[None, :])).reshape(1, -1)
        counts = np.array([values.shape[1]])
        res_np = _kernels.scan_completions(base, pairs, values, counts, 1e-9, "numpy")
        res_nb = _kernels.scan_completions(base, pairs, values, counts, 1e-9, "numba")
        assert res_np.found == res_nb.found
        assert res_np.best == res_nb.best


def test_env_flag_forces_numpy(monkeypatch):
    monkeypatch.setenv(_kernels.BACKEND_ENV, "numpy")
    assert _kernels.resolve_backend(10**9) == "numpy"


def test_env_flag_rejects_unknown(monkeypatch):
    monkeypatch.setenv(_kernels.BACKEND_ENV, "cuda")
    with pytest.raises(_kernels.KernelBackendError):
        _kernels.resolve_backend(1)


def test_auto_prefers_numpy_for_small_workloads(monkeypatch):
    monkeypatch.delenv(_kernels.BACKEND_ENV, raising=False)
    assert _kernels.resolve_backend(10) == "numpy"


def test_package_works_without_numba():
    # block the numba import in a fresh interpreter: the fallback must
    # carry the whole pipeline, and an explicit numba request must fail
    script = textwrap.dedent(
        """
        import sys

        class BlockNumba:
            def find_spec(self, name, path=None, target=None):
                if name == "numba" or name.startswith("numba."):
                    raise ImportError("numba blocked for this test")

        sys.meta_path.insert(0, BlockNumba())

        import qcatalysis
        from qcatalysis import _kernels

        assert not _kernels.HAVE_NUMBA
        assert _kernels.resolve_backend(10**9) == "numpy"
        try:
            _kernels.resolve_backend(1, "numba")
        except _kernels.KernelBackendError:
            pass
        else:
            raise SystemExit("explicit numba request should have failed")

        report = qcatalysis.classify(qcatalysis.cloning_process())
        assert report.classification == "quantum_catalysis"
        print("fallback-ok")
        """
    )
    proc = subprocess.run(
        [sys.executable, "-c", script],
        capture_output=True,
        text=True,
        timeout=120,
        env={"PATH": "/usr/bin:/bin", "PYTHONPATH": ":".join(sys.path)},
    )
    assert proc.returncode == 0, proc.stderr
    assert "fallback-ok" in proc.stdout
