"""Shared random generators and independent oracles for the test suite."""

import numpy as np

from qcatalysis import ProcessSpec, PureState, random_state


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2.0


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(m)
    return q * (r.diagonal() / np.abs(r.diagonal()))[None, :]


def random_generic_spec(rng: np.random.Generator) -> ProcessSpec:
    """Random in/out pairs with well-conditioned (independent) inputs."""
    dim_a = int(rng.integers(2, 4))
    dim_b = int(rng.integers(2, 4))
    n = int(rng.integers(1, 5))
    while True:
        inputs = [random_state((dim_a, dim_b), rng) for _ in range(n)]
        gram = np.array(
            [[np.vdot(a.vector, b.vector) for b in inputs] for a in inputs]
        )
        if np.linalg.eigvalsh(gram)[0] > 1e-6:
            break
    outputs = [random_state((dim_a, dim_b), rng) for _ in range(n)]
    return ProcessSpec(dim_a, dim_b, tuple(zip(inputs, outputs)))


def random_realizable_spec(
    rng: np.random.Generator,
) -> tuple[ProcessSpec, np.ndarray]:
    """Spec known to be realizable, built from the dilation the engine must find.

    Draw random outputs b_i and random unit environment vectors s_i; the
    admissible input overlaps are then forced to <b_i|b_j><s_i|s_j>, and a
    Cholesky factor of that Gram matrix provides concrete inputs.  Returns
    the spec together with the environment Gram matrix <s_i|s_j> it was
    built from.
    """
    while True:
        dim_a = int(rng.integers(2, 4))
        dim_b = int(rng.integers(2, 4))
        d = dim_a * dim_b
        n = int(rng.integers(1, 5))
        r = int(rng.integers(1, n + 1))
        outputs = [random_state((dim_a, dim_b), rng) for _ in range(n)]
        sig = rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
        sig = sig / np.linalg.norm(sig, axis=0)[None, :]
        env_gram = sig.conj().T @ sig
        g_out = np.array(
            [[np.vdot(a.vector, b.vector) for b in outputs] for a in outputs]
        )
        g_in = g_out * env_gram
        if np.linalg.eigvalsh((g_in + g_in.conj().T) / 2.0)[0] <= 1e-6:
            continue
        factor = np.linalg.cholesky(g_in).conj().T  # g_in = factor^H factor
        inputs = []
        for i in range(n):
            vec = np.zeros(d, dtype=np.complex128)
            vec[:n] = factor[:, i]
            inputs.append(PureState((dim_a, dim_b), vec / np.linalg.norm(vec)))
        return ProcessSpec(dim_a, dim_b, tuple(zip(inputs, outputs))), env_gram


def trace_out_environment(vec: np.ndarray, env_dim: int) -> np.ndarray:
    """System density matrix of a pure system(x)environment vector."""
    w = vec.reshape(-1, env_dim)
    return w @ w.conj().T
