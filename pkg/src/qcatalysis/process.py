"""Realizability of specified pure-state transformations on A(x)B.

A transformation is given as ordered pairs {a_i -> b_i} of pure states on
a bipartite system.  Any physical realization is a unitary on the system
plus an environment prepared in a fixed state, sending a_i (x) e0 to
b_i (x) s_i for some unit environment states s_i.  Unitarity pins the
environment overlaps wherever the output overlap is nonzero:

    <a_i|a_j> = <b_i|b_j> <s_i|s_j>

so feasibility reduces to completing the partially determined matrix of
environment overlaps to a positive semidefinite Gram matrix with unit
diagonal.  This module builds that matrix, decides completability, and
when the answer is yes constructs an explicit isometry and applies the
process to superposition inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .linalg import DEFAULT_TOL, DependentBasisError, span_coefficients
from .states import PureState

REALIZABLE = "realizable"
INFEASIBLE = "infeasible"
UNDETERMINED = "undetermined"

REASON_MODULUS = "modulus_violation"
REASON_OUTPUT_NULL = "output_null_input_not"
REASON_PSD = "psd_violation"

# coarse-to-fine grid for free environment overlaps: initial resolution
# 0.05 on modulus and on phase (as a fraction of a turn), two refinement
# rounds shrinking the step tenfold around the best candidate
_GRID_MOD_STEP = 0.05
_GRID_PHASE_STEP = 0.05 * 2.0 * math.pi
_REFINEMENTS = 2
_MAX_FREE_ENTRIES = 3

_RANK_CUTOFF = 1e-9


class OutsideSpanError(ValueError):
    """Input state is not in the span of the specified inputs."""

    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(
            f"input lies outside the span of the specified inputs "
            f"(residual {self.residual:.3e})"
        )


class EnvironmentsDifferError(ValueError):
    """Coherent extension undefined because environment states differ."""

    def __init__(self):
        super().__init__(
            "the completed environment Gram matrix is not all-ones, so the "
            "process does not act coherently on superpositions; use "
            "output_density for the mixed output"
        )


@dataclass(frozen=True, eq=False)
class ProcessSpec:
    """Ordered (input, output) pure-state pairs on a fixed A(x)B split.

    Inputs must be linearly independent: construction rejects families
    whose Gram matrix has smallest eigenvalue at or below 1e-9, reporting
    that eigenvalue.  ``require_independent_inputs=False`` admits a
    dependent family so that the overlap-ratio feasibility argument (which
    never needs independence) can certify a negative control; the
    span-based operations still refuse such a family when reached.
    """

    dim_a: int
    dim_b: int
    pairs: tuple[tuple[PureState, PureState], ...]
    require_independent_inputs: bool = True

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        if not pairs:
            raise ValueError("a process needs at least one (input, output) pair")
        want = (int(self.dim_a), int(self.dim_b))
        for idx, (a, b) in enumerate(pairs):
            for which, s in (("input", a), ("output", b)):
                if s.dims != want:
                    raise ValueError(
                        f"pair {idx} {which} has dims {s.dims}, expected {want}"
                    )
        object.__setattr__(self, "dim_a", want[0])
        object.__setattr__(self, "dim_b", want[1])
        object.__setattr__(self, "pairs", pairs)
        if self.require_independent_inputs:
            gram = gram_matrix([a for a, _ in pairs])
            min_eig = float(np.linalg.eigvalsh(gram)[0])
            if min_eig <= DEFAULT_TOL:
                raise DependentBasisError(min_eig)

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def inputs(self) -> tuple[PureState, ...]:
        return tuple(a for a, _ in self.pairs)

    @property
    def outputs(self) -> tuple[PureState, ...]:
        return tuple(b for _, b in self.pairs)

    def input_matrix(self) -> np.ndarray:
        """(d, n) matrix whose columns are the input vectors."""
        return np.column_stack([a.vector for a, _ in self.pairs])

    def output_matrix(self) -> np.ndarray:
        return np.column_stack([b.vector for _, b in self.pairs])


@dataclass(frozen=True, eq=False)
class EnvironmentGram:
    """Partially determined matrix of required environment overlaps.

    ``values[i, j]`` holds the forced overlap where ``known[i, j]`` is
    true (diagonal fixed at one); unknown slots are free to complete.
    """

    values: np.ndarray
    known: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128).copy()
        known = np.asarray(self.known, dtype=bool).copy()
        n = values.shape[0]
        if values.shape != (n, n) or known.shape != (n, n):
            raise ValueError("values and known must be square and congruent")
        if not np.array_equal(known, known.T):
            raise ValueError("determined pattern must be symmetric")
        if not np.allclose(values, values.conj().T, atol=1e-12):
            raise ValueError("determined entries must be conjugate-symmetric")
        if not np.all(known.diagonal()) or not np.allclose(values.diagonal(), 1.0):
            raise ValueError("diagonal must be determined and equal to one")
        if np.any(np.abs(values[known]) > 1.0 + DEFAULT_TOL):
            raise ValueError("determined overlaps must have modulus at most one")
        values.setflags(write=False)
        known.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "known", known)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def free_pairs(self) -> list[tuple[int, int]]:
        n = self.n
        return [(i, j) for i in range(n) for j in range(i + 1, n) if not self.known[i, j]]


@dataclass(frozen=True)
class Certificate:
    """Evidence for an infeasibility verdict.

    ``pair`` names the offending (i, j) when one exists; a failed
    completion search has no single offending pair and reports None.
    """

    reason: str
    pair: tuple[int, int] | None
    magnitude: float


@dataclass(frozen=True, eq=False)
class FeasibilityVerdict:
    status: str
    completed_gram: np.ndarray | None = None
    certificate: Certificate | None = None

    def __post_init__(self):
        if self.status == REALIZABLE:
            g = np.asarray(self.completed_gram, dtype=np.complex128).copy()
            g.setflags(write=False)
            object.__setattr__(self, "completed_gram", g)

    @property
    def is_realizable(self) -> bool:
        return self.status == REALIZABLE


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, trace-one, positive semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128).copy()
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > DEFAULT_TOL:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > DEFAULT_TOL:
            raise ValueError("density matrix must have unit trace")
        if float(np.linalg.eigvalsh(m)[0]) < -DEFAULT_TOL:
            raise ValueError("density matrix must be positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def gram_matrix(states) -> np.ndarray:
    """Overlap matrix G[i, j] = <state_i | state_j>."""
    vecs = [s.vector for s in states]
    dims = {s.dims for s in states}
    if len(dims) > 1:
        raise ValueError(f"states must share dims, got {sorted(dims)}")
    m = np.column_stack(vecs)
    return m.conj().T @ m


def environment_gram(
    spec: ProcessSpec, tol: float = DEFAULT_TOL
) -> EnvironmentGram | FeasibilityVerdict:
    """Forced environment overlaps, or an early infeasibility verdict.

    Entry (i, j) is G_in/G_out where the output overlap is nonzero and
    free where both overlaps vanish.  A vanishing output overlap with a
    nonvanishing input one, or a forced modulus above one, is immediately
    infeasible (no unit environment vectors can satisfy it).
    """
    g_in = gram_matrix(spec.inputs)
    g_out = gram_matrix(spec.outputs)
    n = spec.n
    values = np.eye(n, dtype=np.complex128)
    known = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            gi = g_in[i, j]
            go = g_out[i, j]
            if abs(go) > tol:
                ratio = gi / go
                mag = abs(ratio)
                if mag > 1.0 + tol:
                    return FeasibilityVerdict(
                        INFEASIBLE,
                        certificate=Certificate(REASON_MODULUS, (i, j), mag),
                    )
                if mag > 1.0:
                    ratio = ratio / mag
                values[i, j] = ratio
                values[j, i] = ratio.conjugate()
                known[i, j] = known[j, i] = True
            elif abs(gi) > tol:
                return FeasibilityVerdict(
                    INFEASIBLE,
                    certificate=Certificate(REASON_OUTPUT_NULL, (i, j), abs(gi)),
                )
    return EnvironmentGram(values, known)


def _polar_tables(mods: list[np.ndarray], phases: list[np.ndarray]):
    k = len(mods)
    counts = np.array([m.size * p.size for m, p in zip(mods, phases)], dtype=np.int64)
    width = int(counts.max())
    values = np.zeros((k, width), dtype=np.complex128)
    for e in range(k):
        grid = mods[e][:, None] * np.exp(1j * phases[e][None, :])
        values[e, : counts[e]] = grid.reshape(-1)
    return values, counts


def _candidate_center(flat, mods, phases, counts):
    centers = []
    rem = int(flat)
    for e in range(len(mods) - 1, -1, -1):
        g = rem % int(counts[e])
        rem //= int(counts[e])
        centers.append((mods[e][g // phases[e].size], phases[e][g % phases[e].size]))
    centers.reverse()
    return centers


def complete_psd(
    eg: EnvironmentGram,
    tol: float = DEFAULT_TOL,
    backend: str | None = None,
) -> FeasibilityVerdict:
    """Search free overlaps over the closed unit disk for a PSD completion.

    At most three free entries are searched (coarse polar grid plus two
    tenfold refinements around the best candidate); more give an honest
    Undetermined.  The first feasible grid point in scan order wins, so
    the completion is reproducible across runs and backends.
    """
    free = eg.free_pairs()
    base = np.array(eg.values, dtype=np.complex128)
    if not free:
        margin = float(np.linalg.eigvalsh(base)[0])
        if margin >= -tol:
            return FeasibilityVerdict(REALIZABLE, completed_gram=base)
        return FeasibilityVerdict(
            INFEASIBLE, certificate=Certificate(REASON_PSD, None, abs(margin))
        )
    if len(free) > _MAX_FREE_ENTRIES:
        return FeasibilityVerdict(UNDETERMINED)

    k = len(free)
    pairs = np.array(free, dtype=np.int64)
    mod_step = _GRID_MOD_STEP
    phase_step = _GRID_PHASE_STEP
    mods = [np.linspace(0.0, 1.0, round(1.0 / mod_step) + 1)] * k
    phases = [np.arange(round(2.0 * math.pi / phase_step)) * phase_step] * k
    best_margin = -np.inf
    for _ in range(_REFINEMENTS + 1):
        values, counts = _polar_tables(mods, phases)
        result = _kernels.scan_completions(base, pairs, values, counts, tol, backend)
        if result.found >= 0:
            fills = _kernels.decode_candidate(result.found, values, counts)
            completed = base.copy()
            for (i, j), v in zip(free, fills):
                completed[i, j] = v
                completed[j, i] = v.conjugate()
            return FeasibilityVerdict(REALIZABLE, completed_gram=completed)
        best_margin = result.best_margin
        centers = _candidate_center(result.best, mods, phases, counts)
        mod_step /= 10.0
        phase_step /= 10.0
        offsets = np.arange(-10, 11, dtype=np.float64)
        mods = [np.clip(c[0] + offsets * mod_step, 0.0, 1.0) for c in centers]
        phases = [
            np.mod(c[1] + offsets * phase_step, 2.0 * math.pi) for c in centers
        ]
    return FeasibilityVerdict(
        INFEASIBLE, certificate=Certificate(REASON_PSD, None, abs(best_margin))
    )


def decide_feasibility(
    spec: ProcessSpec, tol: float = DEFAULT_TOL, backend: str | None = None
) -> FeasibilityVerdict:
    """environment_gram followed by complete_psd."""
    result = environment_gram(spec, tol)
    if isinstance(result, FeasibilityVerdict):
        return result
    return complete_psd(result, tol, backend)


def environment_vectors(
    completed_gram: np.ndarray, cutoff: float = _RANK_CUTOFF
) -> np.ndarray:
    """Unit environment states s_i realizing the completed Gram matrix.

    Returns an (r, n) matrix S with S^dagger S equal to the Gram matrix,
    r being its rank at eigenvalue ``cutoff``; column i is s_i in the
    minimal environment space.
    """
    g = np.asarray(completed_gram, dtype=np.complex128)
    eigvals, eigvecs = np.linalg.eigh(g)
    keep = eigvals > cutoff
    lam = eigvals[keep][::-1]
    w = eigvecs[:, keep][:, ::-1]
    return np.sqrt(lam)[:, None] * w.conj().T


def _orthonormal_complement(q: np.ndarray) -> np.ndarray:
    u, _, _ = np.linalg.svd(q, full_matrices=True)
    return u[:, q.shape[1]:]


def construct_isometry(
    spec: ProcessSpec,
    verdict: FeasibilityVerdict,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Explicit unitary on A(x)B(x)E realizing a Realizable verdict.

    The environment has dimension rank(completed Gram); the unitary sends
    a_i (x) e0 to b_i (x) s_i and is extended from an orthonormalization
    of the input family to the full space.
    """
    if not verdict.is_realizable:
        raise ValueError("construct_isometry needs a Realizable verdict")
    sig = environment_vectors(verdict.completed_gram)
    r = sig.shape[0]
    d = spec.dim_a * spec.dim_b
    a = spec.input_matrix()
    b = spec.output_matrix()
    e0 = np.zeros(r, dtype=np.complex128)
    e0[0] = 1.0
    x = np.column_stack([np.kron(a[:, i], e0) for i in range(spec.n)])
    y = np.column_stack([np.kron(b[:, i], sig[:, i]) for i in range(spec.n)])
    gx = x.conj().T @ x
    gy = y.conj().T @ y
    mismatch = float(np.max(np.abs(gx - gy)))
    if mismatch > max(tol, 1e-9) * 10.0:
        raise RuntimeError(
            f"input and dressed-output Gram matrices differ by {mismatch:.3e}; "
            "this indicates an inconsistent verdict"
        )
    min_eig = float(np.linalg.eigvalsh(gx)[0])
    if min_eig <= tol:
        raise DependentBasisError(min_eig)
    qx, rx = np.linalg.qr(x)
    ph = rx.diagonal() / np.abs(rx.diagonal())
    qx = qx * ph[None, :]
    rx = ph.conj()[:, None] * rx
    qy = np.linalg.solve(rx.T, y.T).T
    full_x = np.hstack([qx, _orthonormal_complement(qx)])
    full_y = np.hstack([qy, _orthonormal_complement(qy)])
    v = full_y @ full_x.conj().T
    assert v.shape == (d * r, d * r)
    return v


def _coherent_gram_check(verdict: FeasibilityVerdict, tol: float) -> bool:
    g = verdict.completed_gram
    return bool(np.max(np.abs(g - 1.0)) <= tol)


def _expand_input(spec: ProcessSpec, state: PureState, tol: float) -> np.ndarray:
    if state.dims != (spec.dim_a, spec.dim_b):
        raise ValueError(
            f"input dims {state.dims} do not match the process "
            f"({spec.dim_a}, {spec.dim_b})"
        )
    coeff, residual = span_coefficients(
        [s.vector for s in spec.inputs], state.vector, tol
    )
    if residual > tol:
        raise OutsideSpanError(residual)
    return coeff


def apply_process(
    spec: ProcessSpec,
    verdict: FeasibilityVerdict,
    state: PureState,
    tol: float = DEFAULT_TOL,
) -> PureState:
    """Coherent action on a superposition of the specified inputs.

    Valid only when all environment overlaps equal one: the environment
    then decouples and the process acts linearly, sending sum_i c_i a_i
    to sum_i c_i b_i.
    """
    if not verdict.is_realizable:
        raise ValueError("apply_process needs a Realizable verdict")
    if not _coherent_gram_check(verdict, tol):
        raise EnvironmentsDifferError()
    coeff = _expand_input(spec, state, tol)
    out = spec.output_matrix() @ coeff
    out = out / np.linalg.norm(out)
    return PureState((spec.dim_a, spec.dim_b), out)


def output_density(
    spec: ProcessSpec,
    verdict: FeasibilityVerdict,
    state: PureState,
    tol: float = DEFAULT_TOL,
) -> DensityMatrix:
    """System output with the environment traced out.

    For input sum_i c_i a_i the dilation leaves b_i entangled with the
    environment state s_i, so the system output is

        rho = sum_ij c_i conj(c_j) <s_j|s_i> |b_i><b_j|

    normalized to unit trace.  Pure (purity one) exactly when the
    environment overlaps on the support of c are all one.
    """
    if not verdict.is_realizable:
        raise ValueError("output_density needs a Realizable verdict")
    coeff = _expand_input(spec, state, tol)
    e = verdict.completed_gram
    weights = np.outer(coeff, coeff.conj()) * e.conj()
    b = spec.output_matrix()
    rho = b @ weights @ b.conj().T
    rho = rho / np.trace(rho).real
    return DensityMatrix(rho)
