"""Time evolution: vectorized master-equation flow for the quantum walk and
the classical continuous-time random walk.

Density matrices are column-stacked (Fortran order), so left multiplication
by A maps to kron(I, A) and right multiplication by B to kron(B.T, I).  The
dissipator is assembled analytically from the rank-1 jump structure; the
full operator stays sparse with O(M^2) nonzeros.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

__all__ = [
    "DensityState",
    "Superoperator",
    "ProbabilityVector",
    "NumericalInstabilityError",
    "maximally_mixed",
    "vectorize",
    "devectorize",
    "assemble_superoperator",
    "evolve_density",
    "ctrw_propagate",
    "pd_offdiagonal_probe",
]

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8


class NumericalInstabilityError(RuntimeError):
    """Evolution drifted off the physical state manifold beyond tolerance."""


@contextlib.contextmanager
def _pinned_rng():
    """Pin numpy's global RNG around exponential-action calls.

    scipy's expm_multiply estimates operator norms with a randomized
    1-norm estimator that draws from the global RNG; pinning the state
    makes every evolution bit-for-bit reproducible.
    """
    state = np.random.get_state()
    np.random.seed(0)
    try:
        yield
    finally:
        np.random.set_state(state)


@dataclass(frozen=True)
class DensityState:
    """Hermitian, unit-trace, positive-semidefinite M x M matrix."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        rho = self.entries
        if rho.shape != (self.dim, self.dim):
            raise ValueError("entries must be dim x dim")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITICITY_TOL:
            raise NumericalInstabilityError(
                f"Hermiticity drift {herm:.3e} exceeds {HERMITICITY_TOL}"
            )
        tr = abs(np.trace(rho) - 1.0)
        if tr > TRACE_TOL:
            raise NumericalInstabilityError(
                f"trace drift {tr:.3e} exceeds {TRACE_TOL}"
            )
        lo = np.linalg.eigvalsh((rho + rho.conj().T) / 2).min()
        if lo < -POSITIVITY_TOL:
            raise NumericalInstabilityError(
                f"negative eigenvalue {lo:.3e} below -{POSITIVITY_TOL}"
            )

    def diagonal(self):
        return np.real(np.diag(self.entries)).copy()


@dataclass(frozen=True)
class Superoperator:
    """Sparse M^2 x M^2 generator of the vectorized density-matrix flow."""

    dim: int
    matrix: sp.spmatrix
    omega: float

    def __post_init__(self):
        d2 = self.dim * self.dim
        if self.matrix.shape != (d2, d2):
            raise ValueError("matrix must be dim^2 x dim^2")


@dataclass(frozen=True)
class ProbabilityVector:
    dim: int
    entries: np.ndarray

    def __post_init__(self):
        p = self.entries
        if p.shape != (self.dim,):
            raise ValueError("entries must have length dim")
        if np.min(p) < -1e-10:
            raise ValueError(f"negative probability {np.min(p):.3e}")
        if abs(p.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")


def maximally_mixed(m):
    """The uniform diagonal state 1/M, the default initial condition."""
    return DensityState(m, np.eye(m, dtype=complex) / m)


def vectorize(rho):
    """Column-stack a density matrix into an M^2 vector."""
    if isinstance(rho, DensityState):
        rho = rho.entries
    return np.asarray(rho).flatten(order="F")


def devectorize(v, enforce=True):
    """Inverse of :func:`vectorize`; optionally validate the state."""
    v = np.asarray(v)
    m = int(round(np.sqrt(v.size)))
    if m * m != v.size:
        raise ValueError(f"length {v.size} is not a perfect square")
    rho = v.reshape((m, m), order="F")
    if not enforce:
        return rho
    return DensityState(m, rho)


def assemble_superoperator(h, lset, omega):
    """Sparse generator of the interpolated coherent/incoherent flow.

    Coherent part: -i (1-omega) (kron(I, H) - kron(H.T, I)).
    Dissipator, accumulated from sqrt(G_ij)|i><j| without materializing the
    operators: each pair (i, j) contributes G_ij at row (i, i), column (j, j)
    in block coordinates, and the anticommutator halves are diagonal.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must be in [0,1], got {omega}")
    m = lset.dim
    if h.dim != m:
        raise ValueError(f"dimension mismatch: H is {h.dim}, set is {m}")
    hm = h.entries
    eye = sp.identity(m, format="csr")
    op = sp.csr_matrix((m * m, m * m), dtype=complex)
    if omega < 1.0:
        hs = sp.csr_matrix(hm)
        op = op + (-1j) * (1.0 - omega) * (
            sp.kron(eye, hs, format="csr") - sp.kron(hs.T, eye, format="csr")
        )
    if omega > 0.0:
        mask = lset.index_mask()
        rates = np.where(mask, lset.source.entries, 0.0)
        ii, jj = np.nonzero(rates)
        # kron row/col index for basis element (a, b) of rho is b*M + a
        rows = ii * m + ii
        cols = jj * m + jj
        scatter = sp.coo_matrix(
            (rates[ii, jj], (rows, cols)), shape=(m * m, m * m)
        ).tocsr()
        decay = rates.sum(axis=0)  # sum_i G_ij over the scheme's rows
        dsup = sp.kron(eye, sp.diags(decay), format="csr") + sp.kron(
            sp.diags(decay), eye, format="csr"
        )
        op = op + omega * (scatter - 0.5 * dsup)
    return Superoperator(m, op.tocsr(), omega)


def _symmetrized(rho):
    return (rho + rho.conj().T) / 2


def evolve_density(superop, rho0, t):
    """Propagate a state for time ``t`` via the action of the exponential.

    The dense exponential is never formed; scipy's Krylov/Taylor action is
    applied to the vectorized state.  The output is symmetrized when the
    Hermiticity drift is within tolerance, otherwise an error reports the
    drift magnitude.
    """
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if rho0.dim != superop.dim:
        raise ValueError("state and superoperator dimensions differ")
    if t == 0:
        return rho0
    with _pinned_rng():
        v = expm_multiply(superop.matrix * t, vectorize(rho0))
    rho = devectorize(v, enforce=False)
    drift = np.max(np.abs(rho - rho.conj().T))
    if drift > HERMITICITY_TOL:
        raise NumericalInstabilityError(
            f"Hermiticity drift {drift:.3e} after evolution to t={t}"
        )
    return DensityState(superop.dim, _symmetrized(rho))


def diagonal_trajectory(superop, rho0, times):
    """Diagonals of rho(t) on an increasing grid of times (single pass).

    Yields (t, diag) pairs; used by the convergence-time search where only
    populations matter.
    """
    v = vectorize(rho0).astype(complex)
    m = superop.dim
    diag_idx = np.arange(m) * m + np.arange(m)
    prev_t = 0.0
    for t in times:
        dt = t - prev_t
        if dt < 0:
            raise ValueError("times must be non-decreasing")
        if dt > 0:
            with _pinned_rng():
                v = expm_multiply(superop.matrix * dt, v)
        prev_t = t
        yield t, np.real(v[diag_idx]).copy()


def ctrw_propagate(h, p0, t):
    """Classical continuous-time walk: p(t) = exp(-H t) p0."""
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if p0.dim != h.dim:
        raise ValueError("vector and generator dimensions differ")
    if t > 0:
        with _pinned_rng():
            p = expm_multiply(sp.csr_matrix(-h.entries) * t,
                              p0.entries.astype(float))
    else:
        p = p0.entries.copy()
    p = np.maximum(np.real(p), 0.0)
    p = p / p.sum()
    return ProbabilityVector(h.dim, p)


def pd_offdiagonal_probe(gm, rho0, t, omega=1.0):
    """Diagnostics for the pure-dephasing flow at full incoherence.

    Returns (diag_drift, ratios): the max population change and, for every
    pair with a nonzero initial coherence, |rho_ij(t)| / |rho_ij(0)|.  Under
    the PD jump set the coherence (i, j) decays at rate
    omega * (G_ii + G_jj) / 2 and populations are conserved.
    """
    from .operators import GeneratorMatrix, lindblad_set

    if omega != 1.0:
        raise ValueError("probe is defined for omega = 1")
    m = gm.dim
    # coherent term vanishes at omega = 1; a zero Hamiltonian keeps the
    # assembly path uniform
    h = GeneratorMatrix(m, np.zeros((m, m)), 1.0)
    superop = assemble_superoperator(h, lindblad_set(gm, "PD"), omega)
    rho_t = evolve_density(superop, rho0, t)
    r0 = rho0.entries
    rt = rho_t.entries
    diag_drift = float(np.max(np.abs(np.diag(rt) - np.diag(r0))))
    ratios = {}
    for i in range(m):
        for j in range(m):
            if i != j and abs(r0[i, j]) > 0:
                ratios[(i + 1, j + 1)] = float(abs(rt[i, j]) / abs(r0[i, j]))
    return diag_drift, ratios
