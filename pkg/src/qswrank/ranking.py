"""Vertex ranking: classical PageRank, quantum walk ranks, degeneracy
counting, convergence times, and the interpolation-parameter sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP

import numpy as np

from .dynamics import (
    ProbabilityVector,
    Superoperator,
    assemble_superoperator,
    maximally_mixed,
    vectorize,
)
from .graphs import Graph
from .operators import (
    DEFAULT_ALPHA,
    DEFAULT_GAMMA,
    generator_matrix,
    google_matrix,
    lindblad_set,
)

__all__ = [
    "RankReport",
    "SweepResult",
    "cpr",
    "qpr",
    "round_to_sig",
    "degeneracy_count",
    "convergence_time",
    "sweep_omega",
    "spectral_bound",
    "DEFAULT_RANK_TF",
    "DEFAULT_SWEEP_TF",
    "DEFAULT_TOL",
    "DEFAULT_SIG_DIGITS",
    "DEFAULT_OMEGA_GRID",
]

DEFAULT_RANK_TF = 200.0
DEFAULT_SWEEP_TF = 800.0
DEFAULT_TOL = 1e-6
DEFAULT_SIG_DIGITS = 4
DEFAULT_OMEGA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 11))

_POWER_ITERATION_CAP = 10 ** 6


@dataclass(frozen=True)
class RankReport:
    """Per-vertex scores for one ranking method plus run parameters."""

    ranks: ProbabilityVector
    rounded: tuple
    order: tuple
    degeneracy: int
    scheme: str  # CPR | QPR-PD | QPR-OI | QPR-DI
    omega: float
    tf: float
    alpha: float
    seed: int = None


@dataclass(frozen=True)
class SweepResult:
    """Convergence-time ratios over an omega grid, averaged over replicates.

    ``tau`` maps scheme -> per-replicate integer times, shape
    (replicates, len(omegas)); ``tau_ratio`` maps scheme -> mean ratio per
    omega, each replicate normalized by its own DI time at omega = 1.
    """

    omegas: tuple
    tau: dict
    tau_ratio: dict
    replicates: int


def cpr(gm, tol=1e-12, alpha=None, tf=None):
    """Stationary distribution of the Google matrix by power iteration."""
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    m = gm.dim
    g = gm.entries
    p = np.full(m, 1.0 / m)
    for _ in range(_POWER_ITERATION_CAP):
        nxt = g @ p
        nxt /= nxt.sum()
        if np.abs(g @ nxt - nxt).sum() < tol:
            return ProbabilityVector(m, nxt)
        p = nxt
    raise RuntimeError(f"power iteration did not reach residual {tol}")


def round_to_sig(x, sig_digits=DEFAULT_SIG_DIGITS):
    """Round to ``sig_digits`` significant decimal digits, half away from
    zero."""
    if x == 0 or not math.isfinite(x):
        return float(x)
    d = Decimal(repr(float(x)))
    shift = sig_digits - 1 - math.floor(math.log10(abs(x)))
    q = Decimal(1).scaleb(-shift)
    return float(d.quantize(q, rounding=ROUND_HALF_UP))


def degeneracy_count(ranks, sig_digits=DEFAULT_SIG_DIGITS):
    """Number of vertices sharing a rounded score with another vertex:
    M minus the count of distinct rounded values."""
    vals = ranks.entries if isinstance(ranks, ProbabilityVector) else np.asarray(ranks)
    rounded = [round_to_sig(float(v), sig_digits) for v in vals]
    return len(rounded) - len(set(rounded))


def _report(scores, scheme, omega, tf, alpha, seed, sig_digits=DEFAULT_SIG_DIGITS):
    m = len(scores)
    pv = ProbabilityVector(m, np.asarray(scores, dtype=float))
    rounded = tuple(round_to_sig(float(v), sig_digits) for v in scores)
    # sort on rounded scores so near-machine-epsilon differences between
    # exactly-tied vertices do not defeat the vertex-id tie-break
    order = tuple(
        sorted(range(1, m + 1), key=lambda v: (-rounded[v - 1], v))
    )
    return RankReport(
        ranks=pv,
        rounded=rounded,
        order=order,
        degeneracy=degeneracy_count(pv, sig_digits),
        scheme=scheme,
        omega=omega,
        tf=tf,
        alpha=alpha,
        seed=seed,
    )


def cpr_report(g, alpha=DEFAULT_ALPHA, tol=1e-12, sig_digits=DEFAULT_SIG_DIGITS,
               seed=None):
    """Classical PageRank of a graph wrapped in a RankReport."""
    scores = cpr(google_matrix(g, alpha), tol).entries
    return _report(scores, "CPR", None, None, alpha, seed, sig_digits)


def _quantum_superoperator(g, scheme, omega, alpha, gamma):
    h = generator_matrix(g, gamma)
    lset = lindblad_set(google_matrix(g, alpha), scheme)
    return assemble_superoperator(h, lset, omega)


def qpr(g, scheme, omega, tf=DEFAULT_RANK_TF, alpha=DEFAULT_ALPHA,
        gamma=DEFAULT_GAMMA, sig_digits=DEFAULT_SIG_DIGITS, seed=None):
    """Quantum walk ranks: diagonal of rho(tf) starting from the maximally
    mixed state.

    Only the OI and DI schemes rank; PD freezes populations and omega = 0 is
    purely unitary with no stationary state.
    """
    if scheme not in ("OI", "DI"):
        raise ValueError(
            f"scheme must be OI or DI for ranking, got {scheme!r}"
        )
    if not 0.0 < omega <= 1.0:
        raise ValueError(f"omega must be in (0,1] for ranking, got {omega}")
    superop = _quantum_superoperator(g, scheme, omega, alpha, gamma)
    diags = _diag_at_times(superop, [tf])
    scores = diags[0]
    total = scores.sum()
    if abs(total - 1.0) > 1e-8:
        raise RuntimeError(f"rank normalization drifted: sum = {total!r}")
    scores = np.maximum(scores, 0.0)
    scores /= scores.sum()
    return _report(scores, f"QPR-{scheme}", omega, tf, alpha, seed, sig_digits)


def _diag_at_times(superop, times):
    """Diagonals of rho(t) at the requested increasing times, single pass."""
    from scipy.sparse.linalg import expm_multiply

    from .dynamics import _pinned_rng

    m = superop.dim
    diag_idx = np.arange(m) * m + np.arange(m)
    v = vectorize(maximally_mixed(m)).astype(complex)
    out = []
    prev = 0.0
    for t in times:
        if t > prev:
            with _pinned_rng():
                v = expm_multiply(superop.matrix * (t - prev), v)
            prev = t
        out.append(np.real(v[diag_idx]).copy())
    return out


def _diag_trajectory_integer(superop, t_max, chunk=100):
    """Diagonals of rho(t) for t = 0, 1, ..., t_max (from the mixed state)."""
    from scipy.sparse.linalg import expm_multiply

    from .dynamics import _pinned_rng

    m = superop.dim
    diag_idx = np.arange(m) * m + np.arange(m)
    v = vectorize(maximally_mixed(m)).astype(complex)
    diags = [np.real(v[diag_idx]).copy()]
    t = 0
    while t < t_max:
        steps = min(chunk, t_max - t)
        with _pinned_rng():
            block = expm_multiply(
                superop.matrix, v, start=0.0, stop=float(steps),
                num=steps + 1, endpoint=True,
            )
        for s in range(1, steps + 1):
            diags.append(np.real(block[s][diag_idx]).copy())
        v = block[steps]
        t += steps
    return diags


def convergence_time(g, scheme, omega, tf=DEFAULT_SWEEP_TF, tol=DEFAULT_TOL,
                     alpha=DEFAULT_ALPHA, gamma=DEFAULT_GAMMA):
    """Smallest integer t with ||diag rho(t) - diag rho(tf)||_2 < tol.

    rho(tf) stands in for the stationary state; a guard requires the last
    unit step to move the diagonal by less than tol/10.
    """
    if scheme not in ("OI", "DI"):
        raise ValueError(f"scheme must be OI or DI, got {scheme!r}")
    superop = _quantum_superoperator(g, scheme, omega, alpha, gamma)
    return _convergence_time_superop(superop, int(tf), tol)


def _convergence_time_superop(superop, tf, tol):
    diags = _diag_trajectory_integer(superop, tf)
    eq = diags[-1]
    if np.linalg.norm(diags[-2] - eq) >= tol / 10:
        raise RuntimeError(
            f"state not stationary at tf={tf}; increase tf"
        )
    for t, d in enumerate(diags):
        if np.linalg.norm(d - eq) < tol:
            return t
    raise RuntimeError(f"no convergence within tf={tf}")


def sweep_omega(g, grid=DEFAULT_OMEGA_GRID, tf=DEFAULT_SWEEP_TF,
                tol=DEFAULT_TOL, alpha=DEFAULT_ALPHA, gamma=DEFAULT_GAMMA,
                replicates=1, seed=0):
    """Convergence-time ratio curves over an omega grid for both schemes.

    ``g`` is a directed Graph, an undirected Graph (randomly oriented per
    replicate), or a callable seed -> Graph generating one replicate network.
    Each replicate's times are normalized by its own DI time at omega = 1.
    """
    grid = tuple(grid)
    if not all(0.0 < w <= 1.0 for w in grid):
        raise ValueError("omega grid must lie in (0, 1]")
    if 1.0 not in grid:
        raise ValueError("omega grid must contain 1.0 for normalization")
    rep_graphs = []
    rng_seeds = [seed + 1000 * i for i in range(replicates)]
    for s in rng_seeds:
        if callable(g):
            gg = g(s)
        else:
            gg = g
        if not gg.directed:
            from .graphs import random_orientation

            gg = random_orientation(gg, s)
        rep_graphs.append(gg)

    tau = {"OI": [], "DI": []}
    for gg in rep_graphs:
        for scheme in ("OI", "DI"):
            row = [
                convergence_time(gg, scheme, w, tf, tol, alpha, gamma)
                for w in grid
            ]
            tau[scheme].append(row)
    tau = {k: np.array(v) for k, v in tau.items()}
    i_one = grid.index(1.0)
    denom = tau["DI"][:, i_one].astype(float)
    ratio = {
        k: tuple((tau[k] / denom[:, None]).mean(axis=0)) for k in tau
    }
    return SweepResult(
        omegas=grid,
        tau={k: v.tolist() for k, v in tau.items()},
        tau_ratio=ratio,
        replicates=replicates,
    )


def spectral_bound(superop):
    """Upper bound 1/|Re lambda_1| on the convergence time, lambda_1 being
    the eigenvalue of largest real part excluding the stationary zero.

    Returns inf when no decaying eigenvalue exists (purely unitary flow).
    """
    vals = np.linalg.eigvals(superop.matrix.toarray())
    decaying = vals[np.real(vals) < -1e-12]
    if decaying.size == 0:
        return math.inf
    lam1 = decaying[np.argmax(np.real(decaying))]
    return 1.0 / abs(np.real(lam1))
