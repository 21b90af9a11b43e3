"""Google matrix, hopping generator, and the jump-operator sets that drive
the three incoherent walk schemes (PD, OI, DI)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GoogleMatrix",
    "GeneratorMatrix",
    "LindbladSpec",
    "SCHEMES",
    "google_matrix",
    "generator_matrix",
    "lindblad_set",
]

SCHEMES = ("PD", "OI", "DI")

DEFAULT_ALPHA = 0.9
DEFAULT_GAMMA = 1.0


@dataclass(frozen=True)
class GoogleMatrix:
    """Column-stochastic transition matrix with damping ``alpha``.

    Column j holds the jump distribution out of vertex j; dangling columns
    are uniform 1/M.
    """

    dim: int
    entries: np.ndarray
    alpha: float

    def __post_init__(self):
        g = self.entries
        if g.shape != (self.dim, self.dim):
            raise ValueError("entries must be dim x dim")
        if np.any(g < 0):
            raise ValueError("Google matrix entries must be nonnegative")
        colsums = g.sum(axis=0)
        if np.max(np.abs(colsums - 1.0)) > 1e-12:
            raise ValueError("Google matrix columns must sum to 1")


@dataclass(frozen=True)
class GeneratorMatrix:
    """Scaled graph Laplacian of the undirected view: diagonal d_j * gamma,
    off-diagonal -gamma on adjacent pairs."""

    dim: int
    entries: np.ndarray
    gamma: float

    def __post_init__(self):
        h = self.entries
        if h.shape != (self.dim, self.dim):
            raise ValueError("entries must be dim x dim")
        if np.max(np.abs(h - h.T)) > 0:
            raise ValueError("generator matrix must be symmetric")


@dataclass(frozen=True)
class LindbladSpec:
    """Jump operators sqrt(G_ij) |i><j| over a scheme-dependent index set.

    PD keeps i == j, OI keeps i != j, DI keeps all pairs.  ``operator_count``
    is the nominal set size (M, M(M-1), M^2); zero-amplitude operators are
    not stored.
    """

    scheme: str
    source: GoogleMatrix

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")

    @property
    def dim(self):
        return self.source.dim

    @property
    def operator_count(self):
        m = self.dim
        return {"PD": m, "OI": m * (m - 1), "DI": m * m}[self.scheme]

    def index_mask(self):
        """Boolean M x M mask of (i, j) pairs the scheme includes."""
        m = self.dim
        if self.scheme == "PD":
            return np.eye(m, dtype=bool)
        if self.scheme == "OI":
            return ~np.eye(m, dtype=bool)
        return np.ones((m, m), dtype=bool)

    def amplitudes(self):
        """Matrix of sqrt(G_ij) restricted to the scheme's index set."""
        return np.where(self.index_mask(), np.sqrt(self.source.entries), 0.0)


def google_matrix(g, alpha=DEFAULT_ALPHA):
    """Build the damped column-stochastic matrix of a graph.

    Undirected graphs are treated as bidirected.  Entry (i, j) is
    alpha * A_ij / out-deg(j) + (1 - alpha)/M for non-dangling j, else 1/M,
    with A_ij = 1 iff an edge j -> i exists.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0,1], got {alpha}")
    m = g.vertex_count
    a = g.adjacency()
    outdeg = a.sum(axis=0)
    gm = np.empty((m, m))
    for j in range(m):
        if outdeg[j] > 0:
            gm[:, j] = alpha * a[:, j] / outdeg[j] + (1.0 - alpha) / m
        else:
            gm[:, j] = 1.0 / m
    return GoogleMatrix(m, gm, alpha)


def generator_matrix(g, gamma=DEFAULT_GAMMA):
    """Scaled Laplacian of the undirected view of ``g``."""
    if gamma <= 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    und = g.undirected_view()
    a = und.adjacency()
    h = gamma * (np.diag(a.sum(axis=0)) - a)
    return GeneratorMatrix(g.vertex_count, h, gamma)


def lindblad_set(gm, scheme):
    """Jump-operator set for one of the PD / OI / DI schemes."""
    return LindbladSpec(scheme, gm)
