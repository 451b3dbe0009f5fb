"""Single-kernel structured graph learning.

Learns a column-stochastic affinity graph Z by alternating two exact
block steps until the graph Laplacian acquires a c-dimensional null space:

  * embedding step: P <- the c eigenvectors of L(Z) with smallest
    eigenvalues (minimizes Tr(P^T L P) over orthonormal P);
  * graph step: every column of Z solves a simplex QP combining kernel
    self-expression, raw squared distances, an alpha-weighted ridge, and a
    gamma-weighted spectral-separation cost.

gamma brackets the rank target by doubling while fewer than c of the
smallest c+1 eigenvalues vanish and halving when all c+1 do.  alpha comes
from the neighborhood-size rule below so that the distance-only problem
keeps about k neighbors per sample.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InputError, NumericalError
from .kernels import pairwise_sq_dist, symmetrize
from .metrics import connected_components, labels_from_graph
from .simplex_qp import DEFAULT_MAX_ITER, DEFAULT_TOL, project_columns, solve_columns

ALPHA_FLOOR = 1e-12


@dataclass
class SgskConfig:
    """Settings shared by the single- and multiple-kernel optimizers.

    ``gamma0`` defaults to the estimated alpha when left as None.
    """
    c: int
    k: int
    gamma0: float | None = None
    gamma_adapt: bool = True
    eps_rank: float = 1e-8
    outer_tol: float = 1e-6
    max_outer: int = 50
    seed: int = 0
    local_weight: float = 1.0
    inner_tol: float = DEFAULT_TOL
    inner_max_iter: int = DEFAULT_MAX_ITER

    def validate(self, n, c=None):
        c = self.c if c is None else c
        if not 2 <= c < n:
            raise ConfigError(f"cluster count c must satisfy 2 <= c < n, got c={c}, n={n}")
        if not 1 <= self.k <= n - 2:
            raise ConfigError(f"neighborhood size k must satisfy 1 <= k <= n-2, got k={self.k}, n={n}")
        if self.gamma0 is not None and self.gamma0 <= 0:
            raise ConfigError(f"gamma0 must be positive, got {self.gamma0}")
        if self.eps_rank < 0 or self.outer_tol <= 0 or self.max_outer < 1:
            raise ConfigError("eps_rank must be >= 0, outer_tol > 0, max_outer >= 1")
        if self.local_weight < 0:
            raise ConfigError(f"local_weight must be nonnegative, got {self.local_weight}")


@dataclass
class IterationRecord:
    objective: float
    eig_sum: float
    gamma: float
    components: int
    kyfan_gap: float


@dataclass
class SgskResult:
    Z: np.ndarray
    P: np.ndarray
    eigenvalues: np.ndarray
    labels: np.ndarray
    history: list[IterationRecord] = field(default_factory=list)
    converged: bool = False
    alpha: float = 0.0
    final_gamma: float = 0.0
    n_components: int = 0
    used_kmeans_fallback: bool = False


def estimate_alpha(Dx, k):
    """Ridge weight from the k-neighbor rule.

    With each sample's distances to the other n-1 samples sorted ascending
    as d_(1) <= ... <= d_(n-1),

        alpha_i = (k/2) d_(k+1) - (1/2) sum_{j<=k} d_(j)

    is the largest ridge weight for which the distance-only column keeps
    exactly k nonzeros.  Nonpositive values (duplicate points) are floored
    at 1e-12.  Returns (mean alpha, per-point alphas).
    """
    Dx = np.asarray(Dx, dtype=float)
    n = Dx.shape[0]
    if not 1 <= k <= n - 2:
        raise ConfigError(f"k must satisfy 1 <= k <= n-2, got k={k}, n={n}")
    off = Dx[~np.eye(n, dtype=bool)].reshape(n, n - 1)  # self-distance dropped
    d = np.sort(off, axis=1)
    alpha_i = 0.5 * k * d[:, k] - 0.5 * d[:, :k].sum(axis=1)
    alpha_i = np.maximum(alpha_i, ALPHA_FLOOR)
    return float(alpha_i.mean()), alpha_i


def local_affinity(Dx, k):
    """Closed-form solution of the distance-only column problems.

    Using each point's own alpha_i, column i carries weight
    (d_(k+1) - d_ij) / (k d_(k+1) - sum_{j<=k} d_(j)) on its k nearest
    other samples and zero elsewhere: exactly k nonzeros per column for
    distinct distances.
    """
    Dx = np.asarray(Dx, dtype=float)
    n = Dx.shape[0]
    if not 1 <= k <= n - 2:
        raise ConfigError(f"k must satisfy 1 <= k <= n-2, got k={k}, n={n}")
    masked = Dx + np.diag(np.full(n, np.inf))
    order = np.argsort(masked, axis=1, kind="stable")[:, : k + 1]
    d = np.take_along_axis(masked, order, axis=1)
    denom = np.maximum(k * d[:, k] - d[:, :k].sum(axis=1), ALPHA_FLOOR)
    Z = np.zeros((n, n))
    rows = np.repeat(np.arange(n), k)
    Z[order[:, :k].ravel(), rows] = ((d[:, k, None] - d[:, :k]) / denom[:, None]).ravel()
    return Z


def build_laplacian(Z):
    """L = D - W for the symmetrized weights W = (Z + Z^T)/2."""
    W = symmetrize(np.asarray(Z, dtype=float))
    return np.diag(W.sum(axis=1)) - W


def smallest_eigpairs(L, c):
    """The c smallest eigenpairs of a symmetric Laplacian.

    Returns (P, eigenvalues) with orthonormal columns of P and ascending
    eigenvalues; Tr(P^T L P) equals their sum.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    if not 1 <= c < n:
        raise ConfigError(f"need 1 <= c < n, got c={c}, n={n}")
    try:
        vals, vecs = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("eigendecomposition of the Laplacian failed") from exc
    return vecs[:, :c], vals[:c]


def update_graph(K, Dx, P, alpha, gamma, local_weight=1.0, warm_start=None,
                 tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Block update of all graph columns for a fixed embedding.

    Column i minimizes

        z^T (alpha I + K) z + (lw * d^x_i + (gamma/2) d^p_i - 2 K_{i,:})^T z

    on the simplex, where d^p_ij = ||P_i - P_j||^2.  The n problems share
    their quadratic term and are solved as one batch.
    """
    K = np.asarray(K, dtype=float)
    Dx = np.asarray(Dx, dtype=float)
    if alpha <= 0:
        raise ConfigError(f"alpha must be positive, got {alpha}")
    if gamma < 0:
        raise ConfigError(f"gamma must be nonnegative, got {gamma}")
    n = K.shape[0]
    if K.shape != (n, n) or Dx.shape != (n, n) or P.shape[0] != n:
        raise InputError(f"inconsistent shapes: K {K.shape}, Dx {Dx.shape}, P {P.shape}")
    A = alpha * np.eye(n) + K
    Dp = pairwise_sq_dist(P)
    B = local_weight * Dx + (gamma / 2.0) * Dp - 2.0 * K  # column i is b_i (all symmetric)
    Z, _, _, _, _ = solve_columns(A, B, tol=tol, max_iter=max_iter, warm_start=warm_start)
    return Z


def objective_value(K, Dx, Z, P, alpha, gamma, local_weight=1.0):
    """Tr(K - 2KZ + Z^T K Z) + lw*Tr(Z^T D^x) + alpha*||Z||_F^2 + gamma*Tr(P^T L P)."""
    K = np.asarray(K, dtype=float)
    Z = np.asarray(Z, dtype=float)
    KZ = K @ Z
    value = float(np.trace(K) - 2.0 * np.trace(KZ) + np.sum(Z * KZ))
    value += local_weight * float(np.sum(Z * Dx))
    value += alpha * float(np.sum(Z * Z))
    if gamma != 0.0:
        L = build_laplacian(Z)
        value += gamma * float(np.sum(P * (L @ P)))
    return value


def adapt_gamma(eigenvalues, c, gamma, eps_rank=1e-8):
    """Double gamma while the rank target is unmet, halve when over-segmented.

    ``eigenvalues`` are the c+1 smallest, ascending.  Fewer than c of them
    at zero means the null space is too small (gamma doubles); all c+1 at
    zero means the graph split into too many components (gamma halves).
    """
    if gamma <= 0:
        raise ConfigError(f"gamma must be positive, got {gamma}")
    zeros = int(np.sum(np.asarray(eigenvalues, dtype=float)[: c + 1] <= eps_rank))
    if zeros < c:
        return 2.0 * gamma
    if zeros > c:
        return gamma / 2.0
    return gamma


def initial_graph(n, seed):
    """Seeded random column-stochastic start: iid uniform columns projected."""
    rng = np.random.default_rng(seed)
    return project_columns(rng.uniform(size=(n, n)))


def _check_fit_inputs(K, Dx):
    K = np.asarray(K, dtype=float)
    Dx = np.asarray(Dx, dtype=float)
    n = K.shape[0]
    if K.ndim != 2 or K.shape != (n, n) or Dx.shape != (n, n):
        raise InputError(f"kernel and distance matrices must be square and equal-sized, "
                         f"got {K.shape} and {Dx.shape}")
    if not (np.isfinite(K).all() and np.isfinite(Dx).all()):
        raise InputError("kernel or distance matrix contains NaN or Inf")
    return K, Dx, n


def sgsk_fit(K, Dx, cfg, z_init=None):
    """Alternating optimizer for the single-kernel structured graph.

    Stops once the c smallest Laplacian eigenvalues sum below
    ``cfg.eps_rank`` and the relative objective change drops below
    ``cfg.outer_tol``; hitting ``cfg.max_outer`` first is reported through
    ``converged=False`` rather than an error.  ``z_init`` overrides the
    seeded random start (used e.g. for equivariance checks).
    """
    K, Dx, n = _check_fit_inputs(K, Dx)
    cfg.validate(n)
    alpha, _ = estimate_alpha(Dx, cfg.k)
    gamma = cfg.gamma0 if cfg.gamma0 is not None else alpha

    Z = initial_graph(n, cfg.seed) if z_init is None else np.array(z_init, dtype=float)
    L = build_laplacian(Z)
    vals, vecs = np.linalg.eigh(L)

    history = []
    prev_obj = None
    converged = False
    for _ in range(cfg.max_outer):
        P = vecs[:, : cfg.c]
        kyfan_gap = abs(float(np.sum(P * (L @ P))) - float(vals[: cfg.c].sum()))
        Z = update_graph(K, Dx, P, alpha, gamma, local_weight=cfg.local_weight,
                         warm_start=Z, tol=cfg.inner_tol, max_iter=cfg.inner_max_iter)
        obj = objective_value(K, Dx, Z, P, alpha, gamma, local_weight=cfg.local_weight)
        L = build_laplacian(Z)
        vals, vecs = np.linalg.eigh(L)
        eig_sum = float(vals[: cfg.c].sum())
        _, ncomp = connected_components(Z, cfg.eps_rank)
        history.append(IterationRecord(obj, eig_sum, gamma, ncomp, kyfan_gap))

        small_change = (prev_obj is not None
                        and abs(obj - prev_obj) <= cfg.outer_tol * max(abs(prev_obj), 1e-12))
        if eig_sum < cfg.eps_rank and small_change:
            converged = True
            break
        if cfg.gamma_adapt:
            gamma = adapt_gamma(vals[: cfg.c + 1], cfg.c, gamma, cfg.eps_rank)
        prev_obj = obj

    P = vecs[:, : cfg.c]
    labels, fallback = labels_from_graph(Z, P, cfg.c, cfg.eps_rank)
    _, ncomp = connected_components(Z, cfg.eps_rank)
    return SgskResult(Z=Z, P=P, eigenvalues=vals[: cfg.c], labels=labels,
                      history=history, converged=converged, alpha=alpha,
                      final_gamma=history[-1].gamma if history else gamma,
                      n_components=ncomp, used_kmeans_fallback=fallback)
