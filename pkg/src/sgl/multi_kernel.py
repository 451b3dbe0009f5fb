"""Multiple-kernel extension: consensus kernel, residual scores, weight updates.

Each iteration combines the bank with the current weights, runs one
embedding step and one graph step of the single-kernel machinery, scores
every kernel by its self-expression residual h_i, and recomputes the
weights in closed form:

    w_i = (h_i * sum_j 1/h_j)^-2,

the minimizer of sum_i w_i h_i subject to sum_i sqrt(w_i) = 1, w >= 0.
Smaller residual, larger weight.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalError
from .metrics import connected_components, labels_from_graph
from .single_kernel import (IterationRecord, SgskResult, adapt_gamma,
                            build_laplacian, estimate_alpha, initial_graph,
                            update_graph, _check_fit_inputs)

H_FLOOR = 1e-12  # a perfectly self-expressed kernel would get infinite weight


@dataclass
class SgmkResult(SgskResult):
    weights: np.ndarray = None
    weight_history: list[np.ndarray] = field(default_factory=list)


def combine_kernels(kernels, w):
    """K_w = sum_i w_i K^i."""
    w = np.asarray(w, dtype=float)
    if len(kernels) == 0 or w.shape != (len(kernels),):
        raise InputError(f"need one weight per kernel, got {w.shape} for {len(kernels)} kernels")
    shape = np.shape(kernels[0])
    if any(np.shape(K) != shape for K in kernels):
        raise InputError("kernels differ in shape")
    return np.tensordot(w, np.stack(kernels), axes=1)


def compute_h(kernels, Z):
    """Self-expression residual Tr(K^i - 2 K^i Z + Z^T K^i Z) per kernel."""
    Z = np.asarray(Z, dtype=float)
    h = np.empty(len(kernels))
    for i, K in enumerate(kernels):
        KZ = K @ Z
        h[i] = np.trace(K) - 2.0 * np.trace(KZ) + np.sum(Z * KZ)
    return h


def update_weights(h):
    """Closed-form weights on the sqrt-simplex from positive residuals."""
    h = np.asarray(h, dtype=float)
    if h.size == 0 or np.any(h <= 0):
        raise NumericalError("kernel residuals must be positive for the weight update")
    return (h * np.sum(1.0 / h)) ** -2.0


def sgmk_fit(kernels, Dx, cfg, z_init=None):
    """Alternating optimizer over (graph, embedding, kernel weights).

    Weights start uniform at 1/r; stopping mirrors the single-kernel fit.
    With one kernel the iterates coincide with :func:`sgsk_fit` for the
    same seed.
    """
    kernels = [np.asarray(K, dtype=float) for K in kernels]
    if not kernels:
        raise InputError("kernel bank is empty")
    _, Dx, n = _check_fit_inputs(kernels[0], Dx)
    if any(K.shape != (n, n) for K in kernels):
        raise InputError("kernels differ in shape")
    cfg.validate(n)
    r = len(kernels)
    alpha, _ = estimate_alpha(Dx, cfg.k)
    gamma = cfg.gamma0 if cfg.gamma0 is not None else alpha
    w = np.full(r, 1.0 / r)

    Z = initial_graph(n, cfg.seed) if z_init is None else np.array(z_init, dtype=float)
    L = build_laplacian(Z)
    vals, vecs = np.linalg.eigh(L)

    history = []
    weight_history = []
    prev_obj = None
    converged = False
    for _ in range(cfg.max_outer):
        Kw = combine_kernels(kernels, w)
        P = vecs[:, : cfg.c]
        kyfan_gap = abs(float(np.sum(P * (L @ P))) - float(vals[: cfg.c].sum()))
        Z = update_graph(Kw, Dx, P, alpha, gamma, local_weight=cfg.local_weight,
                         warm_start=Z, tol=cfg.inner_tol, max_iter=cfg.inner_max_iter)
        h = compute_h(kernels, Z)
        w = update_weights(np.maximum(h, H_FLOOR))
        weight_history.append(w.copy())

        # objective with the refreshed weights; sum(w*h) is its self-expression part
        obj = float(w @ h)
        obj += cfg.local_weight * float(np.sum(Z * Dx))
        obj += alpha * float(np.sum(Z * Z))
        L = build_laplacian(Z)
        obj += gamma * float(np.sum(P * (L @ P)))

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
    return SgmkResult(Z=Z, P=P, eigenvalues=vals[: cfg.c], labels=labels,
                      history=history, converged=converged, alpha=alpha,
                      final_gamma=history[-1].gamma if history else gamma,
                      n_components=ncomp, used_kmeans_fallback=fallback,
                      weights=w, weight_history=weight_history)
