"""Graph-based semi-supervised classification.

The multiple-kernel loop runs unchanged except for the embedding step:
labeled rows of P are clamped to their one-hot targets and the unlabeled
block solves the harmonic system

    P_u = -L_uu^{-1} L_ul Y_l,

the stationarity condition (L P)_u = 0.  No rank bracketing happens in
this mode (P is not orthonormal), so gamma stays fixed.  Final labels are
the row argmax of P.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ConfigError, InputError, SingularSystemError
from .metrics import connected_components
from .multi_kernel import H_FLOOR, combine_kernels, compute_h, update_weights
from .single_kernel import (build_laplacian, estimate_alpha, initial_graph,
                            update_graph, _check_fit_inputs)

_RIDGE = 1e-10  # scaled by mean diagonal of L_uu before the solve


@dataclass
class LabelSet:
    """Labeled sample indices with their one-hot targets (classes 1..c)."""
    labeled_indices: np.ndarray
    Yl: np.ndarray
    c: int

    @classmethod
    def from_labels(cls, indices, classes, c):
        """Build from 1-based class ids of the labeled samples."""
        indices = np.asarray(indices, dtype=int)
        classes = np.asarray(classes, dtype=int)
        if indices.shape != classes.shape or indices.ndim != 1:
            raise InputError("indices and classes must be equal-length vectors")
        if classes.size and (classes.min() < 1 or classes.max() > c):
            raise ConfigError(f"class ids must lie in 1..{c}")
        Yl = np.zeros((indices.size, c))
        Yl[np.arange(indices.size), classes - 1] = 1.0
        return cls(labeled_indices=indices, Yl=Yl, c=c)

    def validate(self, n):
        idx = np.asarray(self.labeled_indices, dtype=int)
        if idx.ndim != 1 or idx.size == 0:
            raise ConfigError("at least one labeled sample is required")
        if idx.min() < 0 or idx.max() >= n or np.unique(idx).size != idx.size:
            raise ConfigError("labeled indices must be unique and within range")
        Yl = np.asarray(self.Yl, dtype=float)
        if Yl.shape != (idx.size, self.c):
            raise InputError(f"Yl must be {idx.size}x{self.c}, got {Yl.shape}")
        onehot = (Yl == 1.0).sum(axis=1) == 1
        if not (np.all(onehot) and np.all((Yl == 0.0).sum(axis=1) == self.c - 1)):
            raise InputError("every row of Yl must be one-hot")
        if not np.all(Yl.sum(axis=0) >= 1):
            raise ConfigError("every class must have at least one labeled sample")


@dataclass
class SslResult:
    Z: np.ndarray
    P: np.ndarray
    predicted_labels: np.ndarray
    weights: np.ndarray
    history: list[float] = field(default_factory=list)
    converged: bool = False
    alpha: float = 0.0


def _unlabeled_diagnosis(L, labeled):
    """Name the unlabeled components that make the harmonic system singular."""
    W = np.maximum(-L, 0.0)
    np.fill_diagonal(W, 0.0)
    comp, count = connected_components(W, eps=0.0)
    labeled = set(int(i) for i in labeled)
    orphans = [np.nonzero(comp == cid)[0].tolist() for cid in range(1, count + 1)
               if not labeled.intersection(np.nonzero(comp == cid)[0].tolist())]
    return orphans


def harmonic_labels(L, labels):
    """Clamp labeled rows to Y_l and solve the unlabeled harmonic block.

    Rows of the unlabeled block are convex combinations of labeled rows
    (so in [0, 1] and summing to 1) whenever every connected component
    touches a label.  A tiny ridge keeps label-free components from
    crashing the solve outright; a hopeless system still raises
    SingularSystemError naming the offending components.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    labels.validate(n)
    lab = np.asarray(labels.labeled_indices, dtype=int)
    unl = np.setdiff1d(np.arange(n), lab)
    P = np.zeros((n, labels.c))
    P[lab] = labels.Yl
    if unl.size == 0:
        return P
    Luu = L[np.ix_(unl, unl)]
    Lul = L[np.ix_(unl, lab)]
    ridge = _RIDGE * np.trace(Luu) / unl.size
    try:
        factor = scipy.linalg.cho_factor(Luu + ridge * np.eye(unl.size))
        Pu = scipy.linalg.cho_solve(factor, -Lul @ labels.Yl)
    except np.linalg.LinAlgError as exc:
        orphans = _unlabeled_diagnosis(L, lab)
        raise SingularSystemError(
            f"harmonic system singular; components without labels: {orphans}") from exc
    if not np.isfinite(Pu).all():
        orphans = _unlabeled_diagnosis(L, lab)
        raise SingularSystemError(
            f"harmonic solve produced non-finite rows; components without labels: {orphans}")
    P[unl] = Pu
    return P


def decide_labels(P):
    """Row argmax as 1-based class ids; ties go to the smallest class index."""
    P = np.asarray(P, dtype=float)
    if not np.isfinite(P).all():
        raise InputError("decision matrix contains NaN or Inf")
    return np.argmax(P, axis=1) + 1


def sgmk_ssl_fit(kernels, Dx, labels, cfg, z_init=None):
    """Multiple-kernel loop with the embedding step replaced by harmonic labels.

    The class count comes from ``labels``; gamma is fixed at ``cfg.gamma0``
    (or the estimated alpha) because the eigenvalue-count signal behind the
    gamma bracketing does not exist here.  Stops on relative objective
    change below ``cfg.outer_tol``.
    """
    kernels = [np.asarray(K, dtype=float) for K in kernels]
    if not kernels:
        raise InputError("kernel bank is empty")
    _, Dx, n = _check_fit_inputs(kernels[0], Dx)
    if any(K.shape != (n, n) for K in kernels):
        raise InputError("kernels differ in shape")
    labels.validate(n)
    cfg.validate(n, c=labels.c)
    r = len(kernels)
    alpha, _ = estimate_alpha(Dx, cfg.k)
    gamma = cfg.gamma0 if cfg.gamma0 is not None else alpha
    w = np.full(r, 1.0 / r)

    Z = initial_graph(n, cfg.seed) if z_init is None else np.array(z_init, dtype=float)
    history = []
    prev_obj = None
    converged = False
    for _ in range(cfg.max_outer):
        Kw = combine_kernels(kernels, w)
        L = build_laplacian(Z)
        P = harmonic_labels(L, labels)
        Z = update_graph(Kw, Dx, P, alpha, gamma, local_weight=cfg.local_weight,
                         warm_start=Z, tol=cfg.inner_tol, max_iter=cfg.inner_max_iter)
        h = compute_h(kernels, Z)
        w = update_weights(np.maximum(h, H_FLOOR))

        obj = float(w @ h)
        obj += cfg.local_weight * float(np.sum(Z * Dx))
        obj += alpha * float(np.sum(Z * Z))
        obj += gamma * float(np.sum(P * (build_laplacian(Z) @ P)))
        history.append(obj)

        if prev_obj is not None and abs(obj - prev_obj) <= cfg.outer_tol * max(abs(prev_obj), 1e-12):
            converged = True
            break
        prev_obj = obj

    P = harmonic_labels(build_laplacian(Z), labels)  # read-out on the final graph
    return SslResult(Z=Z, P=P, predicted_labels=decide_labels(P), weights=w,
                     history=history, converged=converged, alpha=alpha)
