"""Turning learned graphs into labels and scoring them.

Labelings are 1-based integer vectors.  All three scores are invariant
under relabeling of either argument.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ConfigError, InputError


def connected_components(Z, eps=1e-8):
    """Component labels of the thresholded symmetric graph.

    Edge (i, j) exists iff (z_ij + z_ji) / 2 > eps (strict).  Labels are
    1-based, numbered by order of first appearance.  Returns (labels, count).
    """
    if eps < 0:
        raise ConfigError(f"threshold eps must be nonnegative, got {eps}")
    Z = np.asarray(Z, dtype=float)
    W = (Z + Z.T) / 2.0
    n = W.shape[0]
    adj = W > eps
    np.fill_diagonal(adj, False)
    labels = np.zeros(n, dtype=int)
    count = 0
    for start in range(n):
        if labels[start]:
            continue
        count += 1
        labels[start] = count
        stack = [start]
        while stack:
            i = stack.pop()
            for j in np.nonzero(adj[i])[0]:
                if not labels[j]:
                    labels[j] = count
                    stack.append(j)
    return labels, count


def _contingency(pred, truth):
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.size != truth.size or pred.size == 0:
        raise InputError(
            f"labelings must be nonempty and equal-length, got {pred.size} vs {truth.size}")
    _, pinv = np.unique(pred, return_inverse=True)
    _, tinv = np.unique(truth, return_inverse=True)
    C = np.zeros((pinv.max() + 1, tinv.max() + 1), dtype=np.int64)
    np.add.at(C, (pinv, tinv), 1)
    return C


def clustering_accuracy(pred, truth):
    """Fraction correct under the best bijection between cluster ids.

    The contingency table is padded to square and matched by the Hungarian
    algorithm.
    """
    C = _contingency(pred, truth)
    side = max(C.shape)
    P = np.zeros((side, side), dtype=np.int64)
    P[: C.shape[0], : C.shape[1]] = C
    rows, cols = linear_sum_assignment(-P)
    return float(P[rows, cols].sum() / C.sum())


def nmi(pred, truth):
    """Mutual information normalized by sqrt(H(pred) * H(truth)), natural logs.

    Two single-cluster partitions score 1.0; if exactly one side is a
    single cluster the score is 0.0.
    """
    C = _contingency(pred, truth).astype(float)
    n = C.sum()
    a = C.sum(axis=1)
    b = C.sum(axis=0)
    hp = -np.sum((a / n) * np.log(a / n))
    ht = -np.sum((b / n) * np.log(b / n))
    if hp == 0.0 and ht == 0.0:
        return 1.0
    if hp == 0.0 or ht == 0.0:
        return 0.0
    nz = C > 0
    outer = np.outer(a, b)
    mi = float(np.sum((C[nz] / n) * np.log(n * C[nz] / outer[nz])))
    return max(mi / np.sqrt(hp * ht), 0.0)


def purity(pred, truth):
    """Average over samples of the majority true class within each predicted cluster."""
    C = _contingency(pred, truth)
    return float(C.max(axis=1).sum() / C.sum())


def _lloyd(X, c, seed):
    """One k-means run (random row init, farthest-point reseeding of empty clusters)."""
    rng = np.random.default_rng(seed)
    n = X.shape[0]
    centers = X[rng.choice(n, size=c, replace=False)].copy()
    assign = np.full(n, -1)
    for _ in range(100):
        d = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = d.argmin(axis=1)
        for j in range(c):
            if not np.any(new == j):
                far = d[np.arange(n), new].argmax()
                centers[j] = X[far]
                new[far] = j
        if np.array_equal(new, assign):
            break
        assign = new
        for j in range(c):
            centers[j] = X[assign == j].mean(axis=0)
    inertia = float(((X - centers[assign]) ** 2).sum())
    return assign, inertia


def labels_from_graph(Z, P, c, eps=1e-8):
    """Read cluster labels out of a learned graph.

    Component labels when the graph has exactly c components; otherwise
    k-means (10 seeded restarts) on the embedding rows, flagged as a
    fallback.  Returns (labels, used_fallback).
    """
    labels, count = connected_components(Z, eps)
    if count == c:
        return labels, False
    P = np.asarray(P, dtype=float)
    best = None
    for seed in range(10):
        assign, inertia = _lloyd(P, c, seed)
        if best is None or inertia < best[1]:
            best = (assign, inertia)
    return best[0] + 1, True
