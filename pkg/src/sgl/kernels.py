"""Kernel bank construction: pairwise distances, candidate kernels, rescaling.

Descriptors name the kernels: ``gaussian:<t>``, ``linear``, ``poly:<a>:<b>``.
All constructed kernels are symmetrized and rescaled by their largest
absolute entry before use.
"""

import numpy as np

from .errors import ConfigError, DegenerateDataError, InputError

# Gaussian bandwidth multipliers and polynomial (a, b) pairs for the two
# stock banks: 12 kernels for clustering, 7 for semi-supervised runs.
DEFAULT_CLUSTER_BANK = [
    "gaussian:0.01", "gaussian:0.05", "gaussian:0.1", "gaussian:1",
    "gaussian:10", "gaussian:50", "gaussian:100",
    "linear",
    "poly:0:2", "poly:0:4", "poly:1:2", "poly:1:4",
]
DEFAULT_SSL_BANK = [
    "gaussian:0.1", "gaussian:1", "gaussian:10", "gaussian:100",
    "linear",
    "poly:0:2", "poly:1:2",
]


def as_features(X):
    """Validate a feature matrix (n samples x m features) and return float64."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise InputError(f"feature matrix must be 2-D, got shape {X.shape}")
    if X.shape[0] < 2 or X.shape[1] < 1:
        raise InputError(f"need at least 2 samples and 1 feature, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise InputError("feature matrix contains NaN or Inf")
    return X


def symmetrize(M):
    """(M + M^T) / 2; absorbs floating-point asymmetry."""
    return (M + M.T) / 2.0


def pairwise_sq_dist(X):
    """Squared Euclidean distances between all sample pairs.

    Negative round-off is clamped to zero and the diagonal is exactly zero.
    """
    X = as_features(X)
    sq = np.einsum("ij,ij->i", X, X)
    D = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    D = symmetrize(D)
    np.maximum(D, 0.0, out=D)
    np.fill_diagonal(D, 0.0)
    return D


def gaussian_kernel(X, t):
    """K_ij = exp(-||x_i - x_j||^2 / (t * dmax^2)), dmax the largest pairwise distance."""
    if t <= 0:
        raise ConfigError(f"gaussian bandwidth multiplier t must be positive, got {t}")
    D = pairwise_sq_dist(X)
    dmax_sq = D.max()
    if dmax_sq == 0.0:
        raise DegenerateDataError("all samples identical; gaussian kernel undefined")
    return symmetrize(np.exp(-D / (t * dmax_sq)))


def linear_kernel(X):
    """K = X X^T."""
    X = as_features(X)
    return symmetrize(X @ X.T)


def polynomial_kernel(X, a, b):
    """K_ij = (a + x_i^T x_j)^b with integer degree b >= 1."""
    if b < 1 or int(b) != b:
        raise ConfigError(f"polynomial degree must be a positive integer, got {b}")
    X = as_features(X)
    return symmetrize((a + X @ X.T) ** int(b))


def normalize_kernel(K):
    """Rescale a kernel by its largest absolute entry.

    Nonnegative kernels land in [0, 1]; sign-indefinite ones in [-1, 1].
    Idempotent once the largest absolute entry is 1.
    """
    K = np.asarray(K, dtype=float)
    if not np.isfinite(K).all():
        raise InputError("kernel contains NaN or Inf")
    m = np.abs(K).max()
    if m == 0.0:
        raise DegenerateDataError("all-zero kernel cannot be rescaled")
    return K / m


def build_kernel(X, descriptor):
    """Construct and rescale one kernel from its descriptor string."""
    parts = descriptor.strip().lower().split(":")
    kind = parts[0]
    try:
        if kind == "gaussian" and len(parts) == 2:
            K = gaussian_kernel(X, float(parts[1]))
        elif kind == "linear" and len(parts) == 1:
            K = linear_kernel(X)
        elif kind in ("poly", "polynomial") and len(parts) == 3:
            K = polynomial_kernel(X, float(parts[1]), int(parts[2]))
        else:
            raise ValueError(descriptor)
    except ValueError:
        raise ConfigError(f"unknown kernel descriptor {descriptor!r}") from None
    return normalize_kernel(K)


def build_kernel_bank(X, spec=None):
    """Build the list of rescaled kernels named by ``spec``.

    ``spec`` defaults to the 12-kernel clustering bank.
    """
    if spec is None:
        spec = DEFAULT_CLUSTER_BANK
    if not spec:
        raise ConfigError("kernel bank spec is empty")
    X = as_features(X)
    return [build_kernel(X, d) for d in spec]
