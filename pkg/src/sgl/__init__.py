"""Structured graph learning: clustering and semi-supervised classification
through a rank-constrained affinity graph that blends local adaptive-neighbor
and global kernel self-expressiveness structure, with single- and
multiple-kernel modes."""

from .errors import (ConfigError, DegenerateDataError, FormatError, InputError,
                     NumericalError, SglError, SingularSystemError)
from .kernels import (DEFAULT_CLUSTER_BANK, DEFAULT_SSL_BANK, build_kernel,
                      build_kernel_bank, gaussian_kernel, linear_kernel,
                      normalize_kernel, pairwise_sq_dist, polynomial_kernel)
from .metrics import (clustering_accuracy, connected_components,
                      labels_from_graph, nmi, purity)
from .multi_kernel import (SgmkResult, combine_kernels, compute_h, sgmk_fit,
                           update_weights)
from .simplex_qp import (QpProblem, QpSolution, kkt_residual, project_simplex,
                         solve_column_qp)
from .single_kernel import (SgskConfig, SgskResult, adapt_gamma, build_laplacian,
                            estimate_alpha, local_affinity, objective_value,
                            sgsk_fit, smallest_eigpairs, update_graph)
from .ssl import LabelSet, SslResult, decide_labels, harmonic_labels, sgmk_ssl_fit
from .synth import make_blobs, make_dataset, make_moons, make_rings

__version__ = "0.1.0"

__all__ = [
    "SglError", "InputError", "ConfigError", "DegenerateDataError",
    "NumericalError", "FormatError", "SingularSystemError",
    "pairwise_sq_dist", "gaussian_kernel", "linear_kernel", "polynomial_kernel",
    "normalize_kernel", "build_kernel", "build_kernel_bank",
    "DEFAULT_CLUSTER_BANK", "DEFAULT_SSL_BANK",
    "QpProblem", "QpSolution", "project_simplex", "solve_column_qp", "kkt_residual",
    "SgskConfig", "SgskResult", "estimate_alpha", "local_affinity",
    "build_laplacian", "smallest_eigpairs", "update_graph", "objective_value",
    "adapt_gamma", "sgsk_fit",
    "SgmkResult", "combine_kernels", "compute_h", "update_weights", "sgmk_fit",
    "LabelSet", "SslResult", "harmonic_labels", "decide_labels", "sgmk_ssl_fit",
    "connected_components", "clustering_accuracy", "nmi", "purity",
    "labels_from_graph",
    "make_blobs", "make_rings", "make_moons", "make_dataset",
]
