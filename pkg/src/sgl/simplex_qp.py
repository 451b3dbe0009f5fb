"""Simplex-constrained quadratic programs, one per graph column.

Every graph update reduces to n independent problems

    min_z  z^T A z + b^T z    s.t.  1^T z = 1,  z >= 0,

sharing one symmetric positive-definite A and differing only in b.  The
upper bound z <= 1 is implied by the simplex and never enforced separately.

The solver is accelerated projected gradient with fixed step 1/L, where L
bounds the gradient Lipschitz constant 2*lambda_max(A) through Gershgorin
discs.  Whenever an accelerated step would increase a column's objective,
that column falls back to a plain projected-gradient step from its current
iterate (which cannot increase the objective at this step size) and its
momentum restarts, so per-iteration objectives are nonincreasing.
Convergence is declared on the projected-gradient fixed-point residual.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InputError, NumericalError

DEFAULT_TOL = 1e-7
DEFAULT_MAX_ITER = 2000
_CHECK_EVERY = 5  # residual checks are as costly as a step; amortize them


@dataclass
class QpProblem:
    A: np.ndarray  # n x n symmetric positive definite
    b: np.ndarray  # length n


@dataclass
class QpSolution:
    z: np.ndarray
    kkt_residual: float
    iterations: int
    truncated: bool = False
    objective_trace: np.ndarray | None = None


def project_columns(V):
    """Euclidean projection of every column of V onto the probability simplex.

    Sort-and-threshold: with the column sorted descending as u, the active
    support is the longest prefix where u_j > (cumsum(u)_j - 1) / j.
    """
    n = V.shape[0]
    U = -np.sort(-V, axis=0)
    css = np.cumsum(U, axis=0) - 1.0
    ind = np.arange(1, n + 1, dtype=float)[:, None]
    cond = U - css / ind > 0.0
    rho = n - 1 - np.argmax(cond[::-1], axis=0)  # last index where cond holds
    theta = css[rho, np.arange(V.shape[1])] / (rho + 1.0)
    return np.maximum(V - theta, 0.0)


def project_simplex(v):
    """Euclidean projection of a vector onto {z : sum(z) = 1, z >= 0}."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise InputError(f"expected a nonempty vector, got shape {v.shape}")
    if not np.isfinite(v).all():
        raise InputError("cannot project a non-finite vector")
    return project_columns(v[:, None])[:, 0]


def gradient_step_size(A):
    """1 / (2 * Gershgorin bound on lambda_max); step and residual probe share it."""
    bound = np.abs(A).sum(axis=1).max()
    return 1.0 / (2.0 * max(bound, np.finfo(float).tiny))


def kkt_residual(problem, z):
    """Projected-gradient fixed-point gap; zero exactly at the optimum.

    Invariant to adding a constant to all entries of b, because the simplex
    projection removes gradient components along the all-ones direction.
    """
    A = np.asarray(problem.A, dtype=float)
    b = np.asarray(problem.b, dtype=float)
    z = np.asarray(z, dtype=float)
    s = gradient_step_size(A)
    g = 2.0 * (A @ z) + b
    return float(np.abs(z - project_simplex(z - s * g)).max() / s)


def solve_columns(A, B, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                  warm_start=None, track_objective=False):
    """Solve min_z z^T A z + B[:, i]^T z on the simplex for every column i.

    All columns share A, so each sweep costs one matrix product.  Columns
    whose residual drops below ``tol`` freeze and leave the working set.

    Returns (Z, residuals, iterations, truncated, trace) with per-column
    residuals/iteration counts and, when requested, the per-sweep trace of
    the summed objective (initial value included).
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    n, m = B.shape
    s = gradient_step_size(A)

    if warm_start is None:
        Z = np.full((n, m), 1.0 / n)
    else:
        Z = np.array(warm_start, dtype=float, copy=True)

    f = np.einsum("ij,ij->j", Z, A @ Z) + np.einsum("ij,ij->j", B, Z)
    Y = Z.copy()
    t = np.ones(m)
    residuals = np.full(m, np.inf)
    iterations = np.zeros(m, dtype=int)
    active = np.arange(m)
    trace = [f.sum()] if track_objective else None

    it = 0
    while it < max_iter and active.size:
        it += 1
        Ba = B[:, active]
        Ya = Y[:, active]
        Xn = project_columns(Ya - s * (2.0 * (A @ Ya) + Ba))
        fn = np.einsum("ij,ij->j", Xn, A @ Xn) + np.einsum("ij,ij->j", Ba, Xn)

        worse = fn > f[active]
        if np.any(worse):
            w = np.where(worse)[0]
            Xw = Z[:, active[w]]
            Xf = project_columns(Xw - s * (2.0 * (A @ Xw) + Ba[:, w]))
            fn[w] = np.einsum("ij,ij->j", Xf, A @ Xf) + np.einsum("ij,ij->j", Ba[:, w], Xf)
            Xn[:, w] = Xf
            t[active[w]] = 1.0

        ta = t[active]
        tn = (1.0 + np.sqrt(1.0 + 4.0 * ta * ta)) / 2.0
        Y[:, active] = Xn + ((ta - 1.0) / tn) * (Xn - Z[:, active])
        Z[:, active] = Xn
        f[active] = fn
        t[active] = tn
        iterations[active] = it
        if track_objective:
            trace.append(f.sum())

        if it % _CHECK_EVERY == 0 or it == max_iter:
            Za = Z[:, active]
            G = 2.0 * (A @ Za) + B[:, active]
            R = np.abs(Za - project_columns(Za - s * G)).max(axis=0) / s
            residuals[active] = R
            done = R <= tol
            if done.any():
                active = active[~done]

    truncated = residuals > tol
    return Z, residuals, iterations, truncated, (
        np.asarray(trace) if track_objective else None)


def solve_column_qp(problem, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                    warm_start=None, validate_spd=False):
    """Solve one simplex QP; see :func:`solve_columns` for the method.

    ``warm_start``, if given, must lie on the simplex.  With
    ``validate_spd`` a Cholesky factorization guards positive definiteness.
    """
    A = np.asarray(problem.A, dtype=float)
    b = np.asarray(problem.b, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or b.shape != (A.shape[0],):
        raise InputError(f"inconsistent QP shapes: A {A.shape}, b {b.shape}")
    if not (np.isfinite(A).all() and np.isfinite(b).all()):
        raise InputError("QP data contains NaN or Inf")
    if validate_spd:
        try:
            scipy.linalg.cho_factor(A)
        except np.linalg.LinAlgError as exc:
            raise NumericalError("quadratic term is not positive definite") from exc

    ws = None if warm_start is None else np.asarray(warm_start, dtype=float)[:, None]
    Z, res, iters, trunc, trace = solve_columns(
        A, b[:, None], tol=tol, max_iter=max_iter, warm_start=ws,
        track_objective=True)
    return QpSolution(z=Z[:, 0], kkt_residual=float(res[0]),
                      iterations=int(iters[0]), truncated=bool(trunc[0]),
                      objective_trace=trace)
