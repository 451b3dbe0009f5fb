import numpy as np
import pytest
from oracles import (projection_active_set_oracle, projection_full_oracle,
                     qp_support_oracle)

from sgl import InputError, NumericalError, QpProblem, kkt_residual, project_simplex, solve_column_qp


def random_spd(rng, n, ridge=0.3):
    G = rng.normal(size=(n, n))
    return G @ G.T + ridge * np.eye(n)


# ---------------------------------------------------------------- projection

def test_project_simplex_fixed_cases():
    np.testing.assert_allclose(project_simplex(np.array([0.2, 0.8])), [0.2, 0.8], atol=1e-12)
    np.testing.assert_allclose(project_simplex(np.array([2.0, 0.0])), [1.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(project_simplex(np.array([0.5, 0.5, -1.0])), [0.5, 0.5, 0.0],
                               atol=1e-12)


def test_project_simplex_feasibility():
    rng = np.random.default_rng(7)
    for _ in range(200):
        v = rng.normal(scale=3.0, size=rng.integers(1, 25))
        z = project_simplex(v)
        assert abs(z.sum() - 1.0) <= 1e-12
        assert z.min() >= 0.0


def test_project_simplex_matches_active_set_oracle():
    rng = np.random.default_rng(8)
    for _ in range(1000):
        v = rng.normal(scale=rng.uniform(0.2, 5.0), size=rng.integers(2, 21))
        np.testing.assert_allclose(project_simplex(v), projection_active_set_oracle(v),
                                   atol=1e-9)


def test_project_simplex_matches_full_enumeration():
    rng = np.random.default_rng(9)
    for _ in range(60):
        v = rng.normal(scale=2.0, size=rng.integers(2, 11))
        np.testing.assert_allclose(project_simplex(v), projection_full_oracle(v), atol=1e-9)


def test_project_simplex_rejects_nonfinite():
    with pytest.raises(InputError):
        project_simplex(np.array([1.0, np.inf]))


# -------------------------------------------------------------------- solver

def test_solver_fixed_cases():
    s = solve_column_qp(QpProblem(np.eye(3), np.zeros(3)))
    np.testing.assert_allclose(s.z, np.full(3, 1 / 3), atol=1e-8)

    s = solve_column_qp(QpProblem(np.eye(2), np.array([0.0, -10.0])))
    np.testing.assert_allclose(s.z, [0.0, 1.0], atol=1e-6)

    s = solve_column_qp(QpProblem(np.diag([1.0, 1.0]), np.array([-1.0, -1.0])))
    np.testing.assert_allclose(s.z, [0.5, 0.5], atol=1e-8)


def test_solver_matches_support_enumeration():
    rng = np.random.default_rng(10)
    for _ in range(150):
        n = int(rng.integers(2, 7))
        A = random_spd(rng, n)
        b = rng.normal(scale=2.0, size=n)
        sol = solve_column_qp(QpProblem(A, b))
        z_star, f_star = qp_support_oracle(A, b)
        assert np.abs(sol.z - z_star).max() <= 1e-6
        f = sol.z @ A @ sol.z + b @ sol.z
        assert f <= f_star + 1e-9


def test_solver_objective_trace_nonincreasing():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(2, 30))
        A = random_spd(rng, n, ridge=0.05)
        b = rng.normal(scale=3.0, size=n)
        trace = solve_column_qp(QpProblem(A, b)).objective_trace
        diffs = np.diff(trace)
        assert np.all(diffs <= 1e-12 * np.maximum(1.0, np.abs(trace[:-1])))


def test_warm_start_agrees_with_cold():
    rng = np.random.default_rng(12)
    tol = 1e-7
    for _ in range(30):
        n = int(rng.integers(2, 15))
        A = random_spd(rng, n, ridge=1.0)
        b = rng.normal(size=n)
        cold = solve_column_qp(QpProblem(A, b), tol=tol)
        warm = solve_column_qp(QpProblem(A, b), tol=tol,
                               warm_start=project_simplex(rng.normal(size=n)))
        assert np.abs(cold.z - warm.z).max() <= 2 * tol


def test_solver_truncation_flag():
    rng = np.random.default_rng(13)
    A = random_spd(rng, 12, ridge=1e-6)
    b = rng.normal(scale=5.0, size=12)
    sol = solve_column_qp(QpProblem(A, b), tol=1e-14, max_iter=3)
    assert sol.truncated
    assert sol.iterations == 3


def test_solver_validate_spd():
    A = np.array([[1.0, 2.0], [2.0, 1.0]])  # indefinite
    with pytest.raises(NumericalError):
        solve_column_qp(QpProblem(A, np.zeros(2)), validate_spd=True)
    with pytest.raises(InputError):
        solve_column_qp(QpProblem(np.eye(2), np.zeros(3)))


# -------------------------------------------------------------- kkt residual

def test_residual_zero_at_optimum():
    p = QpProblem(np.eye(3), np.zeros(3))
    assert kkt_residual(p, np.full(3, 1 / 3)) <= 1e-10


def test_residual_positive_at_bad_vertex():
    p = QpProblem(np.eye(2), np.zeros(2))
    assert kkt_residual(p, np.array([1.0, 0.0])) > 0.1


def test_residual_invariant_to_constant_shift():
    rng = np.random.default_rng(14)
    A = random_spd(rng, 6)
    b = rng.normal(size=6)
    z = project_simplex(rng.normal(size=6))
    r1 = kkt_residual(QpProblem(A, b), z)
    r2 = kkt_residual(QpProblem(A, b + 17.3), z)
    assert r1 == pytest.approx(r2, abs=1e-9)


def test_residual_tracks_solution_quality():
    rng = np.random.default_rng(15)
    A = random_spd(rng, 8)
    b = rng.normal(size=8)
    sol = solve_column_qp(QpProblem(A, b), tol=1e-9)
    assert kkt_residual(QpProblem(A, b), sol.z) <= 1e-9
