import numpy as np
import pytest

from sgl import (DEFAULT_CLUSTER_BANK, DEFAULT_SSL_BANK, ConfigError,
                 DegenerateDataError, InputError, build_kernel,
                 build_kernel_bank, gaussian_kernel, linear_kernel,
                 normalize_kernel, pairwise_sq_dist, polynomial_kernel)


def test_pairwise_one_dim():
    np.testing.assert_allclose(pairwise_sq_dist([[0.0], [3.0]]), [[0, 9], [9, 0]])


def test_pairwise_duplicate_rows():
    np.testing.assert_allclose(pairwise_sq_dist([[1.0, 0.0], [1.0, 0.0]]), np.zeros((2, 2)))


def test_pairwise_hand_entry():
    D = pairwise_sq_dist([[0.0, 0.0], [3.0, 4.0], [0.0, 8.0]])
    assert D[1, 2] == pytest.approx(9 + 16)
    assert D[0, 1] == pytest.approx(25)


def test_pairwise_matches_per_pair_loop():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(17, 4))
    D = pairwise_sq_dist(X)
    loop = np.array([[np.sum((X[i] - X[j]) ** 2) for j in range(17)] for i in range(17)])
    np.testing.assert_allclose(D, loop, atol=1e-9)
    assert np.all(np.diag(D) == 0.0)
    assert np.array_equal(D, D.T)
    assert D.min() >= 0.0


def test_pairwise_rejects_bad_input():
    with pytest.raises(InputError):
        pairwise_sq_dist([[np.nan, 0.0], [1.0, 2.0]])
    with pytest.raises(InputError):
        pairwise_sq_dist([[1.0, 2.0]])  # single sample


def test_centering_identity():
    # H D H = -2 H X X^T H with H the centering matrix
    rng = np.random.default_rng(1)
    for n, m in [(6, 3), (25, 8), (40, 2)]:
        X = rng.normal(size=(n, m))
        D = pairwise_sq_dist(X)
        H = np.eye(n) - np.ones((n, n)) / n
        lhs = H @ D @ H
        rhs = -2.0 * H @ X @ X.T @ H
        assert np.abs(lhs - rhs).max() <= 1e-8


def test_gaussian_diagonal_and_hand_value():
    rng = np.random.default_rng(2)
    K = gaussian_kernel(rng.normal(size=(9, 3)), t=0.5)
    np.testing.assert_allclose(np.diag(K), 1.0)
    assert K.min() > 0.0 and K.max() <= 1.0

    K2 = gaussian_kernel([[0.0], [1.0]], t=1.0)
    assert K2[0, 1] == pytest.approx(np.exp(-1.0))


def test_gaussian_large_t_limit():
    X = np.array([[0.0], [1.0], [3.0]])
    K = gaussian_kernel(X, t=1e9)
    np.testing.assert_allclose(K, np.ones((3, 3)), atol=1e-6)


def test_gaussian_degenerate():
    with pytest.raises(DegenerateDataError):
        gaussian_kernel([[2.0], [2.0], [2.0]], t=1.0)
    with pytest.raises(ConfigError):
        gaussian_kernel([[0.0], [1.0]], t=0.0)


def test_linear_kernel_cases():
    np.testing.assert_allclose(linear_kernel([[1.0, 0.0], [0.0, 1.0]]), np.eye(2))
    np.testing.assert_allclose(linear_kernel([[1.0, 2.0], [1.0, 2.0]]), np.full((2, 2), 5.0))
    K = linear_kernel([[0.0, 0.0], [1.0, 2.0]])
    assert np.all(K[0] == 0.0) and np.all(K[:, 0] == 0.0)


def test_polynomial_kernel_cases():
    np.testing.assert_allclose(polynomial_kernel([[1.0, 0.0], [0.0, 1.0]], a=0, b=2), np.eye(2))
    np.testing.assert_allclose(polynomial_kernel([[1.0], [1.0]], a=1, b=2), np.full((2, 2), 4.0))
    K = polynomial_kernel([[0.0, 0.0], [1.0, 2.0]], a=0, b=4)
    assert np.all(K[0] == 0.0) and np.all(K[:, 0] == 0.0)
    with pytest.raises(ConfigError):
        polynomial_kernel([[0.0], [1.0]], a=0, b=0)


def test_normalize_kernel():
    np.testing.assert_allclose(normalize_kernel([[4.0, 2.0], [2.0, 4.0]]),
                               [[1.0, 0.5], [0.5, 1.0]])
    K = gaussian_kernel(np.random.default_rng(3).normal(size=(8, 2)), t=1.0)
    np.testing.assert_allclose(normalize_kernel(K), K)  # max entry already 1
    once = normalize_kernel([[3.0, -6.0], [-6.0, 3.0]])
    np.testing.assert_allclose(normalize_kernel(once), once)  # idempotent
    with pytest.raises(DegenerateDataError):
        normalize_kernel(np.zeros((3, 3)))


def test_constructed_kernels_symmetric_finite():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(12, 5))
    for K in build_kernel_bank(X):
        assert np.abs(K - K.T).max() == 0.0
        assert np.isfinite(K).all()


def test_bank_sizes_and_single_kernel():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(10, 3))
    assert len(build_kernel_bank(X)) == 12
    assert len(build_kernel_bank(X, DEFAULT_SSL_BANK)) == 7
    only = build_kernel_bank(X, ["linear"])
    assert len(only) == 1
    np.testing.assert_allclose(only[0], normalize_kernel(linear_kernel(X)))


def test_bank_descriptor_errors():
    X = np.random.default_rng(6).normal(size=(6, 2))
    with pytest.raises(ConfigError):
        build_kernel(X, "laplacian:1")
    with pytest.raises(ConfigError):
        build_kernel(X, "gaussian")
    with pytest.raises(ConfigError):
        build_kernel_bank(X, [])
    assert DEFAULT_CLUSTER_BANK[0] == "gaussian:0.01"
