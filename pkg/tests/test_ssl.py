import numpy as np
import pytest

from sgl import (ConfigError, InputError, LabelSet, SgskConfig,
                 SingularSystemError, build_kernel_bank, build_laplacian,
                 decide_labels, harmonic_labels, pairwise_sq_dist, sgmk_ssl_fit)
from sgl.kernels import DEFAULT_SSL_BANK
from sgl.synth import make_blobs


def edge_graph():
    # two disjoint edges: (0,1) and (2,3)
    Z = np.zeros((4, 4))
    Z[0, 1] = Z[1, 0] = 1.0
    Z[2, 3] = Z[3, 2] = 1.0
    return Z


# ------------------------------------------------------------------ LabelSet

def test_labelset_from_labels():
    ls = LabelSet.from_labels([0, 3], [1, 2], c=2)
    np.testing.assert_allclose(ls.Yl, [[1.0, 0.0], [0.0, 1.0]])
    ls.validate(5)


def test_labelset_validation_errors():
    with pytest.raises(ConfigError):
        LabelSet.from_labels([0], [3], c=2)  # class out of range
    ls = LabelSet.from_labels([0, 1], [1, 1], c=2)  # class 2 unlabeled
    with pytest.raises(ConfigError):
        ls.validate(4)
    with pytest.raises(ConfigError):
        LabelSet.from_labels([0, 0], [1, 2], c=2).validate(4)  # duplicate index
    bad = LabelSet(labeled_indices=np.array([0]), Yl=np.array([[0.5, 0.5]]), c=2)
    with pytest.raises(InputError):
        bad.validate(3)


# ----------------------------------------------------------- harmonic labels

def test_harmonic_fully_labeled():
    L = build_laplacian(edge_graph())
    ls = LabelSet.from_labels([0, 1, 2, 3], [1, 1, 2, 2], c=2)
    P = harmonic_labels(L, ls)
    np.testing.assert_allclose(P, ls.Yl)


def test_harmonic_two_disjoint_edges():
    L = build_laplacian(edge_graph())
    ls = LabelSet.from_labels([0, 2], [1, 2], c=2)
    P = harmonic_labels(L, ls)
    np.testing.assert_allclose(P[1], [1.0, 0.0], atol=1e-9)
    np.testing.assert_allclose(P[3], [0.0, 1.0], atol=1e-9)


def test_harmonic_single_class_component():
    # chain 0-1-2 all labeled class 2 at the ends stays constant inside
    Z = np.zeros((4, 4))
    Z[0, 1] = Z[1, 0] = Z[1, 2] = Z[2, 1] = 1.0
    Z[3, 3] = 1.0
    ls = LabelSet.from_labels([0, 2, 3], [2, 2, 1], c=2)
    P = harmonic_labels(build_laplacian(Z), ls)
    np.testing.assert_allclose(P[1], [0.0, 1.0], atol=1e-9)


def test_harmonic_stationarity_and_row_sums():
    rng = np.random.default_rng(40)
    X, y = make_blobs(n=30, centers=2, sep=5.0, sigma=0.1, seed=10)
    from sgl.single_kernel import local_affinity
    Z = local_affinity(pairwise_sq_dist(X), k=4)
    L = build_laplacian(Z)
    labeled = np.array([0, 1, 15, 16])
    ls = LabelSet.from_labels(labeled, y[labeled], c=2)
    P = harmonic_labels(L, ls)
    unl = np.setdiff1d(np.arange(30), labeled)
    np.testing.assert_allclose(P[labeled], ls.Yl)  # clamp preserved exactly
    assert np.abs((L @ P)[unl]).max() <= 1e-6
    np.testing.assert_allclose(P[unl].sum(axis=1), 1.0, atol=1e-6)
    assert P[unl].min() >= -1e-9 and P[unl].max() <= 1.0 + 1e-9


def test_harmonic_singular_system_diagnosed():
    # isolated unlabeled vertex: L_uu is exactly the zero matrix
    L = build_laplacian(np.eye(3))
    ls = LabelSet.from_labels([0, 1], [1, 2], c=2)
    with pytest.raises(SingularSystemError) as err:
        harmonic_labels(L, ls)
    assert "2" in str(err.value)


# -------------------------------------------------------------- label decode

def test_decide_labels():
    assert decide_labels(np.array([[1.0, 0.0], [0.0, 1.0]])).tolist() == [1, 2]
    assert decide_labels(np.array([[0.4, 0.6]])).tolist() == [2]
    assert decide_labels(np.array([[0.5, 0.5]])).tolist() == [1]  # tie -> smallest
    with pytest.raises(InputError):
        decide_labels(np.array([[np.nan, 0.0]]))


# ------------------------------------------------------------------ full fit

def ssl_problem(seed=11, n=40):
    X, y = make_blobs(n=n, centers=2, sep=5.0, sigma=0.1, seed=seed)
    Dx = pairwise_sq_dist(X)
    bank = build_kernel_bank(X, DEFAULT_SSL_BANK)
    return X, y, Dx, bank


def test_ssl_fit_fully_labeled():
    _, y, Dx, bank = ssl_problem()
    ls = LabelSet.from_labels(np.arange(40), y, c=2)
    res = sgmk_ssl_fit(bank, Dx, ls, SgskConfig(c=2, k=8, seed=0))
    assert np.array_equal(res.predicted_labels, y)


def test_ssl_fit_one_label_per_blob():
    _, y, Dx, bank = ssl_problem()
    labeled = np.array([0, 20])  # one per class
    ls = LabelSet.from_labels(labeled, y[labeled], c=2)
    res = sgmk_ssl_fit(bank, Dx, ls, SgskConfig(c=2, k=8, seed=1))
    unl = np.setdiff1d(np.arange(40), labeled)
    assert np.array_equal(res.predicted_labels[unl], y[unl])
    np.testing.assert_allclose(res.P[labeled], ls.Yl)
    assert np.sqrt(res.weights).sum() == pytest.approx(1.0, abs=1e-10)


def test_ssl_fit_permutation_equivariance():
    X, y, Dx, bank = ssl_problem(seed=12, n=30)
    labeled = np.array([0, 15])
    ls = LabelSet.from_labels(labeled, y[labeled], c=2)
    rng = np.random.default_rng(50)
    z0 = np.abs(rng.uniform(size=(30, 30)))
    z0 /= z0.sum(axis=0)

    cfg = SgskConfig(c=2, k=8, seed=0, max_outer=6)
    base = sgmk_ssl_fit(bank, Dx, ls, cfg, z_init=z0)

    perm = rng.permutation(30)
    inv = np.argsort(perm)
    bank_p = [K[np.ix_(perm, perm)] for K in bank]
    Dx_p = Dx[np.ix_(perm, perm)]
    ls_p = LabelSet.from_labels(inv[labeled], y[labeled], c=2)
    z0_p = z0[np.ix_(perm, perm)]
    permuted = sgmk_ssl_fit(bank_p, Dx_p, ls_p, cfg, z_init=z0_p)

    assert np.array_equal(permuted.predicted_labels, base.predicted_labels[perm])


def test_ssl_fit_objective_history_settles():
    _, y, Dx, bank = ssl_problem(seed=13)
    labeled = np.array([0, 1, 20, 21])
    ls = LabelSet.from_labels(labeled, y[labeled], c=2)
    res = sgmk_ssl_fit(bank, Dx, ls, SgskConfig(c=2, k=8, seed=2))
    assert res.converged
    obj = np.array(res.history)
    assert np.all(np.diff(obj) <= 1e-8 * np.maximum(np.abs(obj[:-1]), 1e-12))
