import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabkit import linalg


def _rand_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_tensor_product_mixed_product_rule(da, db, seed):
    rng = np.random.default_rng(seed)
    A, B = rng.normal(size=(da, da)), rng.normal(size=(db, db))
    C, D = rng.normal(size=(da, da)), rng.normal(size=(db, db))
    lhs = linalg.tensor_product(A, B) @ linalg.tensor_product(C, D)
    rhs = linalg.tensor_product(A @ C, B @ D)
    assert np.allclose(lhs, rhs)


def test_tensor_product_shapes_and_identity():
    A = np.eye(2)
    B = np.eye(3)
    T = linalg.tensor_product(A, B, A)
    assert T.shape == (12, 12)
    assert np.allclose(T, np.eye(12))


def test_is_hermitian_and_unitary():
    rng = np.random.default_rng(0)
    H = rng.normal(size=(4, 4))
    H = H + H.T
    assert linalg.is_hermitian(H)
    assert not linalg.is_hermitian(H + 1e-6 * np.array([[0, 1], [0, 0]]).repeat(2, 0).repeat(2, 1))
    U = _rand_unitary(rng, 5)
    assert linalg.is_unitary(U)
    assert not linalg.is_unitary(1.01 * U)


def test_eigen_decompose_hermitian_reconstruction():
    rng = np.random.default_rng(1)
    H = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    H = H + H.conj().T
    w, V = linalg.eigen_decompose(H)
    assert np.allclose(V @ np.diag(w) @ V.conj().T, H)
    assert np.all(np.isreal(w))


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_null_space_rank_nullity(rows, rank, seed):
    rng = np.random.default_rng(seed)
    cols = rank + rng.integers(0, 3)
    rank = min(rank, rows, cols)
    A = rng.normal(size=(rows, rank)) @ rng.normal(size=(rank, cols))
    K = linalg.null_space(A)
    assert K.shape[1] == cols - rank
    if K.shape[1]:
        assert np.max(np.abs(A @ K)) < 1e-9


def test_reduced_density_bell_pair_is_maximally_mixed():
    v = np.zeros(4)
    v[0] = v[3] = 1 / np.sqrt(2)
    rho = linalg.reduced_density(v, [0])
    assert np.allclose(rho, np.eye(2) / 2)
    assert abs(np.trace(rho) - 1) < 1e-12


def test_schmidt_coefficients_product_vs_entangled():
    prod = np.kron([1, 0], [1 / np.sqrt(2), 1 / np.sqrt(2)])
    s = linalg.schmidt_coefficients(prod, [0])
    assert abs(s[0] - 1) < 1e-12 and s[1] < 1e-12
    bell = np.zeros(4)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    s = linalg.schmidt_coefficients(bell, [0])
    assert np.allclose(s, [1 / np.sqrt(2)] * 2)


def test_nearest_unitary_projects_back():
    rng = np.random.default_rng(2)
    U = _rand_unitary(rng, 4)
    noisy = U + 1e-3 * rng.normal(size=(4, 4))
    W = linalg.nearest_unitary(noisy)
    assert linalg.is_unitary(W)
    assert np.max(np.abs(W - U)) < 5e-3


def test_state_overlap_phase_invariant():
    rng = np.random.default_rng(3)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    assert abs(linalg.state_overlap(v, np.exp(1j * 0.7) * v) - 1) < 1e-12


def test_intersect_subspaces():
    e = np.eye(4)
    A = e[:, :3]
    B = e[:, 1:]
    C = linalg.intersect_subspaces(A, B)
    assert C.shape[1] == 2
    # intersection lies inside both spans
    for col in C.T:
        assert np.linalg.norm(A @ (A.conj().T @ col) - col) < 1e-9
        assert np.linalg.norm(B @ (B.conj().T @ col) - col) < 1e-9


def test_matrix_json_round_trip(tmp_path):
    rng = np.random.default_rng(4)
    M = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    obj = linalg.matrix_to_json(M)
    assert obj["rows"] == 3 and obj["cols"] == 5
    assert np.allclose(linalg.matrix_from_json(obj), M)
    path = tmp_path / "m.json"
    linalg.save_matrix(M, str(path))
    # file is plain JSON and loads back exactly
    json.loads(path.read_text())
    assert np.allclose(linalg.load_matrix(str(path)), M)


def test_matrix_from_json_rejects_bad_count():
    with pytest.raises(ValueError):
        linalg.matrix_from_json({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]})
