import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from stabkit import binaryops, linalg

angles = st.floats(-7.0, 7.0, allow_nan=False, allow_infinity=False)


@given(angles, angles)
@settings(max_examples=50, deadline=None)
def test_axis_matrix_is_hermitian_involution(theta, phi):
    A = binaryops.binary_axis_matrix(theta, phi)
    assert linalg.is_hermitian(A, 1e-12)
    assert np.allclose(A @ A, np.eye(2))


@given(angles, angles)
@settings(max_examples=50, deadline=None)
def test_axis_negation_identity(theta, phi):
    # flipping theta across pi and shifting phi by pi negates the observable
    A = binaryops.binary_axis_matrix(theta, phi)
    B = binaryops.binary_axis_matrix(np.pi - theta, phi + np.pi)
    assert np.max(np.abs(A + B)) < 1e-12


def test_axis_special_points():
    assert np.allclose(binaryops.binary_axis_matrix(0), np.diag([1, -1]))
    assert np.allclose(binaryops.binary_axis_matrix(np.pi / 2), [[0, 1], [1, 0]])
    assert np.allclose(
        binaryops.binary_axis_matrix(np.pi / 2, np.pi / 2), [[0, -1j], [1j, 0]]
    )


@given(angles, angles)
@settings(max_examples=30, deadline=None)
def test_plus_one_projector_properties(theta, phi):
    A = binaryops.binary_axis_matrix(theta, phi)
    P = binaryops.plus_one_projector(A)
    assert np.allclose(P @ P, P)
    assert np.allclose(A @ P, P)
    assert abs(np.trace(P) - 1) < 1e-12


def test_sign_vectors_shape_and_first_entry():
    vs = list(binaryops.sign_vectors(3))
    assert len(vs) == 4
    assert all(v[0] == 1 for v in vs)
    assert all(set(v) <= {1, -1} for v in vs)


def test_psi_state_known_amplitudes():
    v = binaryops.psi_state((1, -1))
    assert np.allclose(v, [1, 0, 0, 1])
    v = binaryops.psi_state((1, 1))
    assert np.allclose(v, [1, 0, 0, -1])
    v = binaryops.psi_state((1, 1, 1))
    want = np.zeros(8)
    want[0] = 1
    want[3] = want[5] = want[6] = -1
    assert np.allclose(v, want)


def test_psi_states_are_orthogonal():
    vs = [binaryops.psi_state(s) for s in binaryops.sign_vectors(4)]
    G = np.array([[abs(np.vdot(a, b)) for b in vs] for a in vs])
    off = G - np.diag(np.diag(G))
    assert np.max(off) < 1e-12
    assert np.min(np.diag(G)) > 0


@given(st.integers(1, 5), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_spectrum_closed_form_matches_numeric(n, seed):
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0, 2 * np.pi, size=n)
    rep = binaryops.verify_theorem_spectrum(thetas)
    assert rep["passed"]
    assert rep["max_deviation"] < 1e-8
    assert max(rep["eigvec_residuals"].values()) < 1e-8


def test_spectrum_values_shape():
    thetas = [0.4, 1.1, 2.0]
    spec = binaryops.theorem_spectrum(thetas)
    assert spec.shape == (8,)
    # half the eigenvalues vanish, the rest follow the cosine sum rule
    assert np.sum(np.abs(spec) < 1e-14) >= 4
    M = binaryops.projector_product(thetas)
    numeric = np.sort(np.abs(np.linalg.eigvals(M)))
    assert np.max(np.abs(numeric - np.sort(spec))) < 1e-10


def test_xz_stabilizer_family_fixes_psi():
    for signs in [(1, -1), (1, 1), (1, 1, -1), (1, -1, 1, 1)]:
        v = binaryops.psi_state(signs)
        v = v / np.linalg.norm(v)
        for O in binaryops.xz_stabilizer_family(signs):
            assert np.allclose(O @ O, np.eye(len(v)))
            assert np.linalg.norm(O @ v - v) < 1e-12


def test_angles_equal_mod_2pi():
    assert binaryops.angles_equal_mod_2pi(0.3, 0.3 + 4 * np.pi)
    assert not binaryops.angles_equal_mod_2pi(0.3, 0.4)
