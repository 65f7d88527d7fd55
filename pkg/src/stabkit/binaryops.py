# Binary observables on the Bloch sphere, the psi reference states, their
# XZ-plane stabilizer family, and the closed-form spectrum of the projector
# product P_{0..0} P_{theta_1..theta_n}.

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import linalg

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BinaryAxis:
    """Bloch-sphere axis (theta, phi) of a binary observable."""

    theta: float
    phi: float = 0.0

    def normalized(self) -> "BinaryAxis":
        return BinaryAxis(self.theta % TWO_PI, self.phi % TWO_PI)


def binary_axis_matrix(theta: float, phi: float = 0.0) -> np.ndarray:
    """cos(theta) Z + sin(theta) (cos(phi) X + sin(phi) Y); Hermitian involution."""
    return (
        np.cos(theta) * SIGMA_Z
        + np.sin(theta) * (np.cos(phi) * SIGMA_X + np.sin(phi) * SIGMA_Y)
    )


def plus_one_projector(O: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """(I + O)/2 for an involution O."""
    O = np.asarray(O, dtype=complex)
    d = O.shape[0]
    if np.max(np.abs(O @ O - np.eye(d))) > tol:
        raise ValueError("operator is not an involution")
    return (np.eye(d) + O) / 2


def sign_vectors(n: int):
    """All 2^(n-1) sign vectors with the first entry fixed to +1."""
    for tail in product((1, -1), repeat=n - 1):
        yield (1,) + tail


def psi_state(signs) -> np.ndarray:
    """
    Unnormalized reference state for a sign vector.

    Amplitude of |k1...kn> is Re[(i j1)^k1 ... (i jn)^kn]; entries are
    integers in {-1, 0, +1} and vanish unless the bit sum is even.
    """
    signs = tuple(signs)
    n = len(signs)
    amps = np.zeros(2**n)
    for idx in range(2**n):
        term = 1.0 + 0.0j
        for q in range(n):
            bit = (idx >> (n - 1 - q)) & 1
            if bit:
                term *= 1j * signs[q]
        amps[idx] = term.real
    return amps


def normalize_psi(v: np.ndarray) -> np.ndarray:
    """Divide a psi state by 2^((n-1)/2) to unit norm."""
    n = int(round(np.log2(v.size)))
    return v / 2 ** ((n - 1) / 2)


def theorem_spectrum(thetas) -> np.ndarray:
    """
    Predicted eigenvalues of P_{0..0} P_{theta}: 2^(n-1) zeros plus
    (1 + cos(sum_i j_i theta_i)) / 2 for each sign vector j.
    """
    thetas = np.asarray(thetas, dtype=float)
    n = thetas.size
    vals = [0.0] * 2 ** (n - 1)
    for j in sign_vectors(n):
        vals.append((1.0 + np.cos(np.dot(j, thetas))) / 2.0)
    return np.sort(np.array(vals))


def projector_product(thetas, phis=None) -> np.ndarray:
    """P_{0..0} P_{theta,phi} as a dense matrix."""
    thetas = np.asarray(thetas, dtype=float)
    n = thetas.size
    if phis is None:
        phis = np.zeros(n)
    Oz = linalg.tensor_product(*([SIGMA_Z] * n))
    Ot = linalg.tensor_product(*[binary_axis_matrix(t, p) for t, p in zip(thetas, phis)])
    return plus_one_projector(Oz) @ plus_one_projector(Ot)


def verify_theorem_spectrum(thetas, tol: float = 1e-8) -> dict:
    """
    Compare the closed-form spectrum against a dense eigensolve and check
    that each psi_j is an eigenvector with the predicted eigenvalue.
    """
    thetas = np.asarray(thetas, dtype=float)
    n = thetas.size
    M = projector_product(thetas)
    numeric = np.sort(np.real(linalg.eigen_decompose(M)[0]))
    predicted = theorem_spectrum(thetas)
    max_dev = float(np.max(np.abs(numeric - predicted)))

    residuals = {}
    for j in sign_vectors(n):
        v = psi_state(j)
        lam = (1.0 + np.cos(np.dot(j, thetas))) / 2.0
        r = np.linalg.norm(M @ v - lam * v) / np.linalg.norm(v)
        residuals[j] = float(r)

    return {
        "n_qubits": int(n),
        "thetas": [float(t) for t in thetas],
        "predicted": [float(x) for x in predicted],
        "numeric": [float(x) for x in numeric],
        "max_deviation": max_dev,
        "eigvec_residuals": residuals,
        "passed": bool(max_dev < tol and max(residuals.values()) < tol),
    }


def xz_stabilizer_family(signs) -> list[np.ndarray]:
    """
    The n-1 operators O_k = X (x) Z ... (x) (-j_k X at slot k) (x) ... Z,
    k = 2..n.  Each fixes psi_j; psi_i is a +1 eigenvector of O_k exactly
    when i_k = j_k.
    """
    signs = tuple(signs)
    n = len(signs)
    if n < 2:
        raise ValueError("family needs at least two qubits")
    ops = []
    for k in range(1, n):
        factors = []
        for q in range(n):
            if q == 0:
                factors.append(SIGMA_X)
            elif q == k:
                factors.append(-signs[k] * SIGMA_X)
            else:
                factors.append(SIGMA_Z)
        ops.append(linalg.tensor_product(*factors))
    return ops


def angles_equal_mod_2pi(a: float, b: float, tol: float = 1e-9) -> bool:
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d) < tol
