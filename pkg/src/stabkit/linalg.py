# Dense complex linear algebra substrate shared by every other module.
#
# Conventions: states live over the n-qubit computational basis with qubit 0
# as the most significant bit of the basis index, so |k1 k2 ... kn> maps to
# the integer k1*2^(n-1) + ... + kn.  This matches numpy.kron ordering.

from __future__ import annotations

import json

import numpy as np
import numpy.linalg as npl

DEFAULT_TOL = 1e-9
EIGEN_TOL = 1e-8
HERMITIAN_DETECT_TOL = 1e-12


def tensor_product(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def is_hermitian(M: np.ndarray, tol: float = HERMITIAN_DETECT_TOL) -> bool:
    return bool(np.max(np.abs(M - M.conj().T)) < tol)


def is_unitary(M: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    d = M.shape[0]
    return bool(np.max(np.abs(M.conj().T @ M - np.eye(d))) < tol)


def eigen_decompose(M: np.ndarray):
    """
    Eigendecomposition with Hermitian routing.

    Returns (eigenvalues, eigenvectors) with eigenvectors as columns.
    Hermitian inputs (max deviation from M^dagger below 1e-12) are sent to
    the symmetric solver for stability; everything else uses the general
    complex solver.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape[0] != M.shape[1]:
        raise ValueError("eigen_decompose requires a square matrix")
    if is_hermitian(M):
        w, V = npl.eigh(M)
        return w.astype(complex), V
    return npl.eig(M)


def null_space(M: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """
    Orthonormal kernel basis (columns) via SVD.

    The rank threshold is relative: singular values below tol * sigma_max
    count as zero.  A zero matrix yields the full space.
    """
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    _, s, Vh = npl.svd(M)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(M.shape[1], dtype=complex)
    rank = int(np.sum(s > tol * smax))
    return Vh[rank:].conj().T


def reduced_density(v: np.ndarray, keep, n_qubits: int | None = None) -> np.ndarray:
    """Partial trace of |v><v| keeping the given qubit indices."""
    v = np.asarray(v, dtype=complex).ravel()
    n = n_qubits if n_qubits is not None else int(round(np.log2(v.size)))
    if v.size != 2**n:
        raise ValueError("state length is not a power of two")
    keep = sorted(keep)
    if not keep or any(q < 0 or q >= n for q in keep):
        raise ValueError("keep must be a non-empty subset of qubit indices")
    t = v.reshape([2] * n)
    drop = [q for q in range(n) if q not in keep]
    t = np.moveaxis(t, keep + drop, range(n))
    a = t.reshape(2 ** len(keep), 2 ** len(drop))
    return a @ a.conj().T


def schmidt_coefficients(v: np.ndarray, bipartition, n_qubits: int | None = None) -> np.ndarray:
    """Descending Schmidt coefficients across bipartition | complement."""
    v = np.asarray(v, dtype=complex).ravel()
    n = n_qubits if n_qubits is not None else int(round(np.log2(v.size)))
    part = sorted(bipartition)
    if not part or len(part) >= n:
        raise ValueError("bipartition must be a proper non-empty subset")
    rest = [q for q in range(n) if q not in part]
    t = np.moveaxis(v.reshape([2] * n), part + rest, range(n))
    return npl.svd(t.reshape(2 ** len(part), 2 ** len(rest)), compute_uv=False)


def nearest_unitary(M: np.ndarray) -> np.ndarray:
    """Closest unitary in Frobenius norm (polar factor)."""
    U, _, Vh = npl.svd(M)
    return U @ Vh


def state_overlap(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>| after normalizing both vectors; phase-insensitive match score."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    return float(abs(np.vdot(a, b)) / (npl.norm(a) * npl.norm(b)))


def orthonormalize(columns: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) for the column span."""
    cols = np.atleast_2d(np.asarray(columns, dtype=complex))
    U, s, _ = npl.svd(cols, full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return U[:, :rank]


def intersect_subspaces(A: np.ndarray, B: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """
    Orthonormal basis for the intersection of two column-span subspaces.

    A vector lies in both spans iff it is orthogonal to neither complement;
    equivalently it is in the kernel of [P_A^perp; P_B^perp].
    """
    d = A.shape[0]
    PA = A @ A.conj().T
    PB = B @ B.conj().T
    stacked = np.vstack([np.eye(d) - PA, np.eye(d) - PB])
    return null_space(stacked, tol)


# --- JSON exchange format -------------------------------------------------
# {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major; vectors use
# cols = 1.

def matrix_to_json(M: np.ndarray) -> dict:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in M.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError("entry count does not match rows * cols")
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape(rows, cols)


def save_matrix(M: np.ndarray, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(M), fh)


def load_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
