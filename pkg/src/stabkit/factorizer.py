# Constructive factorization of non-entangling gates: a distinct-spectrum
# diagonal witness, the M(t) densification matrix and its recursion, and the
# block-proportionality extraction of local factors times a qudit permutation.

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import linalg
from .linalg import tensor_product


class DensificationError(RuntimeError):
    pass


class FactorizationError(RuntimeError):
    pass


@dataclass
class TrivialGateDecomposition:
    locals: list  # N unitary d x d matrices, determinant-phase-free
    permutation: tuple  # sigma with P|x_1..x_N> = |x_sigma(1)..x_sigma(N)>
    phase: complex  # unit modulus
    residual: float

    def reconstruct(self, d: int) -> np.ndarray:
        return self.phase * tensor_product(*self.locals) @ permutation_matrix(
            self.permutation, d
        )


def distinct_spectrum_witness(d: int, N: int) -> np.ndarray:
    """Diagonal product operator whose d^N eigenvalues are pairwise distinct:
    the k-th factor carries phases exp(i (l-1) pi / d^k), l = 1..d."""
    if d < 2 or N < 1 or d**N > 1024:
        raise ValueError("need d >= 2, N >= 1 and d^N <= 1024")
    factors = [
        np.diag(np.exp(1j * np.arange(d) * np.pi / d**k)) for k in range(1, N + 1)
    ]
    return tensor_product(*factors)


def lemma_matrix(t: float, d: int) -> np.ndarray:
    """M(t) with entries -2 t^(k+l-2) + delta_kl (i + sum_s t^(2s)); its
    columns are orthogonal with common norm^2 = 1 + (sum_s t^(2s))^2, so
    M(t) over that norm is unitary."""
    k = np.arange(d)
    M = -2.0 * np.power(float(t), k[:, None] + k[None, :]) + 0j
    M += np.eye(d) * (1j + sum(float(t) ** (2 * s) for s in range(d)))
    return M


def _lemma_unitary(t: float, d: int) -> np.ndarray:
    norm = np.sqrt(1 + sum(float(t) ** (2 * s) for s in range(d)) ** 2)
    return lemma_matrix(t, d) / norm


def _site_kron(m: np.ndarray, site: int, n: int, d: int) -> np.ndarray:
    factors = [m if i == site else np.eye(d) for i in range(n)]
    return tensor_product(*factors)


def densify(U: np.ndarray, d: int, n: int, seed: int = 0) -> tuple:
    """
    Find unitaries u_1..u_n, v_1..v_n with V = (u_1 (x) ... ) U (v_1 (x) ...)
    entrywise nonzero.  Site by site, t is scanned over a fixed grid plus
    seeded random draws, pairing the left factor M(t) with the right factor
    M(t^(2d)) per the construction's recursion, and the candidate maximizing
    the smallest entry modulus is kept.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (d**n, d**n):
        raise ValueError("dimension mismatch")
    rng = np.random.default_rng(seed)
    grid = list(np.arange(0.5, 2.0, 0.2)) + list(rng.uniform(0.1, 2.2, size=20))
    V = U.copy()
    u_list, v_list = [], []
    for site in range(n):
        best = None
        for t in grid:
            L = _lemma_unitary(t, d)
            R = _lemma_unitary(t ** (2 * d), d)
            Vc = _site_kron(L, site, n, d) @ V @ _site_kron(R, site, n, d)
            score = float(np.min(np.abs(Vc)))
            if best is None or score > best[0]:
                best = (score, L, R, Vc)
        _, L, R, Vc = best
        u_list.append(L)
        v_list.append(R)
        V = Vc
    if np.min(np.abs(V)) < 1e-12 * np.max(np.abs(V)):
        raise DensificationError("no scanned parameter removed all zero entries")
    return u_list, v_list, V


def permutation_matrix(sigma, d: int) -> np.ndarray:
    """P with P|x_1..x_N> = |x_sigma(1)..x_sigma(N)> in base-d digits."""
    sigma = tuple(sigma)
    N = len(sigma)
    dim = d**N
    P = np.zeros((dim, dim))
    for idx in range(dim):
        digits = []
        rem = idx
        for _ in range(N):
            digits.append(rem % d)
            rem //= d
        digits = digits[::-1]
        new = 0
        for q in range(N):
            new = new * d + digits[sigma[q]]
        P[new, idx] = 1.0
    return P


def _tensor_factors(W: np.ndarray, d: int, N: int, tol: float):
    """Split W into d x d tensor factors by successive rank-1 SVD cuts on the
    interleaved (row digit, column digit) tensor; None if any cut has
    rank > 1 beyond tol."""
    vec = W.reshape([d] * (2 * N))
    order = [ax for q in range(N) for ax in (q, N + q)]
    vec = np.transpose(vec, order).reshape(-1)
    factors = []
    for _ in range(N - 1):
        A = vec.reshape(d * d, -1)
        Uv, s, Vh = np.linalg.svd(A, full_matrices=False)
        if s[0] == 0 or (len(s) > 1 and s[1] > tol * s[0]):
            return None
        factors.append(Uv[:, 0].reshape(d, d))
        vec = s[0] * Vh[0]
    factors.append(vec.reshape(d, d))
    return factors


def is_product_preserving(U: np.ndarray, d: int, N: int, tol: float = 1e-8, trials: int = 100, seed: int = 0) -> bool:
    """
    True iff U maps product states to product states, tested two ways: the
    conjugated distinct-spectrum witness must factor into d x d tensor
    blocks, and random product states must stay product (top-to-second
    singular value below tol across every site-versus-rest cut).
    """
    U = np.asarray(U, dtype=complex)
    if not linalg.is_unitary(U, 1e-9):
        raise ValueError("input is not unitary")
    W = U @ distinct_spectrum_witness(d, N) @ U.conj().T
    if _tensor_factors(W, d, N, tol) is None:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        parts = []
        for _ in range(N):
            v = rng.normal(size=d) + 1j * rng.normal(size=d)
            parts.append(v / np.linalg.norm(v))
        out = U @ tensor_product(*[p.reshape(-1, 1) for p in parts]).ravel()
        t = out.reshape([d] * N)
        for q in range(N):
            m = np.moveaxis(t, q, 0).reshape(d, -1)
            s = np.linalg.svd(m, compute_uv=False)
            if s[1] > tol * s[0]:
                return False
    return True


def _extract_dense_factors(V: np.ndarray, d: int, N: int):
    """Local factors of an entrywise-dense pure tensor product, recovered by
    dividing each d^(N-1) block by the reference block at the position of
    its largest entry."""
    factors = []
    W = V
    for level in range(N - 1):
        m = W.shape[0] // d
        blocks = W.reshape(d, m, d, m)
        flat = np.abs(W)
        k_star, l_star = np.unravel_index(np.argmax(flat), W.shape)
        k_star, l_star = k_star // m, l_star // m
        ref = blocks[k_star, :, l_star, :]
        p = np.unravel_index(np.argmax(np.abs(ref)), ref.shape)
        A = blocks[:, p[0], :, p[1]] / ref[p]
        factors.append(A)
        W = ref
    factors.append(W)
    return factors


def _normalize_local(u: np.ndarray) -> np.ndarray:
    """Nearest unitary with determinant made positive real (equal to one)."""
    u = linalg.nearest_unitary(u)
    det = np.linalg.det(u)
    return u * np.exp(-1j * np.angle(det) / u.shape[0])


def _factor_with_sigma(U, d, N, sigma):
    Q = U @ permutation_matrix(sigma, d).T
    try:
        a_list, b_list, V = densify(Q, d, N)
    except DensificationError:
        return None, np.inf
    raw = _extract_dense_factors(V, d, N)
    # undo the densification sandwich on each recovered factor
    locals_ = [
        _normalize_local(a.conj().T @ m @ b.conj().T)
        for a, m, b in zip(a_list, raw, b_list)
    ]
    recon = tensor_product(*locals_) @ permutation_matrix(sigma, d)
    pos = np.unravel_index(np.argmax(np.abs(recon)), recon.shape)
    ratio = U[pos] / recon[pos]
    if abs(ratio) < 1e-12:
        return None, np.inf
    phase = ratio / abs(ratio)
    residual = float(np.max(np.abs(U - phase * recon)))
    return TrivialGateDecomposition(locals_, tuple(sigma), complex(phase), residual), residual


def factor_nonentangling(U: np.ndarray, d: int, N: int, tol: float = 1e-8) -> TrivialGateDecomposition:
    """
    Decompose a non-entangling unitary as phase * (u_1 (x) ... (x) u_N) * P.

    For each candidate qudit permutation (all of them when N <= 3, greedy
    adjacent-transposition repair capped at N^2 swaps otherwise), the
    permutation is peeled off, the remainder densified, and local factors
    read off block proportionality ratios; the candidate with the smallest
    reconstruction residual wins.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (d**N, d**N):
        raise ValueError("dimension mismatch")
    if N <= 3:
        candidates = list(permutations(range(N)))
    else:
        candidates = [tuple(range(N))]
        sigma = list(range(N))
        for _ in range(N * N):
            _, res = _factor_with_sigma(U, d, N, tuple(sigma))
            if res < tol:
                break
            improved = False
            for i in range(N - 1):
                trial = sigma.copy()
                trial[i], trial[i + 1] = trial[i + 1], trial[i]
                _, r2 = _factor_with_sigma(U, d, N, tuple(trial))
                if r2 < res:
                    sigma, improved = trial, True
                    break
            if not improved:
                break
            candidates.append(tuple(sigma))
    best = None
    for sigma in candidates:
        dec, res = _factor_with_sigma(U, d, N, sigma)
        if dec is not None and (best is None or res < best.residual):
            best = dec
    if best is None or best.residual > tol:
        got = best.residual if best is not None else np.inf
        raise FactorizationError(
            f"no local-times-permutation form within tolerance (best residual {got:.3e})"
        )
    return best
