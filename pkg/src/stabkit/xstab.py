# Six-qubit witness state with a cubic sign form, stabilized by operators
# built from X and the quarter-phase gate S = diag(1, i).  Its amplitude
# pattern cannot come from a degree-two sign polynomial, which is the
# evidence that it sits outside the local orbit of graph-type states.

from __future__ import annotations

from itertools import product

import numpy as np

from . import linalg
from .binaryops import IDENTITY_2, SIGMA_X
from .linalg import tensor_product

S_GATE = np.diag([1, 1j])
S3 = np.diag([1, -1j])


def xs_state() -> np.ndarray:
    """
    Sum over x in GF(2)^3 of (-1)^(x1 x2 x3) |x1 x2 x3, x1+x2, x2+x3, x3+x1>.

    Eight support strings of amplitude +-1; only x = (1,1,1), basis string
    |111000>, carries the minus sign.
    """
    v = np.zeros(64)
    for x1, x2, x3 in product((0, 1), repeat=3):
        bits = (x1, x2, x3, x1 ^ x2, x2 ^ x3, x3 ^ x1)
        idx = int("".join(map(str, bits)), 2)
        v[idx] = (-1) ** (x1 * x2 * x3)
    return v


def xs_operators() -> list[np.ndarray]:
    """
    Three 64x64 unitaries stabilizing the witness state, one per input bit.

    The operator for bit x_k applies X on qubit k and on the two parity
    qubits containing x_k, an S on the remaining parity qubit, and S^3 on
    the other two input qubits.  The parity qubits are ordered as in the
    state: (x1+x2, x2+x3, x3+x1).
    """
    X = SIGMA_X
    rows = [
        (X, S3, S3, X, S_GATE, X),
        (S3, X, S3, X, X, S_GATE),
        (S3, S3, X, S_GATE, X, X),
    ]
    return [tensor_product(*r) for r in rows]


def _plus_one_eigenbasis(O: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    w, V = linalg.eigen_decompose(O)
    return linalg.orthonormalize(V[:, np.abs(w - 1) < tol])


def _sign_form_is_quadratic(tol: float = 1e-9) -> bool:
    """
    Fit the sign exponents on the support with a GF(2) polynomial of degree
    at most two in (x1, x2, x3).  The support is the graph of a linear code,
    so a quadratic form would make the state a graph-type stabilizer state.
    """
    rows = []
    rhs = []
    for x in product((0, 1), repeat=3):
        x1, x2, x3 = x
        # monomials 1, x1, x2, x3, x1x2, x1x3, x2x3
        rows.append([1, x1, x2, x3, x1 * x2, x1 * x3, x2 * x3])
        rhs.append((x1 * x2 * x3) % 2)
    A = np.array(rows, dtype=np.uint8)
    b = np.array(rhs, dtype=np.uint8)
    # GF(2) elimination on the augmented system
    M = np.concatenate([A, b[:, None]], axis=1)
    r = 0
    for c in range(A.shape[1]):
        piv = next((i for i in range(r, M.shape[0]) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(M.shape[0]):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
    return not np.any(M[r:, -1])


def verify_xs(tol: float = 1e-10) -> dict:
    """
    Check the witness: each operator fixes the state, report the dimension
    of the joint +1 eigenspace, and report whether the amplitude sign form
    is expressible with degree <= 2 (it is not; the exponent is cubic).
    """
    psi = xs_state()
    norm = np.linalg.norm(psi)
    ops = xs_operators()
    fixed = [bool(np.linalg.norm(O @ psi - psi) < tol * norm) for O in ops]

    joint = _plus_one_eigenbasis(ops[0])
    for O in ops[1:]:
        joint = linalg.intersect_subspaces(joint, _plus_one_eigenbasis(O))
    commute_on_state = max(
        float(np.linalg.norm((A @ B - B @ A) @ psi))
        for A in ops
        for B in ops
    )
    return {
        "fixed": fixed,
        "joint_plus_one_dim": int(joint.shape[1]),
        "pauli_candidate": _sign_form_is_quadratic(),
        "commutator_on_state": commute_on_state,
        "tolerance": float(tol),
        "passed": bool(all(fixed) and commute_on_state < 1e-10),
    }
