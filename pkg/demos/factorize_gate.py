"""
Factoring a non-entangling gate into locals times a permutation
===============================================================

A unitary that maps every product state to a product state must equal a
phase times a tensor product of local unitaries times a qudit
permutation.  The constructive route runs through densification: M(t)
factors make every entry of a conjugated matrix nonzero, after which the
local factors are read off block proportionality ratios.
"""

import numpy as np

from stabkit import factorizer
from stabkit.linalg import tensor_product

rng = np.random.default_rng(42)


def haar(d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# the densification matrix at t = 1, d = 2 is [[i, -2], [-2, i]]
print("M(1) =", factorizer.lemma_matrix(1.0, 2).tolist())

# plant a qutrit gate: phase * (u1 x u2) * P(sigma), then recover it
sigma = (1, 0)
U = (
    np.exp(0.31j)
    * tensor_product(haar(3), haar(3))
    @ factorizer.permutation_matrix(sigma, 3)
)
dec = factorizer.factor_nonentangling(U, d=3, N=2)
print(f"recovered permutation {dec.permutation}, residual {dec.residual:.2e}")
print(f"reconstruction error {np.max(np.abs(dec.reconstruct(3) - U)):.2e}")

# an entangling gate is rejected up front
CX = np.eye(4)[[0, 1, 3, 2]]
print("CX preserves products:", factorizer.is_product_preserving(CX, 2, 2))

# densification turns the sparsest unitary (a permutation) entrywise dense
P = np.eye(8)[rng.permutation(8)]
_, _, V = factorizer.densify(P, d=2, n=3)
print(f"smallest entry modulus after densifying a permutation: "
      f"{np.min(np.abs(V)):.3f}")
