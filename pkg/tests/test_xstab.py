from itertools import product

import numpy as np

from stabkit import xstab


def test_state_support_and_signs():
    v = xstab.xs_state()
    support = {i for i in range(64) if v[i] != 0}
    assert len(support) == 8
    want = {}
    for x1, x2, x3 in product((0, 1), repeat=3):
        bits = (x1, x2, x3, x1 ^ x2, x2 ^ x3, x3 ^ x1)
        idx = sum(b << (5 - i) for i, b in enumerate(bits))
        want[idx] = (-1) ** (x1 * x2 * x3)
    assert support == set(want)
    for idx, amp in want.items():
        assert v[idx] == amp
    # single negative amplitude at |111000>
    assert v[0b111000] == -1
    assert int(np.sum(v < 0)) == 1


def test_operators_are_order_four_unitaries():
    for O in xstab.xs_operators():
        assert np.allclose(O @ O.conj().T, np.eye(64))
        O2 = O @ O
        assert not np.allclose(O2, np.eye(64))
        assert np.max(np.abs(O2 @ O2 - np.eye(64))) == 0.0


def test_operators_fix_state_exactly():
    v = xstab.xs_state()
    for O in xstab.xs_operators():
        assert np.max(np.abs(O @ v - v)) < 1e-12


def test_verify_report():
    rep = xstab.verify_xs()
    assert rep["passed"]
    assert rep["fixed"] == [True, True, True]
    assert rep["joint_plus_one_dim"] == 1
    # cubic sign exponent is not expressible at degree two
    assert rep["pauli_candidate"] is False
    assert rep["commutator_on_state"] < 1e-10


def test_joint_fixed_space_is_spanned_by_the_state():
    import stabkit.linalg as linalg

    v = xstab.xs_state()
    v = v / np.linalg.norm(v)
    ops = xstab.xs_operators()
    basis = None
    for O in ops:
        w, V = linalg.eigen_decompose(O)
        cols = linalg.orthonormalize(V[:, np.abs(w - 1) < 1e-9])
        basis = cols if basis is None else linalg.intersect_subspaces(basis, cols)
    assert basis.shape[1] == 1
    assert linalg.state_overlap(basis[:, 0], v) > 1 - 1e-10
