# Pauli stabilizer tableau simulator (generator-only, binary symplectic
# representation with sign bits), a dense statevector reference, and a
# structural Clifford-membership check.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .binaryops import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z

_PAULI = {(0, 0): IDENTITY_2, (1, 0): SIGMA_X, (0, 1): SIGMA_Z, (1, 1): SIGMA_Y}


@dataclass(frozen=True)
class Gate:
    name: str  # H | S | CX | CZ | M
    qubits: tuple

    def __post_init__(self):
        arity = {"H": 1, "S": 1, "CX": 2, "CZ": 2, "M": 1}.get(self.name)
        if arity is None:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.qubits) != arity:
            raise ValueError(f"{self.name} takes {arity} qubit(s)")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("two-qubit gate needs distinct operands")


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple

    def __post_init__(self):
        for g in self.gates:
            if any(q < 0 or q >= self.n_qubits for q in g.qubits):
                raise ValueError(f"qubit index out of range in {g}")


def parse_circuit(text: str, n_qubits: int | None = None) -> Circuit:
    """Parse the one-gate-per-line format: `H 0`, `S 1`, `CX 0 1`, `CZ 0 1`,
    `M 2`; `#` starts a comment."""
    gates = []
    hi = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            qubits = tuple(int(p) for p in parts[1:])
            gates.append(Gate(parts[0].upper(), qubits))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        hi = max(hi, *qubits)
    n = n_qubits if n_qubits is not None else hi + 1
    return Circuit(max(n, 1), tuple(gates))


class CliffordTableau:
    """
    Stabilizer generators of an n-qubit state: rows of x/z bit matrices plus
    a sign bit per generator.  Row i represents
    (-1)^phase[i] * prod_q X^x[i,q] Z^z[i,q] with the XZ overlap read as Y.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("need at least one qubit")
        self.n = n
        self.x = np.zeros((n, n), dtype=np.uint8)
        self.z = np.eye(n, dtype=np.uint8)
        self.phase = np.zeros(n, dtype=np.uint8)

    def copy(self) -> "CliffordTableau":
        t = CliffordTableau.__new__(CliffordTableau)
        t.n = self.n
        t.x = self.x.copy()
        t.z = self.z.copy()
        t.phase = self.phase.copy()
        return t

    # -- gate conjugation ---------------------------------------------------
    def apply_gate(self, gate: Gate):
        name, q = gate.name, gate.qubits
        if name == "H":
            a = q[0]
            self.phase ^= self.x[:, a] & self.z[:, a]
            self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()
        elif name == "S":
            a = q[0]
            self.phase ^= self.x[:, a] & self.z[:, a]
            self.z[:, a] ^= self.x[:, a]
        elif name == "CX":
            a, b = q
            self.phase ^= self.x[:, a] & self.z[:, b] & (self.x[:, b] ^ self.z[:, a] ^ 1)
            self.x[:, b] ^= self.x[:, a]
            self.z[:, a] ^= self.z[:, b]
        elif name == "CZ":
            a, b = q
            self.apply_gate(Gate("H", (b,)))
            self.apply_gate(Gate("CX", (a, b)))
            self.apply_gate(Gate("H", (b,)))
        elif name == "M":
            raise ValueError("measurements go through measure()")
        else:
            raise ValueError(f"unknown gate {name!r}")
        return self

    # -- Pauli row algebra ----------------------------------------------------
    @staticmethod
    def _g_exponent(x1, z1, x2, z2):
        """Exponent of i produced when multiplying two single-qubit Paulis
        in the X^x Z^z (Y for both) convention; vectorized over qubits."""
        x1 = x1.astype(np.int64); z1 = z1.astype(np.int64)
        x2 = x2.astype(np.int64); z2 = z2.astype(np.int64)
        both = x1 & z1
        only_x = x1 & ~z1
        only_z = ~x1 & z1
        return both * (z2 - x2) + only_x * z2 * (2 * x2 - 1) + only_z * x2 * (1 - 2 * z2)

    def _rowsum_into(self, acc_x, acc_z, acc_r, i):
        """Multiply generator row i into the accumulator Pauli, tracking the
        sign mod 4 (always ends up 0 or 2 for commuting stabilizer rows)."""
        g = int(np.sum(self._g_exponent(self.x[i], self.z[i], acc_x, acc_z)))
        total = (2 * acc_r + 2 * int(self.phase[i]) + g) % 4
        acc_x ^= self.x[i]
        acc_z ^= self.z[i]
        return total // 2

    def measure(self, qubit: int, rng) -> int:
        """Measure one qubit in the computational basis; updates generators
        in place and returns the outcome bit."""
        q = qubit
        anticommuting = np.flatnonzero(self.x[:, q])
        if anticommuting.size:
            p = int(anticommuting[0])
            for i in anticommuting[1:]:
                # replace row i by row i * row p so only row p anticommutes
                g = int(np.sum(self._g_exponent(self.x[p], self.z[p], self.x[i], self.z[i])))
                self.phase[i] = ((2 * int(self.phase[i]) + 2 * int(self.phase[p]) + g) % 4) // 2
                self.x[i] ^= self.x[p]
                self.z[i] ^= self.z[p]
            outcome = int(rng.integers(2))
            self.x[p] = 0
            self.z[p] = 0
            self.z[p, q] = 1
            self.phase[p] = outcome
            return outcome
        # deterministic: find the generator combination equal to +/- Z_q
        A = np.concatenate([self.x, self.z], axis=1).T % 2  # 2n x n over GF(2)
        target = np.zeros(2 * self.n, dtype=np.uint8)
        target[self.n + q] = 1
        coeff = _gf2_solve(A, target)
        if coeff is None:
            raise RuntimeError("tableau invariant broken: Z_q not in span")
        acc_x = np.zeros(self.n, dtype=np.uint8)
        acc_z = np.zeros(self.n, dtype=np.uint8)
        acc_r = 0
        for i in np.flatnonzero(coeff):
            acc_r = self._rowsum_into(acc_x, acc_z, acc_r, int(i))
        return int(acc_r)

    # -- dense view -----------------------------------------------------------
    def generator_matrix(self, i: int) -> np.ndarray:
        factors = [_PAULI[(int(self.x[i, q]), int(self.z[i, q]))] for q in range(self.n)]
        return (-1) ** int(self.phase[i]) * linalg.tensor_product(*factors)

    def check_invariants(self) -> bool:
        """Generators commute pairwise and are independent over GF(2)."""
        sym = (self.x @ self.z.T + self.z @ self.x.T) % 2
        if np.any(sym):
            return False
        return _gf2_rank(np.concatenate([self.x, self.z], axis=1)) == self.n


def _gf2_rank(A) -> int:
    A = A.copy().astype(np.uint8) % 2
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if A[r, c]:
                piv = r
                break
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        for r in range(rows):
            if r != rank and A[r, c]:
                A[r] ^= A[rank]
        rank += 1
    return rank


def _gf2_solve(A, b):
    """Solve A x = b over GF(2); returns one solution or None."""
    A = A.copy().astype(np.uint8) % 2
    b = b.copy().astype(np.uint8) % 2
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if A[rr, c]:
                piv = rr
                break
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        b[r], b[piv] = b[piv], b[r]
        for rr in range(rows):
            if rr != r and A[rr, c]:
                A[rr] ^= A[r]
                b[rr] ^= b[r]
        pivots.append(c)
        r += 1
    if np.any(b[r:]):
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, c in enumerate(pivots):
        x[c] = b[i]
    return x


def tableau_init(n: int) -> CliffordTableau:
    return CliffordTableau(n)


def apply_gate(t: CliffordTableau, gate: Gate) -> CliffordTableau:
    return t.apply_gate(gate)


def run_tableau(circuit: Circuit, rng=None):
    """Run a circuit on a fresh tableau; returns (tableau, outcome list)."""
    rng = rng if rng is not None else np.random.default_rng()
    t = CliffordTableau(circuit.n_qubits)
    outcomes = []
    for g in circuit.gates:
        if g.name == "M":
            outcomes.append(t.measure(g.qubits[0], rng))
        else:
            t.apply_gate(g)
    return t, outcomes


# -- dense reference ----------------------------------------------------------

_DENSE_1Q = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
}


def _apply_dense(state, gate, n):
    t = state.reshape([2] * n)
    if gate.name in _DENSE_1Q:
        q = gate.qubits[0]
        t = np.tensordot(_DENSE_1Q[gate.name], t, axes=([1], [q]))
        t = np.moveaxis(t, 0, q)
    elif gate.name == "CX":
        a, b = gate.qubits
        t = t.copy()
        idx1 = [slice(None)] * n
        idx1[a] = 1
        sub = t[tuple(idx1)]
        t[tuple(idx1)] = np.flip(sub, axis=b if b < a else b - 1)
    elif gate.name == "CZ":
        a, b = gate.qubits
        t = t.copy()
        idx = [slice(None)] * n
        idx[a] = 1
        idx[b] = 1
        t[tuple(idx)] = -t[tuple(idx)]
    else:
        raise ValueError(f"dense simulator got {gate.name}")
    return t.reshape(-1)


def dense_simulate(circuit: Circuit, rng=None):
    """Exact statevector run with Born-rule sampling at M gates.
    Returns (final state, outcome list)."""
    if circuit.n_qubits > 12:
        raise ValueError("dense reference capped at 12 qubits")
    rng = rng if rng is not None else np.random.default_rng()
    n = circuit.n_qubits
    state = np.zeros(2**n, dtype=complex)
    state[0] = 1.0
    outcomes = []
    for g in circuit.gates:
        if g.name == "M":
            q = g.qubits[0]
            t = state.reshape([2] * n)
            p1 = float(np.sum(np.abs(np.take(t, 1, axis=q)) ** 2))
            bit = int(rng.random() < p1)
            keep = np.take(t, bit, axis=q)
            proj = np.zeros_like(t)
            idx = [slice(None)] * n
            idx[q] = bit
            proj[tuple(idx)] = keep
            state = proj.reshape(-1) / np.sqrt(p1 if bit else 1 - p1)
            outcomes.append(bit)
        else:
            state = _apply_dense(state, g, n)
    return state, outcomes


def dense_outcome_distribution(circuit: Circuit) -> dict:
    """Exact joint distribution of the measurement-outcome string, by
    following every branch of the circuit (at most 2^m for m measurements)."""
    n = circuit.n_qubits
    init = np.zeros(2**n, dtype=complex)
    init[0] = 1.0
    dist: dict[str, float] = {}

    def walk(state, gi, prefix, prob):
        if prob < 1e-14:
            return
        for i in range(gi, len(circuit.gates)):
            g = circuit.gates[i]
            if g.name == "M":
                q = g.qubits[0]
                t = state.reshape([2] * n)
                for bit in (0, 1):
                    keep = np.take(t, bit, axis=q)
                    p = float(np.sum(np.abs(keep) ** 2))
                    if p < 1e-14:
                        continue
                    proj = np.zeros_like(t)
                    idx = [slice(None)] * n
                    idx[q] = bit
                    proj[tuple(idx)] = keep
                    walk(proj.reshape(-1) / np.sqrt(p), i + 1, prefix + str(bit), prob * p)
                return
            state = _apply_dense(state, g, n)
        if prefix:
            dist[prefix] = dist.get(prefix, 0.0) + prob

    walk(init, 0, "", 1.0)
    return dist


def sample_outcomes(circuit: Circuit, shots: int, seed: int = 0) -> dict:
    """
    Outcome-string histogram from the tableau simulator.

    For a stabilizer circuit the random measurements are independent fair
    coin flips and every deterministic outcome is an affine GF(2) function
    of the earlier random ones, so the full joint distribution is recovered
    from m+1 probe runs with forced coin values and then sampled in bulk.
    """
    rng = np.random.default_rng(seed)

    class _ForcedRng:
        def __init__(self, forced):
            self.forced = forced
            self.calls = 0

        def integers(self, _):
            bit = self.forced[self.calls] if self.calls < len(self.forced) else 0
            self.calls += 1
            return bit

    def probe(forced):
        fr = _ForcedRng(forced)
        _, outs = run_tableau(circuit, fr)
        return np.array(outs, dtype=np.uint8), fr.calls

    base, m = probe([])
    if len(base) == 0:
        return {}
    probes = []
    for j in range(m):
        forced = [0] * m
        forced[j] = 1
        out_j, _ = probe(forced)
        probes.append(out_j ^ base)
    counts: dict[str, int] = {}
    if m == 0:
        key = "".join(map(str, base))
        return {key: shots}
    coins = rng.integers(0, 2, size=(shots, m), dtype=np.uint8)
    delta = np.array(probes, dtype=np.uint8)  # m x n_outcomes
    strings = (coins @ delta + base) % 2
    for row in strings:
        key = "".join(map(str, row))
        counts[key] = counts.get(key, 0) + 1
    return counts


def total_variation_distance(hist: dict, dist: dict, shots: int) -> float:
    keys = set(hist) | set(dist)
    return 0.5 * sum(abs(hist.get(k, 0) / shots - dist.get(k, 0.0)) for k in keys)


def compare_simulators(circuit: Circuit, shots: int = 10_000, seed: int = 0) -> dict:
    """
    Validate the tableau run against the dense reference.  Measurement-free
    circuits: the dense final state must be a +1 eigenvector of every
    tableau generator.  With measurements: total variation distance between
    the sampled tableau histogram and the exact dense outcome distribution
    must stay below 3 sqrt(k / shots) for k distinct outcomes.
    """
    has_m = any(g.name == "M" for g in circuit.gates)
    if not has_m:
        t, _ = run_tableau(circuit, np.random.default_rng(seed))
        state, _ = dense_simulate(circuit, np.random.default_rng(seed))
        residual = max(
            float(np.linalg.norm(t.generator_matrix(i) @ state - state))
            for i in range(t.n)
        )
        return {
            "mode": "stabilizer-check",
            "seed": int(seed),
            "residual": residual,
            "passed": bool(residual < 1e-9),
        }
    hist = sample_outcomes(circuit, shots, seed)
    dist = dense_outcome_distribution(circuit)
    k = max(len(dist), 1)
    tvd = total_variation_distance(hist, dist, shots)
    bound = 3.0 * np.sqrt(k / shots)
    return {
        "mode": "histogram",
        "seed": int(seed),
        "shots": int(shots),
        "tvd": float(tvd),
        "bound": float(bound),
        "distinct_outcomes": int(k),
        "passed": bool(tvd < bound),
    }


def random_clifford_circuit(n: int, n_gates: int, seed: int = 0, measure_all: bool = False) -> Circuit:
    """Uniform draws from {H, S, CX}; optionally append a measurement of
    every qubit."""
    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(n_gates):
        kind = rng.integers(3)
        if kind == 2 and n >= 2:
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate("CX", (int(a), int(b))))
        else:
            gates.append(Gate("HS"[kind % 2], (int(rng.integers(n)),)))
    if measure_all:
        gates.extend(Gate("M", (q,)) for q in range(n))
    return Circuit(n, tuple(gates))


# -- Clifford membership --------------------------------------------------------

def _is_pauli_string(C: np.ndarray, tol: float = 1e-9):
    """Check that C = phase * (signed permutation with character phases),
    i.e. a Pauli string: C|j> = phase * (-1)^(b.j) |j xor a>."""
    d = C.shape[0]
    pos = np.argmax(np.abs(C), axis=0)
    a = int(pos[0])
    for j in range(d):
        if pos[j] != (j ^ a):
            return False
        col = C[:, j]
        if abs(abs(col[pos[j]]) - 1) > tol:
            return False
        if np.sum(np.abs(col) > tol) != 1:
            return False
    v0 = C[a, 0]
    if abs(v0**4 - 1) > 1e-6:
        return False
    s = np.array([C[j ^ a, j] / v0 for j in range(d)])
    if np.max(np.abs(s.imag)) > tol or np.max(np.abs(np.abs(s) - 1)) > tol:
        return False
    s = np.sign(s.real)
    # signs must form a GF(2) character (-1)^(b.j)
    n = int(round(np.log2(d)))
    for j in range(d):
        for kbit in range(n):
            k = 1 << kbit
            if abs(s[j ^ k] - s[j] * s[k]) > tol:
                return False
    return True


def clifford_membership(U: np.ndarray, n: int, tol: float = 1e-9) -> bool:
    """True iff conjugating every single-wire X and Z generator by U lands in
    the Pauli group (a {+-1, +-i} phase times a Pauli tensor)."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (2**n, 2**n):
        raise ValueError("dimension mismatch")
    if not linalg.is_unitary(U, 1e-9):
        raise ValueError("input is not unitary")
    for q in range(n):
        for p in (SIGMA_X, SIGMA_Z):
            G = linalg.tensor_product(
                *[p if w == q else IDENTITY_2 for w in range(n)]
            )
            if not _is_pauli_string(U @ G @ U.conj().T, tol):
                return False
    return True
