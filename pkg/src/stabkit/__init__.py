"""Numerical toolkit for binary-observable stabilization: spectra of
projector products, stabilization-pattern search and classification,
generator-tableau simulation of stabilizer circuits, non-entangling gate
factorization, and a six-qubit phase-gate stabilizer witness."""

from .binaryops import (
    BinaryAxis,
    binary_axis_matrix,
    plus_one_projector,
    projector_product,
    psi_state,
    sign_vectors,
    theorem_spectrum,
    verify_theorem_spectrum,
    xz_stabilizer_family,
)
from .factorizer import (
    DensificationError,
    FactorizationError,
    TrivialGateDecomposition,
    densify,
    distinct_spectrum_witness,
    factor_nonentangling,
    is_product_preserving,
    lemma_matrix,
    permutation_matrix,
)
from .gksim import (
    Circuit,
    CliffordTableau,
    Gate,
    clifford_membership,
    compare_simulators,
    dense_simulate,
    parse_circuit,
    random_clifford_circuit,
    run_tableau,
    sample_outcomes,
    total_variation_distance,
)
from .patterns import (
    PatternSlot,
    StabilizationOutcome,
    StabilizationPattern,
    canonicalize,
    classify_lu_class,
    conjecture_scan,
    determinant_method,
    enumerate_patterns,
    ghz_local_form,
    instantiate,
    reproduce_table,
    stabilized_subspace,
)
from .xstab import verify_xs, xs_operators, xs_state

__version__ = "0.1.0"

__all__ = [
    "BinaryAxis",
    "binary_axis_matrix",
    "plus_one_projector",
    "projector_product",
    "psi_state",
    "sign_vectors",
    "theorem_spectrum",
    "verify_theorem_spectrum",
    "xz_stabilizer_family",
    "DensificationError",
    "FactorizationError",
    "TrivialGateDecomposition",
    "densify",
    "distinct_spectrum_witness",
    "factor_nonentangling",
    "is_product_preserving",
    "lemma_matrix",
    "permutation_matrix",
    "Circuit",
    "CliffordTableau",
    "Gate",
    "clifford_membership",
    "compare_simulators",
    "dense_simulate",
    "parse_circuit",
    "random_clifford_circuit",
    "run_tableau",
    "sample_outcomes",
    "total_variation_distance",
    "PatternSlot",
    "StabilizationOutcome",
    "StabilizationPattern",
    "canonicalize",
    "classify_lu_class",
    "conjecture_scan",
    "determinant_method",
    "enumerate_patterns",
    "ghz_local_form",
    "instantiate",
    "reproduce_table",
    "stabilized_subspace",
    "verify_xs",
    "xs_operators",
    "xs_state",
    "__version__",
]
