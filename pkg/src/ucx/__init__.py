"""Description-complexity estimates for unitary transformations on n qubits."""

__version__ = "0.1.0"

from .basis import OperatorBasis, decompose, gram_schmidt_with_seed, pauli_basis, verify_parseval
from .coding import (
    SKIP,
    CodewordTable,
    ProbabilityEnsemble,
    assign_codewords,
    decode_index,
    encode_index,
    ensemble_from_projection,
    shannon_fano_lengths,
    verify_kraft,
)
from .estimator import (
    UNREACHABLE,
    Budget,
    ComplexityReport,
    estimate_state_complexity,
    estimate_unitary_complexity,
    is_directly_computable,
    penalty,
    state_unitary_relation,
    theorem1_check,
)
from .linalg import (
    PureState,
    UnitaryOperator,
    apply,
    check_unitary,
    fidelity,
    hs_inner,
    hs_inner_normalized,
    random_state,
    random_unitary,
    tensor,
    unitary_from_basis_images,
)
from .programs import (
    DEFAULT_GATE_SET,
    BasisIndex,
    Circuit,
    Machine,
    Mode,
    Program,
    StateBasisIndex,
    baseline_basis_program,
    decode_program,
    encode_program,
    enumerate_programs,
    evaluate,
)
