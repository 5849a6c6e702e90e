"""paulifuse: fuse Pauli rotations onto small supports behind Clifford frames."""

__version__ = "0.1.0"

from .circuit_ir import (
    BlockOp,
    CompiledProgram,
    CostModel,
    MetricsReport,
    RotationBlock,
    Segment,
    assemble,
    baseline_compile,
    emit,
    metrics,
    program_from_dict,
    program_to_dict,
)
from .gf2 import GeneratorDecomposition, decompose_generators
from .grouping import (
    ANTI_1Q,
    ANTI_2Q,
    COMMUTING,
    CommutationGraphs,
    Group,
    MutuallyCommuting,
    Schedule,
    build_graphs,
    grade_pair,
    group_single,
    group_two,
    part1_relation,
    quad_compatible,
    reorder,
    select_window,
)
from .hamlib import LatticeSpec, gen_heisenberg, gen_ising, load_terms, save_terms
from .oracle import (
    OracleCapExceeded,
    circuit_unitary,
    equal_up_to_phase,
    exp_pauli,
    pauli_matrix,
    program_unitary,
    verify_program,
)
from .pauli import (
    DimensionError,
    PauliParseError,
    PauliTerm,
    commutes,
    multiply,
    parse_pauli,
)
from .pipeline import compile_terms
from .synth import (
    ConjugationResult,
    ReductionImpossible,
    SupportViolation,
    conjugate_members,
    reduce_anticommuting,
    reduce_commuting,
)
from .tableau import (
    CX,
    CliffordCircuit,
    CliffordGate,
    H,
    S,
    Sdg,
    Tableau,
    conjugate_circuit,
    conjugate_gate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
