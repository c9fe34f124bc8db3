"""Preparation circuits for fixed-particle-number quantum states.

The package takes a sparse m-particle wavefunction on n spin-orbitals,
encoded under the Jordan-Wigner convention, and emits an explicit gate
sequence (X, CNOT, one-qubit rotations and controlled reflections) that
prepares it from |00...0>.  Every synthesized circuit can be replayed on
the bundled statevector simulator and checked against analytic gate-count
bounds.
"""

from .circuit import Circuit, Gate, GateCounts, CH, CNOT, U, X, count, decompose_ch, invert
from .errors import (
    Diverged,
    DimensionMismatch,
    Duplicate,
    Empty,
    FockPrepError,
    FormatError,
    InvalidArgs,
    MixedWeight,
    NotNormalized,
    OrbitalOutOfRange,
    SupportTooLarge,
    TooManyQubitsDense,
    Unsupported,
    ValidationError,
    WrongWeight,
    ZeroVector,
)
from .fock import (
    BranchSplit,
    Configuration,
    TargetState,
    split_leading_qubit,
    validate_target,
)
from .generate import gen_paired, gen_random
from .jw import LadderOp, OpString, annihilate, apply_ladder, apply_string, build_state, create, vacuum
from .scaling import (
    BoundReport,
    Crossovers,
    asymptotic,
    bound_recurrence,
    bound_report,
    closed_forms,
    crossovers,
    synthesis_bound,
)
from .serialize import (
    circuit_dumps,
    circuit_loads,
    load_circuit,
    load_state,
    save_circuit,
    save_state,
    state_dumps,
    state_loads,
)
from .sim import DenseState, SparseState, fidelity, run
from .synth import (
    Reflection,
    SynthOptions,
    SynthReport,
    solve_reflection,
    synthesize,
    transform_to_zero,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BranchSplit",
    "CH",
    "CNOT",
    "Circuit",
    "Configuration",
    "Crossovers",
    "DenseState",
    "DimensionMismatch",
    "Diverged",
    "Duplicate",
    "Empty",
    "FockPrepError",
    "FormatError",
    "Gate",
    "GateCounts",
    "InvalidArgs",
    "LadderOp",
    "MixedWeight",
    "NotNormalized",
    "OpString",
    "OrbitalOutOfRange",
    "Reflection",
    "SparseState",
    "SupportTooLarge",
    "SynthOptions",
    "SynthReport",
    "TargetState",
    "TooManyQubitsDense",
    "U",
    "Unsupported",
    "ValidationError",
    "WrongWeight",
    "X",
    "ZeroVector",
    "annihilate",
    "apply_ladder",
    "apply_string",
    "asymptotic",
    "bound_recurrence",
    "bound_report",
    "build_state",
    "circuit_dumps",
    "circuit_loads",
    "closed_forms",
    "count",
    "create",
    "crossovers",
    "decompose_ch",
    "fidelity",
    "gen_paired",
    "gen_random",
    "invert",
    "load_circuit",
    "load_state",
    "run",
    "save_circuit",
    "save_state",
    "solve_reflection",
    "split_leading_qubit",
    "state_dumps",
    "state_loads",
    "synthesis_bound",
    "synthesize",
    "transform_to_zero",
    "vacuum",
    "validate_target",
    "__version__",
]
