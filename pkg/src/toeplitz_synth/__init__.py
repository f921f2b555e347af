"""Circuit synthesis for time evolution under banded symmetric Toeplitz Hamiltonians."""
from .circuit import (
    Circuit,
    Gate,
    apply_to_state,
    circuit_unitary,
    gate_unitary,
    resource_metrics,
)
from .linalg import expm_oracle, jacobi_eigh
from .qasm import to_qasm
from .synthesis import (
    SynthesisPlan,
    TrotterParams,
    UnsupportedSpecError,
    classify,
    lower_circuit,
    lower_perm_shift,
    synth_Ek_evolution,
    synth_full_evolution,
    synth_Mk_evolution,
    synth_poisson,
    synth_sigma_evolution,
    synth_Tk_evolution,
)
from .toeplitz import (
    CongruenceClass,
    ToeplitzSpec,
    build_Ek,
    build_Mk,
    build_P_power,
    build_sigma_diagonalized,
    build_sigma_factored,
    build_sigma_sum,
    build_Tk,
    congruence_class,
    materialize,
)
from .verify import ErrorReport, check_theorem1, check_theorem2, operator_distance, trotter_sweep

__version__ = "0.1.0"
