"""Optimal purification of depolarized qubits.

Block weights of rho^{⊗N}, fidelities of the natural and optimal purifiers,
their large-N asymptotics, and a dense-matrix oracle that checks all of it at
small N.
"""
from .asymptotics import (
    binom_phi,
    binom_phi_limit,
    c_coefficient,
    convergence_report,
    phi_lower_crude,
    phi_lower_refined,
    phi_rate,
)
from .purifiers import (
    FidelityReport,
    InstrumentOutcome,
    cloner_gain,
    f_all,
    f_one,
    fidelity_all_max,
    fidelity_one_max,
    fidelity_one_max_inf,
    fidelity_one_max_zero,
    natural_instrument,
)
from .repspace import DomainError, LogValue, log_binomial, multiplicity, multiplicity_exact, spin_support
from .states import (
    Noise,
    SpinBlockState,
    WeightTable,
    block_state,
    expect_under_weights,
    gamma_block,
    make_noise,
    weight,
    weight_table,
)

__version__ = "0.1.0"
