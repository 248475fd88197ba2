"""Speed limits on unitary operator flows and what they bound.

A numpy/scipy library for computing overlap and autocorrelation decay bounds
of Heisenberg operator flows, the crossover between their linear and
quadratic regimes, ceilings on dynamical susceptibilities and the thermal
quantum Fisher information, and the state-picture reductions, together with
a scenario runner that reproduces the reference experiments (two-level
system, random-matrix ensembles, coherent-Gibbs fidelity decay).
"""

from .autocorrelation import (
    CorrelationCurve,
    QubitParams,
    QubitReference,
    autocorr_crossover,
    autocorr_curve,
    im_autocorr_ceiling,
    ml_autocorr_floor,
    mt_autocorr_floor,
    qubit_hamiltonian,
    qubit_reference,
    velocity_moment,
)
from .ensembles import GoeSpec, sample_goe, sample_goe_pair
from .fisher import (
    INTEGRAL_CALIBRATION,
    QfiResult,
    cramer_rao_floor,
    csch,
    csch_moment,
    kernel_time_cutoff,
    qfi_ceiling,
    qfi_from_autocorr,
    qfi_spectral,
)
from .gaps import (
    WeightedGapDistribution,
    abs_moment,
    anchored_sum,
    char_function,
    correlation_distribution,
    first_moment,
    overlap_distribution,
    second_moment,
)
from .linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityMatrix,
    EnergyBasisOperator,
    Spectrum,
    anticommutator,
    assert_hermitian,
    build_liouvillian,
    commutator,
    eigh,
    evolve_heisenberg,
    gibbs,
    hermiticity_defect,
    hs_inner,
    hs_norm,
    is_hermitian,
    to_energy_basis,
    vectorize,
)
from .response import (
    BoundTensor,
    CrossoverTimes,
    SusceptibilityCurve,
    bogoliubov_ceiling,
    bogoliubov_temperature,
    bound_tensor,
    crossover_times,
    heisenberg_ceiling,
    kubo_response,
    qsl_ceiling,
    susceptibility_curve,
    tau_qsl,
)
from .speed_limits import (
    BoundCurve,
    QslVelocities,
    alpha_constant,
    crossover_time,
    driven_ml_floor,
    driven_ml_floor_curve,
    driven_overlap,
    max_speed_operator,
    ml_hamiltonian_min_time,
    ml_min_time,
    ml_overlap_floor,
    mt_min_time,
    mt_overlap_floor,
    operator_angle,
    tangency_point,
    trig_ml_min_time,
    trig_mt_min_time,
    velocities_from_distribution,
)
from .states import (
    FidelityCurve,
    GoeFidelityResult,
    PureState,
    coherent_gibbs,
    goe_fidelity_experiment,
    ml_state_min_time,
    mt_state_min_time,
    partition_overlap,
    state_overlap,
    variance_relation_check,
)

__version__ = "0.1.0"
