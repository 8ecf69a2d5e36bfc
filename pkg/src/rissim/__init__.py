"""rissim: RIS channel-subspace characterization and reduced-pilot channel estimation.

A numpy library plus a seeded Monte Carlo harness for studying the
low-dimensional subspace spanned by reconfigurable-intelligent-surface
channels, estimating the cascaded BS-RIS-UE channel from a reduced pilot
set, and optimizing the surface configuration for SNR.
"""

__version__ = "0.1.0"

from .arrays import (
    AnglePair,
    ArrayGeometry,
    UlaGeometry,
    element_index,
    inner_product_magnitude,
    ula_steering,
    upa_steering,
)
from .channels import (
    BsRisChannel,
    CascadedChannel,
    LinkBudget,
    PathComponent,
    UeChannel,
    bs_ris_los,
    bs_ris_multipath,
    cascaded,
    read_channel_dump,
    rician_k_db,
    ue_channel,
    ue_pathloss_db,
    write_channel_dump,
)
from .estimators import (
    Estimate,
    PilotPlan,
    RxPilots,
    assemble_cascaded,
    ls_estimate,
    ls_pilot_plan,
    rsls_estimate,
    rsls_pilot_plan,
    simulate_pilots,
)
from .experiments import (
    ConfigError,
    ScenarioConfig,
    SweepResult,
    TrialRecord,
    desk_profile,
    full_profile,
    nmse,
    run_dof_table,
    run_eigen_spectrum,
    run_nmse_sweep,
    run_snr_sweep,
    run_trial,
    sample_user,
)
from .risconfig import (
    RisConfiguration,
    alt_optimize,
    config_from_estimate,
    los_closed_form,
    snr,
    split_config,
)
from .subspace import (
    BasisSet,
    EigenSpectrum,
    azimuth_set,
    correlation_spectrum,
    dof_approx,
    elevation_set,
    generate_basis,
    project,
    subspace_coefficients,
)
