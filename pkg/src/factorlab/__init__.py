"""factorlab: entanglement or separability as a property of the chosen
operator-algebra factorization.

The library constructs the standard two-qubit and qudit state families,
entanglement witnesses and CHSH analysis, the global unitaries that switch a
state between separable and entangled factorizations, and the teleportation /
entanglement-swapping protocols phrased through isometries.
"""

from .linalg import (
    DEFAULT_TOL,
    DimensionMismatchError,
    SchmidtDecomposition,
    Spectrum,
    align_global_phase,
    extend_to_unitary,
    herm_eigensystem,
    hs_inner,
    hs_norm,
    is_hermitian,
    is_psd,
    is_unitary,
    partial_trace,
    partial_transpose,
    psd_sqrt,
    schmidt_decompose,
)
from .measures import (
    PptVerdict,
    abs_sep_2x2,
    concurrence,
    hs_distance,
    hs_measure_to,
    kz_ball_member,
    maxent_weight,
    mixedness,
    ppt_check,
    purity,
    split_bound_check,
    vn_entropy,
)
from .protocols import (
    BellMeasurementOutcome,
    Isometry,
    ProtocolCheckError,
    isometry_of_maxent,
    maxent_from_isometry,
    swap,
    swap_outcomes,
    teleport,
    teleport_outcomes,
)
from .states import (
    BlochForm,
    DensityMatrix,
    StateValidationError,
    bell_state,
    bell_vector,
    from_bloch,
    ghz_traced,
    ghz_vector,
    gisin,
    narnhofer,
    product_state,
    psi_theta,
    rho_theta,
    state_from_dict,
    state_to_dict,
    to_bloch,
    tracial,
    werner,
    werner_generalized,
    weyl_basis_state,
    weyl_operator,
)
from .transforms import (
    FactorizationSwitch,
    LocalFilter,
    NotApplicable,
    algebra_image,
    apply_filter,
    conjugate,
    constrained_entangle,
    geometric_mean_predicts_npt,
    ghz_split_unitary,
    gisin_filter,
    gisin_unitary_family,
    identity_switch,
    named_switch,
    narnhofer_unitary,
    pure_to_maxent,
    pure_to_product,
    separabilize,
    u1_ghz,
    u2_ghz,
    u_switch,
    u_theta,
    u_tilde_theta,
    weylize,
)
from .witness_bell import (
    ChshSetting,
    GisinThresholds,
    Witness,
    chsh_maximize,
    chsh_operator,
    chsh_value,
    ewi_eval,
    gisin_thresholds,
    horodecki_bmax,
    optimal_witness,
    verstraete_wolf_bounds,
    witness_projector,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
