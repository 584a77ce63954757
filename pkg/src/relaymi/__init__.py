"""Asymptotic mutual information of multi-hop correlated MIMO relay networks."""

from .asymptotic import (
    ConvergenceError,
    EmpiricalLaw,
    FixedPointSolution,
    PointMass,
    SolverConfig,
    ToeplitzProduct,
    asymptotic_mi,
    closed_form_single_hop_iid,
    complete_elliptic_k,
    mi_derivative_check,
    multi_hop_exponential,
    multi_hop_uncorrelated,
    one_sided_exponential,
    single_hop_correlated,
    solve_fixed_point,
)
from .channel import (
    CorrelationSpec,
    HopSpec,
    NetworkSpec,
    average_mi_monte_carlo,
    build_m_matrices,
    compose_end_to_end,
    draw_channels,
    instantaneous_mi,
)
from .freeprob import EmpiricalSpectrum, s_transform, upsilon_inverse, verify_swap_relation
from .linalg import exponential_toeplitz, hermitian_eig, log_det_id_plus, make_rng, psd_sqrt
from .precoding import (
    equal_power_coeffs_general,
    equal_power_coeffs_uncorrelated,
    equal_power_precoders,
    optimal_precoders,
    transmit_power_audit,
)

__version__ = "0.1.0"
