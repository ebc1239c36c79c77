"""Disk counting statistics of truncated unitary eigenvalue ensembles.

Exact finite-n moment generating functions, their large-n C1 n + C2
prediction with cumulant and CLT coefficients, and two independent Monte
Carlo samplers for cross-validation.
"""

from .asymptotics import (
    AsymptoticConstants,
    CumulantReport,
    asymptotic_constants,
    b1_coeff,
    b1_coeff_integral,
    b11_coeff,
    c1_coeff,
    c11_coeff,
    compute_c1,
    compute_c2,
    cumulant_coeffs,
    error_exponent,
    predict_log_mgf,
)
from .errors import NonConvergenceError, ThresholdError, ValidationError
from .exact_mgf import (
    ExactMgfResult,
    log_mgf_exact,
    log_partition_asymptotic,
    log_partition_exact,
    mean_count_exact,
)
from .model import (
    OmegaWeights,
    ParameterSet,
    RadiiSchedule,
    check_h_positive,
    g_alpha,
    h_alpha,
    make_params,
    omega_weights,
)
from .quadrature import QuadResult, adaptive_quad, integrate_power_weighted
from .sampler import (
    EmpiricalMoments,
    MomentAccumulator,
    SampleCloud,
    SamplerSource,
    clt_normalized_counts,
    empirical_moments,
    sample_haar_truncation,
    sample_kostlan_moduli,
)
from .specfun import (
    IncBetaEval,
    Strategy,
    TemmeCoeffs,
    beta_fn,
    inc_beta_cf,
    inc_beta_exact_sum,
    inc_beta_temme,
    log_barnes_g,
    reg_inc_gamma_q,
    temme_coeffs,
)
from .studies import ConvergenceStudy, clt_report, convergence_study

__version__ = "0.1.0"
