"""Information-purity tradeoffs for quantum ensembles and measurements.

Closed-form tradeoff curves (minimum informational power under a purity
floor, maximum accessible information under a purity cap), the entropy
and subentropy functionals behind them, exact bounds, and numerical
optimizers plus Monte Carlo estimators that verify the closed forms
independently.
"""

from .entropy import (
    ConfluentNodeSet,
    mutual_information,
    relative_entropy,
    renyi_entropy,
    shannon_entropy,
    subentropy,
    subentropy_depolarized,
    subentropy_depolarized_derivative_form,
    von_neumann_entropy,
)
from .errors import (
    AlphaOutOfRangeError,
    CountTooSmallError,
    DimensionMismatchError,
    DimensionTooLargeError,
    EpsilonOutOfRangeError,
    InfopurityError,
    InvalidKError,
    NoConvergenceError,
    NoFeasibleCandidateError,
    NonHermitianError,
    NotNormalizedError,
    PurityOutOfRangeError,
    ValidationError,
    ZeroTraceError,
)
from .infomeasures import (
    DualityReport,
    InfoResult,
    OptimizerConfig,
    accessible_info_opt,
    distorted_ensemble,
    duality_check,
    holevo_upper,
    informational_power_opt,
    jrw_lower,
    symmetric_upper_bound,
)
from .montecarlo import (
    HaarSampler,
    McEstimate,
    TightnessReport,
    depolarized_haar_ensemble,
    jrw_tightness_probe,
    mc_min_power_estimate,
)
from .operators import (
    DensityOperator,
    Ensemble,
    HermitianOperator,
    JointDistribution,
    Povm,
    Spectrum,
    born_joint,
    depolarize,
    eig_hermitian,
    elementary_symmetric2,
    pure_state_density,
    purity,
)
from .tradeoff import (
    ExtremalSpectrumSolution,
    SubentropyMaxSolution,
    TradeoffPoint,
    depolarized_scrooge_povm,
    epsilon_for_purity,
    extremal_renyi_at_purity,
    harmonic_tail,
    max_accessible_information,
    max_subentropy_at_purity,
    min_informational_power,
    min_power_haar_integral,
    optimal_commuting_ensemble,
    purity_for_epsilon,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaOutOfRangeError",
    "ConfluentNodeSet",
    "CountTooSmallError",
    "DensityOperator",
    "DimensionMismatchError",
    "DimensionTooLargeError",
    "DualityReport",
    "Ensemble",
    "EpsilonOutOfRangeError",
    "ExtremalSpectrumSolution",
    "HaarSampler",
    "HermitianOperator",
    "InfoResult",
    "InfopurityError",
    "InvalidKError",
    "JointDistribution",
    "McEstimate",
    "NoConvergenceError",
    "NoFeasibleCandidateError",
    "NonHermitianError",
    "NotNormalizedError",
    "OptimizerConfig",
    "Povm",
    "PurityOutOfRangeError",
    "Spectrum",
    "SubentropyMaxSolution",
    "TightnessReport",
    "TradeoffPoint",
    "ValidationError",
    "ZeroTraceError",
    "accessible_info_opt",
    "born_joint",
    "depolarize",
    "depolarized_haar_ensemble",
    "depolarized_scrooge_povm",
    "distorted_ensemble",
    "duality_check",
    "eig_hermitian",
    "elementary_symmetric2",
    "epsilon_for_purity",
    "extremal_renyi_at_purity",
    "harmonic_tail",
    "holevo_upper",
    "informational_power_opt",
    "jrw_lower",
    "jrw_tightness_probe",
    "max_accessible_information",
    "max_subentropy_at_purity",
    "mc_min_power_estimate",
    "min_informational_power",
    "min_power_haar_integral",
    "mutual_information",
    "optimal_commuting_ensemble",
    "pure_state_density",
    "purity",
    "purity_for_epsilon",
    "relative_entropy",
    "renyi_entropy",
    "shannon_entropy",
    "subentropy",
    "subentropy_depolarized",
    "subentropy_depolarized_derivative_form",
    "symmetric_upper_bound",
    "von_neumann_entropy",
]
