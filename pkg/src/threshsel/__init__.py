"""Variable selection for linear regression by coefficient thresholding.

Fit an initial estimate (OLS, ridge, or adaptive ridge), walk the ladder of
its coefficient magnitudes as candidate thresholds, and pick the threshold
minimizing a penalized refit risk. Coefficients at or below the winner are
declared irrelevant and zeroed.
"""

from .data import (
    Dataset,
    InteractionMap,
    MissingColumnError,
    ParseError,
    StandardizationRecord,
    ZeroVarianceError,
    interaction_expand,
    load_csv,
    standardize,
    write_csv,
)
from .estimators import (
    AR_STABILITY_FLOOR,
    CoefficientVector,
    RankDeficientWarning,
    RestrictedFit,
    SingularSystemError,
    Support,
    fit_adaptive_ridge,
    fit_ols,
    fit_ridge,
    least_squares_on_support,
)
from .reports import write_outcomes_csv, write_report
from .simulation import (
    AggregateReport,
    BetaMinWarning,
    EstimatorConfig,
    NotPositiveDefiniteError,
    ReplicationOutcome,
    ScenarioSpec,
    derive_seed,
    equicorrelated_factor,
    generate_dataset,
    run_replication,
    run_scenario,
    scenario_s1,
    scenario_s2,
)
from .thresholding import (
    AllZeroError,
    PenaltySpec,
    ProfileEntry,
    RiskProfile,
    SelectionResult,
    ThresholdPath,
    build_empirical_path,
    dimension_penalty,
    metrics_fnr_tnr,
    min_thresholded_risk,
    penalty_value,
    risk_profile,
    select_threshold,
    support_at_threshold,
    t_threshold,
    tau_spline,
)

__version__ = "0.1.0"

__all__ = [
    "AR_STABILITY_FLOOR",
    "AggregateReport",
    "AllZeroError",
    "BetaMinWarning",
    "CoefficientVector",
    "Dataset",
    "EstimatorConfig",
    "InteractionMap",
    "MissingColumnError",
    "NotPositiveDefiniteError",
    "ParseError",
    "PenaltySpec",
    "ProfileEntry",
    "RankDeficientWarning",
    "ReplicationOutcome",
    "RestrictedFit",
    "RiskProfile",
    "ScenarioSpec",
    "SelectionResult",
    "SingularSystemError",
    "StandardizationRecord",
    "Support",
    "ThresholdPath",
    "ZeroVarianceError",
    "build_empirical_path",
    "derive_seed",
    "dimension_penalty",
    "equicorrelated_factor",
    "fit_adaptive_ridge",
    "fit_ols",
    "fit_ridge",
    "generate_dataset",
    "interaction_expand",
    "least_squares_on_support",
    "load_csv",
    "metrics_fnr_tnr",
    "min_thresholded_risk",
    "penalty_value",
    "risk_profile",
    "run_replication",
    "run_scenario",
    "scenario_s1",
    "scenario_s2",
    "select_threshold",
    "standardize",
    "support_at_threshold",
    "t_threshold",
    "tau_spline",
    "write_csv",
    "write_outcomes_csv",
    "write_report",
]
