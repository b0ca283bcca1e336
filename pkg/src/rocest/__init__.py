"""Optimal-ROC curve estimation from likelihood-ratio samples."""

__version__ = "0.1.0"

from .core import (
    DiscreteDistribution,
    DomainError,
    ConsistencyError,
    MonotoneCurve,
    PairReport,
    as_ratio,
    extended_cdf_eval,
    f0_from_f1,
    f0_from_roc,
    f1_from_f0,
    roc_from_pair,
    validate_pair,
)
from .estimators import (
    LabeledSample,
    MlFit,
    concavify,
    empirical_cdfs,
    empirical_roc,
    log_likelihood,
    ml_fit,
    phi_n,
    solve_lambda,
)
from .metrics import (
    LevyBandCheck,
    dkw_roc_bound,
    lemma1_bound,
    levy_band_check,
    levy_distance,
    uniform_distance,
)
from .area import auc_ml_formula, auc_of_curve, pair_term, true_auc
from .scenarios import (
    BinormalScenario,
    ExperimentConfig,
    ExperimentReport,
    binormal_roc_value,
    binormal_sample,
    binormal_true_roc,
    mixture_sample_set,
    normal_cdf,
    normal_quantile,
    random_discrete_bht,
    run_experiment,
)

__all__ = [name for name in dir() if not name.startswith("_")]
