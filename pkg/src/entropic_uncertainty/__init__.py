"""Entropic joint-uncertainty measures for complementary qubit observables."""

__version__ = "0.1.0"

from .analysis import (
    CompetitionResult,
    Curve,
    ScanConfig,
    Target,
    Winner,
    competition,
    critical_q,
    difference_critical_q,
    entropy_curve,
    entropy_difference,
    fisher_curve,
)
from .entropy import (
    EntropyMeasure,
    Family,
    generalized_fisher,
    mutual_information,
    normalize_curve,
    renyi,
    shannon,
    tsallis,
    tsallis_pseudo_additive,
)
from .gaussian import GaussianPair, SumMode, gaussian_critical_q, gaussian_entropy_sum
from .measurement import (
    JointDistribution,
    MeasurementSetup,
    QuasiDistribution,
    infer_true_joint,
    is_nonclassical,
    joint_statistics,
    marginal_statistics,
    operational_product,
    simulate_coupling,
)
from .state import BlochState, Distribution, Observable, classify_state, intrinsic_product, intrinsic_statistics
