"""Scans over state angle and entropic order, and the critical orders they reveal.

The central quantity is the competition value: the entropy at the
intermediate state ``theta = pi/4`` minus the entropy at the extreme state
``theta = 0``.  A positive value means the extreme states carry less
uncertainty; a negative one favours the intermediate states.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import (
    Family,
    entropy,
    generalized_fisher,
    mutual_information,
    normalize_curve,
)
from .measurement import (
    BALANCED_DELTA,
    MeasurementSetup,
    joint_statistics,
    operational_product,
)
from .roots import RootResult, bisect
from .state import BlochState, intrinsic_product

TIE_TOL = 1e-12
DEFAULT_STEPS = 1000
FISHER_MARGIN = 0.01
ROLE_RTOL = 1e-12
EXTREME_THETA = 0.0
INTERMEDIATE_THETA = math.pi / 4


class Target(str, enum.Enum):
    JOINT = "joint"
    PRODUCT_OPERATIONAL = "product-operational"
    PRODUCT_INTRINSIC = "product-intrinsic"


class Winner(str, enum.Enum):
    EXTREME_MIN = "extreme-min"
    INTERMEDIATE_MIN = "intermediate-min"
    TIE = "tie"


def target_distribution(state: BlochState, setup: MeasurementSetup, target: Target | str) -> np.ndarray:
    target = Target(target)
    if target is Target.JOINT:
        return joint_statistics(state, setup).probs
    if target is Target.PRODUCT_OPERATIONAL:
        return operational_product(state, setup).probs
    return intrinsic_product(state).probs


@dataclass(frozen=True)
class ScanConfig:
    q: float
    family: Family = Family.TSALLIS
    target: Target = Target.JOINT
    delta: float = BALANCED_DELTA
    theta_min: float = 0.0
    theta_max: float = math.pi / 2
    theta_steps: int = DEFAULT_STEPS
    normalize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "target", Target(self.target))
        if self.theta_steps < 2:
            raise ValueError(f"theta_steps must be at least 2, got {self.theta_steps}")
        if not 0.0 <= self.theta_min < self.theta_max <= 2 * math.pi:
            raise ValueError(
                f"theta range must satisfy 0 <= min < max <= 2*pi, got "
                f"[{self.theta_min}, {self.theta_max}]"
            )
        MeasurementSetup(self.delta)

    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.theta_steps)


def _parabolic_vertex(x: np.ndarray, y: np.ndarray, i: int) -> float:
    if i == 0 or i == len(x) - 1:
        return float(x[i])
    x0, x1, x2 = x[i - 1 : i + 2]
    y0, y1, y2 = y[i - 1 : i + 2]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denom
    if a == 0:
        return float(x1)
    return float(-b / (2 * a))


@dataclass(frozen=True)
class Curve:
    x: np.ndarray
    values: np.ndarray
    constant: bool = False
    label: str = field(default="theta")

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.values.tolist()))

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.values))

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.values))

    def refined_min(self) -> float:
        """Location of the minimum, sharpened by a three-point parabola around the grid argmin."""
        return _parabolic_vertex(self.x, self.values, self.argmin)

    def refined_max(self) -> float:
        return _parabolic_vertex(self.x, self.values, self.argmax)


def entropy_curve(config: ScanConfig) -> Curve:
    setup = MeasurementSetup(config.delta)
    thetas = config.thetas()
    values = np.array(
        [
            entropy(target_distribution(BlochState(t), setup, config.target), config.family, config.q)
            for t in thetas
        ]
    )
    if not config.normalize:
        return Curve(thetas, values)
    norm = normalize_curve(values)
    return Curve(thetas, norm.values, constant=norm.constant)


@dataclass(frozen=True)
class CompetitionResult:
    q: float
    delta_T: float
    winner: Winner


def competition_value(
    q: float,
    delta: float = BALANCED_DELTA,
    family: Family | str = Family.TSALLIS,
    target: Target | str = Target.JOINT,
) -> float:
    setup = MeasurementSetup(delta)
    inter = target_distribution(BlochState(INTERMEDIATE_THETA), setup, target)
    extreme = target_distribution(BlochState(EXTREME_THETA), setup, target)
    return entropy(inter, family, q) - entropy(extreme, family, q)


def competition(
    q: float,
    delta: float = BALANCED_DELTA,
    family: Family | str = Family.TSALLIS,
    target: Target | str = Target.JOINT,
    tol: float = TIE_TOL,
) -> CompetitionResult:
    value = competition_value(q, delta, family, target)
    if value > tol:
        winner = Winner.EXTREME_MIN
    elif value < -tol:
        winner = Winner.INTERMEDIATE_MIN
    else:
        winner = Winner.TIE
    return CompetitionResult(q, value, winner)


def critical_q(
    delta: float = BALANCED_DELTA,
    family: Family | str = Family.TSALLIS,
    target: Target | str = Target.PRODUCT_INTRINSIC,
    bracket: tuple[float, float] = (1.0, 2.0),
) -> RootResult:
    """Order at which the competition value changes sign inside ``bracket``."""
    return bisect(lambda q: competition_value(q, delta, family, target), *bracket)


def entropy_difference(
    state: BlochState,
    setup: MeasurementSetup,
    family: Family | str,
    q: float,
) -> float:
    """Entropy of the product of operational marginals minus entropy of the joint statistics."""
    prod = operational_product(state, setup).probs
    joint = joint_statistics(state, setup).probs
    return entropy(prod, family, q) - entropy(joint, family, q)


def difference_critical_q(
    delta: float = BALANCED_DELTA,
    family: Family | str = Family.TSALLIS,
    bracket: tuple[float, float] = (1.1, 3.0),
) -> RootResult:
    """Order above which the joint statistics look more uncertain than the product, at ``theta = pi/4``."""
    state = BlochState(INTERMEDIATE_THETA)
    setup = MeasurementSetup(delta)
    return bisect(lambda q: entropy_difference(state, setup, family, q), *bracket)


def mutual_information_curve(
    q: float,
    family: Family | str = Family.TSALLIS,
    delta: float = BALANCED_DELTA,
    thetas=None,
) -> Curve:
    setup = MeasurementSetup(delta)
    if thetas is None:
        thetas = np.linspace(0.0, math.pi / 2, DEFAULT_STEPS)
    thetas = np.asarray(thetas, dtype=float)
    values = np.array(
        [mutual_information(joint_statistics(BlochState(t), setup), family, q) for t in thetas]
    )
    return Curve(thetas, values)


def fisher_grid(steps: int = DEFAULT_STEPS + 1, margin: float = FISHER_MARGIN) -> np.ndarray:
    return np.linspace(margin, math.pi / 2 - margin, steps)


class ThetaRole(str, enum.Enum):
    MAXIMUM = "max"
    MINIMUM = "min"
    CONSTANT = "constant"
    NEITHER = "neither"


@dataclass(frozen=True)
class FisherCurve(Curve):
    role: ThetaRole = ThetaRole.NEITHER


def fisher_curve(q: float, thetas=None, probe_theta: float = INTERMEDIATE_THETA) -> FisherCurve:
    """q-order Fisher information over ``thetas`` and the role ``probe_theta`` plays in it.

    The role is ``max`` or ``min`` when the value at ``probe_theta`` bounds the
    whole grid to a relative ``ROLE_RTOL``, ``constant`` when the curve is flat
    to 1e-14, else ``neither``.
    """
    thetas = fisher_grid() if thetas is None else np.asarray(thetas, dtype=float)
    values = np.array([generalized_fisher(t, q) for t in thetas])
    constant = normalize_curve(values).constant
    probe = generalized_fisher(probe_theta, q)
    slack = ROLE_RTOL * abs(probe)
    if constant:
        role = ThetaRole.CONSTANT
    elif probe >= values.max() - slack:
        role = ThetaRole.MAXIMUM
    elif probe <= values.min() + slack:
        role = ThetaRole.MINIMUM
    else:
        role = ThetaRole.NEITHER
    return FisherCurve(thetas, values, constant=constant, role=role)
