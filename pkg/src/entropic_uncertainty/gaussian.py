"""Tsallis and Rényi entropies of Gaussian quadrature statistics.

States are the zero-mean minimum-uncertainty family ``dx * dy = 1``.  The
operational statistics come from a joint measurement that adds unit variance
to each quadrature, so the observed widths are ``sqrt(1 + dx**2)`` and
``sqrt(1 + dy**2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .roots import RootResult, bisect

SHANNON_WINDOW = 1e-9
CURVATURE_STEP = 1e-4
CRITICAL_BRACKET = (0.1, 6.0)


class SumMode(str, enum.Enum):
    INTRINSIC = "intrinsic"
    OPERATIONAL = "operational"


class SumForm(str, enum.Enum):
    # PRINTED keeps the order-dependent prefactor on the constant term;
    # INTEGRATED is the sum of the two single-quadrature entropies.
    PRINTED = "printed"
    INTEGRATED = "integrated"


@dataclass(frozen=True)
class GaussianPair:
    dx: float

    def __post_init__(self):
        if not (self.dx > 0 and math.isfinite(self.dx)):
            raise ValueError(f"dx must be positive and finite, got {self.dx}")

    @property
    def dy(self) -> float:
        return 1.0 / self.dx

    def widths(self, mode: SumMode | str = SumMode.INTRINSIC) -> tuple[float, float]:
        if SumMode(mode) is SumMode.INTRINSIC:
            return self.dx, self.dy
        return math.sqrt(1 + self.dx**2), math.sqrt(1 + self.dy**2)


def _check_order(q: float) -> None:
    if not (q > 0 and math.isfinite(q)):
        raise ValueError(f"entropic order q must be positive and finite, got {q}")


def _near_one(q: float) -> bool:
    return abs(q - 1.0) < SHANNON_WINDOW


def power_integral(width: float, q: float) -> float:
    """``int p(k)**q dk`` for a zero-mean normal density of standard deviation ``width``."""
    return (2 * math.pi) ** ((1 - q) / 2) * width ** (1 - q) / math.sqrt(q)


def gaussian_tsallis(width: float, q: float) -> float:
    _check_order(q)
    if _near_one(q):
        return 0.5 * math.log(2 * math.pi * math.e * width**2)
    log_integral = (1 - q) * (0.5 * math.log(2 * math.pi) + math.log(width)) - 0.5 * math.log(q)
    return math.expm1(log_integral) / (1 - q)


def _product_tsallis(area: float, q: float) -> float:
    # Tsallis entropy of a 2D product of normals with width product ``area``
    _check_order(q)
    if _near_one(q):
        return math.log(2 * math.pi * area) + 1
    return ((2 * math.pi * area) ** (1 - q) / q - 1) / (1 - q)


def _product_renyi(area: float, q: float) -> float:
    _check_order(q)
    log_q_term = 1.0 if _near_one(q) else -math.log(q) / (1 - q)
    return math.log(area) + math.log(2 * math.pi) + log_q_term


def gaussian_tsallis_product(pair: GaussianPair, q: float) -> float:
    return _product_tsallis(pair.dx * pair.dy, q)


def gaussian_renyi_product(pair: GaussianPair, q: float) -> float:
    return _product_renyi(pair.dx * pair.dy, q)


def gaussian_operational_joint_tsallis(pair: GaussianPair, q: float) -> float:
    wx, wy = pair.widths(SumMode.OPERATIONAL)
    return _product_tsallis(wx * wy, q)


def gaussian_operational_joint_renyi(pair: GaussianPair, q: float) -> float:
    wx, wy = pair.widths(SumMode.OPERATIONAL)
    return _product_renyi(wx * wy, q)


def gaussian_entropy_sum(
    pair: GaussianPair,
    q: float,
    mode: SumMode | str = SumMode.INTRINSIC,
    form: SumForm | str = SumForm.PRINTED,
) -> float:
    """Sum of the single-quadrature Tsallis entropies of X and Y.

    The ``printed`` form multiplies the whole bracket, including its constant
    ``-2``, by ``(2 pi)**((1-q)/2) / (sqrt(q) (1-q))``.  The ``integrated``
    form is the exact sum of the two entropies.  They differ by a constant in
    ``dx``, so extrema and curvature are shared.
    """
    _check_order(q)
    wx, wy = pair.widths(mode)
    p = 1 - q
    if SumForm(form) is SumForm.INTEGRATED:
        return gaussian_tsallis(wx, q) + gaussian_tsallis(wy, q)
    if _near_one(q):
        # bracket / (1 - q) -> ln(wx) + ln(wy)
        return math.log(wx) + math.log(wy)
    prefactor = (2 * math.pi) ** (p / 2) / (math.sqrt(q) * p)
    # wx**p + wy**p - 2 without cancellation near q = 1
    bracket = math.expm1(p * math.log(wx)) + math.expm1(p * math.log(wy))
    return prefactor * bracket


def entropy_sum_curvature(
    q: float,
    mode: SumMode | str,
    form: SumForm | str = SumForm.PRINTED,
    h: float = CURVATURE_STEP,
) -> float:
    """Central second difference of the entropy sum in ``dx`` at the coherent point ``dx = 1``."""

    def f(dx: float) -> float:
        return gaussian_entropy_sum(GaussianPair(dx), q, mode, form)

    return (f(1 + h) - 2 * f(1.0) + f(1 - h)) / h**2


def gaussian_critical_q(
    mode: SumMode | str,
    bracket: tuple[float, float] = CRITICAL_BRACKET,
    form: SumForm | str = SumForm.PRINTED,
) -> RootResult:
    """Order at which ``dx = 1`` switches between minimum and maximum of the entropy sum."""
    return bisect(lambda q: entropy_sum_curvature(q, mode, form), *bracket)
