"""Tsallis and Rényi entropies, their mutual informations, and q-order Fisher information.

All functions take plain array-likes as well as the distribution types of
this package.  Zero-probability outcomes contribute nothing (``0**q = 0``,
``0 ln 0 = 0``), and orders within ``SHANNON_WINDOW`` of 1 are evaluated with
the Shannon limit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

SHANNON_WINDOW = 1e-9
CONSTANT_TOL = 1e-14


class Family(str, enum.Enum):
    TSALLIS = "tsallis"
    RENYI = "renyi"
    SHANNON = "shannon"


def _check_order(q: float) -> None:
    if not q > 0 or not math.isfinite(q):
        raise ValueError(f"entropic order q must be positive and finite, got {q}")


def _is_shannon(q: float) -> bool:
    return abs(q - 1.0) < SHANNON_WINDOW


def _support(dist) -> np.ndarray:
    p = np.asarray(dist, dtype=float).reshape(-1)
    return p[p > 0]


def power_sum(dist, q: float) -> float:
    """``sum_j p_j**q`` over the support of ``dist``."""
    _check_order(q)
    return float(np.sum(_support(dist) ** q))


def shannon(dist) -> float:
    p = _support(dist)
    return float(-np.sum(p * np.log(p)))


def tsallis(dist, q: float) -> float:
    _check_order(q)
    if _is_shannon(q):
        return shannon(dist)
    return (power_sum(dist, q) - 1.0) / (1.0 - q)


def renyi(dist, q: float) -> float:
    _check_order(q)
    if _is_shannon(q):
        return shannon(dist)
    return math.log(power_sum(dist, q)) / (1.0 - q)


def tsallis_from_renyi(value: float, q: float) -> float:
    if _is_shannon(q):
        return value
    return math.expm1((1.0 - q) * value) / (1.0 - q)


def renyi_from_tsallis(value: float, q: float) -> float:
    if _is_shannon(q):
        return value
    return math.log1p((1.0 - q) * value) / (1.0 - q)


def tsallis_pseudo_additive(tx: float, tz: float, q: float) -> float:
    """Tsallis entropy of a product distribution from the entropies of its factors."""
    _check_order(q)
    if _is_shannon(q):
        return tx + tz
    return tx + tz + (1.0 - q) * tx * tz


@dataclass(frozen=True)
class EntropyMeasure:
    family: Family
    q: float

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        _check_order(self.q)
        if self.family is Family.SHANNON and not _is_shannon(self.q):
            raise ValueError(f"the Shannon family has q = 1, got {self.q}")

    @classmethod
    def shannon(cls) -> "EntropyMeasure":
        return cls(Family.SHANNON, 1.0)

    def __call__(self, dist) -> float:
        return entropy(dist, self.family, self.q)


def entropy(dist, family: Family | str, q: float) -> float:
    family = Family(family)
    if family is Family.SHANNON:
        return shannon(dist)
    if family is Family.TSALLIS:
        return tsallis(dist, q)
    return renyi(dist, q)


@dataclass(frozen=True)
class NormalizedCurve:
    values: np.ndarray
    constant: bool
    vmin: float
    vmax: float


def normalize_curve(values) -> NormalizedCurve:
    """Rescale affinely onto ``[0, 1]``; a flat input is flagged and mapped to zeros."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot normalize an empty curve")
    vmin, vmax = float(v.min()), float(v.max())
    span = vmax - vmin
    if span < CONSTANT_TOL:
        return NormalizedCurve(np.zeros_like(v), True, vmin, vmax)
    return NormalizedCurve((v - vmin) / span, False, vmin, vmax)


def _joint_grid(joint) -> np.ndarray:
    g = np.asarray(joint, dtype=float)
    if g.ndim == 1:
        n = int(round(math.sqrt(g.size)))
        if n * n != g.size:
            raise ValueError("a flat joint distribution must have a square number of entries")
        g = g.reshape(n, n)
    return g


def mutual_information(joint, family: Family | str, q: float) -> float:
    """Tsallis or Rényi mutual information of a two-variable joint distribution.

    Both share the bracket ``sum p**q / (p_x p_z)**(q-1)``; Tsallis takes
    ``(bracket - 1)/(q - 1)`` and Rényi ``ln(bracket)/(q - 1)``.  Marginals are
    computed from ``joint`` itself.
    """
    _check_order(q)
    family = Family(family)
    g = _joint_grid(joint)
    px = g.sum(axis=1)
    pz = g.sum(axis=0)
    prod = np.outer(px, pz)
    mask = g > 0
    p, r = g[mask], prod[mask]
    if family is Family.SHANNON or _is_shannon(q):
        return float(np.sum(p * np.log(p / r)))
    bracket = float(np.sum(p**q * r ** (1.0 - q)))
    if family is Family.TSALLIS:
        return (bracket - 1.0) / (q - 1.0)
    return math.log(bracket) / (q - 1.0)


@dataclass(frozen=True)
class FisherProbe:
    """Two-outcome sigma_z readout after a small sigma_y rotation by ``eta``."""

    theta: float

    def probabilities(self, eta: float = 0.0) -> np.ndarray:
        a = eta - self.theta / 2
        return np.array([math.cos(a) ** 2, math.sin(a) ** 2])

    def log_derivatives(self) -> np.ndarray:
        """``|d ln p_j / d eta|`` at ``eta = 0``."""
        t = abs(math.tan(self.theta / 2))
        cot = math.inf if t == 0.0 else 1.0 / t
        return np.array([2 * t, 2 * cot])


def _fisher_sum(theta: float, q: float) -> float:
    _check_order(q)
    probe = FisherProbe(theta)
    p = probe.probabilities()
    if min(p) < 1e-15:
        if q == 0.5:
            # limit of sum_j (dp_j/deta)^2 / p_j as a readout probability vanishes
            return 4.0
        raise ValueError(
            f"q-order Fisher information is undefined at theta={theta} "
            f"(a readout probability vanishes) for q={q}"
        )
    return float(np.sum(p * probe.log_derivatives() ** (1.0 / q)))


def generalized_fisher(theta: float, q: float) -> float:
    """q-order Fisher information ``F_q = sum_j p_j |d ln p_j/d eta|**(1/q)``.

    ``q = 1/2`` is the ordinary Fisher information, equal to 4 for every
    pure state of the family.
    """
    return _fisher_sum(theta, q)


def generalized_fisher_power(theta: float, q: float) -> float:
    """``F_q**q``, the bracketed sum raised to the order."""
    return _fisher_sum(theta, q) ** q
