"""Simultaneous unsharp measurement of sigma_x and sigma_z on a qubit.

The system couples to a two-level apparatus so that the sigma_z eigenstates
leave the apparatus in the non-orthogonal states ``|a_+>``, ``|a_->`` with
overlap ``cos(delta)``.  sigma_x is then read directly on the system and the
apparatus is projected on the orthonormal pair ``|b_+>``, ``|b_->``.

``delta = 0`` gives a sharp sigma_x reading, ``delta = pi/2`` a sharp
sigma_z reading, and ``delta = pi/4`` balances the noise between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .state import (
    PROB_TOL,
    BlochState,
    Distribution,
    InvalidDistributionError,
    Observable,
)

BALANCED_DELTA = math.pi / 4
SINGULAR_TOL = 1e-12


class SingularMeasurementError(ValueError):
    """Raised where a closed-form expression of the scheme has a vanishing denominator."""


@dataclass(frozen=True)
class MeasurementSetup:
    delta: float = BALANCED_DELTA

    def __post_init__(self):
        if not 0.0 <= self.delta <= math.pi / 2:
            raise ValueError(f"delta must lie in [0, pi/2], got {self.delta}")

    @property
    def phi(self) -> float:
        """Rotation angle between the ``|b>`` and ``|a>`` pairs, ``pi/2 - delta``."""
        return math.pi / 2 - self.delta


def _as_grid(values) -> np.ndarray:
    g = np.array(values, dtype=float)
    if g.size != 4:
        raise InvalidDistributionError(f"expected 4 entries for a 2x2 grid, got {g.size}")
    return g.reshape(2, 2)


@dataclass(frozen=True)
class QuasiDistribution:
    """Normalized 2x2 grid indexed ``[x, z]``; entries may be negative."""

    values: np.ndarray

    def __post_init__(self):
        g = _as_grid(self.values)
        if abs(g.sum() - 1.0) > PROB_TOL:
            raise InvalidDistributionError(f"entries sum to {g.sum()!r}, not 1")
        g.setflags(write=False)
        object.__setattr__(self, "values", g)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def entry(self, x: int, z: int) -> float:
        return float(self.values[_index(x), _index(z)])

    def marginal(self, observable: Observable | str) -> np.ndarray:
        axis = 1 if Observable(observable) is Observable.X else 0
        return self.values.sum(axis=axis)

    @property
    def min_entry(self) -> float:
        return float(self.values.min())


@dataclass(frozen=True)
class JointDistribution(QuasiDistribution):
    """Operational joint statistics: a QuasiDistribution with nonnegative entries."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(self.values < -PROB_TOL):
            raise InvalidDistributionError(f"negative joint probability: {self.values}")

    @property
    def probs(self) -> np.ndarray:
        return self.values.reshape(-1)

    def marginal_distribution(self, observable: Observable | str) -> Distribution:
        return Distribution(self.marginal(observable))


@dataclass(frozen=True)
class NoiseMatrix:
    """Column-stochastic map from sharp to observed two-outcome statistics."""

    m: np.ndarray = field(repr=True)

    def __post_init__(self):
        m = np.array(self.m, dtype=float).reshape(2, 2)
        if np.any(m < -PROB_TOL) or np.any(m > 1 + PROB_TOL):
            raise ValueError(f"noise matrix entries outside [0, 1]: {m}")
        if np.any(np.abs(m.sum(axis=0) - 1.0) > PROB_TOL):
            raise ValueError(f"noise matrix columns do not sum to 1: {m}")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    def __array__(self, dtype=None, copy=None):
        return self.m if dtype is None else self.m.astype(dtype)

    @property
    def is_singular(self) -> bool:
        return abs(np.linalg.det(self.m)) < SINGULAR_TOL

    def inverse(self) -> np.ndarray:
        if self.is_singular:
            raise SingularMeasurementError(
                f"noise matrix is singular (det={np.linalg.det(self.m):.3e})"
            )
        return np.linalg.inv(self.m)


def _index(outcome: int) -> int:
    if outcome == 1:
        return 0
    if outcome == -1:
        return 1
    raise ValueError(f"outcome must be +1 or -1, got {outcome}")


_SIGNS = np.array([1.0, -1.0])


def joint_statistics(state: BlochState, setup: MeasurementSetup) -> JointDistribution:
    xs = _SIGNS[:, None]
    zs = _SIGNS[None, :]
    d = setup.delta
    p = 0.25 * (1 + zs * state.sz * math.sin(d) + xs * state.sx * math.cos(d))
    return JointDistribution(p)


def marginal_statistics(
    state: BlochState, setup: MeasurementSetup, observable: Observable | str
) -> Distribution:
    if Observable(observable) is Observable.X:
        c = state.sx * math.cos(setup.delta)
    else:
        c = state.sz * math.sin(setup.delta)
    return Distribution(np.array([0.5 * (1 + c), 0.5 * (1 - c)]))


def operational_product(state: BlochState, setup: MeasurementSetup) -> JointDistribution:
    px = marginal_statistics(state, setup, Observable.X).probs
    pz = marginal_statistics(state, setup, Observable.Z).probs
    return JointDistribution(np.outer(px, pz))


def correlation_defect(state: BlochState, setup: MeasurementSetup):
    """Return ``f(x, z)`` giving joint minus product-of-marginals in closed form."""
    amplitude = (
        -state.s**2 * math.sin(2 * state.theta) * math.sin(2 * setup.delta) / 16
    )

    def defect(x: int, z: int) -> float:
        _index(x)
        _index(z)
        return x * z * amplitude

    return defect


def apparatus_states(delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Real apparatus vectors ``|a_+>``, ``|a_->`` with overlap ``cos(delta)``."""
    c, s = math.cos(delta / 2), math.sin(delta / 2)
    return np.array([c, s]), np.array([c, -s])


def readout_states(delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal apparatus readout pair ``|b_+>``, ``|b_->`` for a given overlap angle."""
    phi = math.pi / 2 - delta
    norm = math.cos(phi)
    if abs(norm) < SINGULAR_TOL:
        raise SingularMeasurementError(
            "readout basis is undefined at delta = 0 (normalization 1/sin(delta) diverges)"
        )
    a_plus, a_minus = apparatus_states(delta)
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    b_plus = (c * a_plus - s * a_minus) / norm
    b_minus = (-s * a_plus + c * a_minus) / norm
    return b_plus, b_minus


def simulate_coupling(state: BlochState, setup: MeasurementSetup) -> JointDistribution:
    """Born-rule joint statistics from an explicit system-apparatus state vector.

    Builds ``cos(theta/2)|+>|a_+> + sin(theta/2)|->|a_->`` in the 4-dimensional
    product space, then projects on ``|x> (x) |b_z>`` with ``|x>`` the
    sigma_x eigenstates.  Independent of the closed form in
    :func:`joint_statistics`, against which it is checked.
    """
    if not state.is_pure:
        raise ValueError("the coupling simulation requires a pure state (s = 1)")
    a_plus, a_minus = apparatus_states(setup.delta)
    b_plus, b_minus = readout_states(setup.delta)
    up, down = np.eye(2)
    c, s = state.amplitudes()
    psi = c * np.kron(up, a_plus) + s * np.kron(down, a_minus)

    x_basis = (np.array([1.0, 1.0]) / math.sqrt(2), np.array([1.0, -1.0]) / math.sqrt(2))
    b_basis = (b_plus, b_minus)
    probs = np.empty((2, 2))
    for i, xv in enumerate(x_basis):
        for j, bv in enumerate(b_basis):
            probs[i, j] = abs(np.kron(xv, bv) @ psi) ** 2
    return JointDistribution(probs)


def apparatus_cost(varphi: float, delta: float) -> float:
    """Squared Hilbert-Schmidt distance ``tr[(M - I)^2]`` of the sigma_z noise map."""
    return (math.sin(varphi) ** 2 + math.cos(varphi + delta) ** 2) ** 2


def apparatus_matrix(varphi: float, delta: float) -> NoiseMatrix:
    return NoiseMatrix(
        [
            [math.cos(varphi) ** 2, math.cos(varphi + delta) ** 2],
            [math.sin(varphi) ** 2, math.sin(varphi + delta) ** 2],
        ]
    )


def _cost_slope(varphi: float, delta: float) -> float:
    # d/dvarphi of the cost, up to the positive factor 2*sqrt(cost)
    return math.sin(2 * varphi) - math.sin(2 * varphi + 2 * delta)


def optimize_apparatus(delta: float, tol: float = 1e-15, max_iter: int = 200) -> float:
    """Readout angle in ``[0, pi/2]`` minimizing :func:`apparatus_cost`.

    The cost is unimodal on the interval, so its stationary point is bracketed
    by the endpoints and located by bisection on the analytic slope; a
    value-based search would stall at ``sqrt(eps)`` precision because the cost
    is flat to second order at its minimum.  At ``delta = 0`` the cost is
    constant and the interval midpoint ``pi/4`` is returned.
    """
    if not 0.0 <= delta <= math.pi / 2:
        raise ValueError(f"delta must lie in [0, pi/2], got {delta}")
    if math.sin(delta) == 0.0:
        return math.pi / 4
    lo, hi = 0.0, math.pi / 2
    f_lo = _cost_slope(lo, delta)
    if f_lo >= 0.0:
        return lo
    if _cost_slope(hi, delta) <= 0.0:
        return hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = _cost_slope(mid, delta)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def noise_angle(observable: Observable | str, delta: float) -> float:
    if Observable(observable) is Observable.X:
        return delta / 2
    return math.pi / 4 - delta / 2


def noise_matrix(observable: Observable | str, delta: float) -> NoiseMatrix:
    a = noise_angle(observable, delta)
    c2, s2 = math.cos(a) ** 2, math.sin(a) ** 2
    return NoiseMatrix([[c2, s2], [s2, c2]])


def invert_noise(joint: QuasiDistribution, delta: float) -> QuasiDistribution:
    """Undo the measurement noise: ``M_x^-1 P M_z^-T`` for a 2x2 joint grid ``P``."""
    mx_inv = noise_matrix(Observable.X, delta).inverse()
    mz_inv = noise_matrix(Observable.Z, delta).inverse()
    return QuasiDistribution(mx_inv @ np.asarray(joint) @ mz_inv.T)


def infer_true_joint(state: BlochState, setup: MeasurementSetup | None = None) -> QuasiDistribution:
    """Noise-free joint quasi-distribution ``(1 + z s_z + x s_x) / 4``.

    The result does not depend on the measurement setup; ``setup`` is accepted
    so callers can pair it with :func:`invert_noise` on the same arguments.
    """
    xs = _SIGNS[:, None]
    zs = _SIGNS[None, :]
    return QuasiDistribution(0.25 * (1 + zs * state.sz + xs * state.sx))


def is_nonclassical(state: BlochState, tol: float = PROB_TOL) -> bool:
    return infer_true_joint(state).min_entry < -tol
