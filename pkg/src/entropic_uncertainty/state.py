"""Qubit states in the xz plane of the Bloch sphere and their sharp statistics.

Outcome ordering is fixed throughout the package: ``+1`` maps to index 0 and
``-1`` to index 1.  Two-observable products are laid out row-major in
``(x, z)``, i.e. ``(+,+), (+,-), (-,+), (-,-)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

PROB_TOL = 1e-12
ANGLE_TOL = 1e-9

OUTCOMES = (1, -1)


class Observable(str, enum.Enum):
    X = "x"
    Z = "z"


class StateKind(str, enum.Enum):
    EXTREME = "extreme"
    INTERMEDIATE = "intermediate"
    GENERIC = "generic"


class InvalidDistributionError(ValueError):
    pass


@dataclass(frozen=True)
class BlochState:
    """Qubit state with Bloch vector ``s * (sin theta, 0, cos theta)``."""

    theta: float
    s: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta}")
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"Bloch vector length must lie in [0, 1], got {self.s}")

    @property
    def sx(self) -> float:
        return self.s * math.sin(self.theta)

    @property
    def sz(self) -> float:
        return self.s * math.cos(self.theta)

    @property
    def is_pure(self) -> bool:
        return self.s == 1.0

    def component(self, observable: Observable | str) -> float:
        return self.sx if Observable(observable) is Observable.X else self.sz

    def amplitudes(self) -> np.ndarray:
        """Pure-state amplitudes on the sigma_z eigenbasis ``(|+>, |->)``."""
        if not self.is_pure:
            raise ValueError("amplitudes are only defined for pure states (s = 1)")
        return np.array([math.cos(self.theta / 2), math.sin(self.theta / 2)])


@dataclass(frozen=True)
class Distribution:
    """Validated probability vector; entry ``j`` is the probability of outcome ``j``."""

    probs: np.ndarray = field(repr=True)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).reshape(-1)
        if p.size == 0:
            raise InvalidDistributionError("empty distribution")
        if np.any(p < -PROB_TOL) or np.any(p > 1 + PROB_TOL):
            raise InvalidDistributionError(f"entries outside [0, 1]: {p}")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise InvalidDistributionError(f"entries sum to {p.sum()!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def __array__(self, dtype=None, copy=None):
        return self.probs if dtype is None else self.probs.astype(dtype)

    def __len__(self):
        return self.probs.size

    def __getitem__(self, i):
        return self.probs[i]


def intrinsic_statistics(state: BlochState, observable: Observable | str) -> Distribution:
    """Born-rule statistics of sigma_x or sigma_z, ordered ``(+1, -1)``."""
    c = state.component(observable)
    return Distribution(np.array([0.5 * (1 + c), 0.5 * (1 - c)]))


def intrinsic_product(state: BlochState) -> Distribution:
    """Product ``p_x * p_z`` of the two sharp statistics, row-major in ``(x, z)``."""
    px = intrinsic_statistics(state, Observable.X).probs
    pz = intrinsic_statistics(state, Observable.Z).probs
    return Distribution(np.outer(px, pz).reshape(-1))


def _nearest_multiple_offset(theta: float, period: float, offset: float = 0.0) -> float:
    r = (theta - offset) / period
    return abs(r - round(r)) * period


def classify_state(theta: float, tol: float = ANGLE_TOL) -> StateKind:
    """Extreme for ``theta = m*pi/2``, intermediate for ``theta = (2m+1)*pi/4``."""
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta}")
    if _nearest_multiple_offset(theta, math.pi / 2) <= tol:
        return StateKind.EXTREME
    if _nearest_multiple_offset(theta, math.pi / 2, math.pi / 4) <= tol:
        return StateKind.INTERMEDIATE
    return StateKind.GENERIC


@dataclass(frozen=True)
class StateFamily:
    kind: StateKind
    thetas: tuple[float, ...]

    def __post_init__(self):
        if self.kind is StateKind.GENERIC:
            raise ValueError("a state family is either extreme or intermediate")
        for t in self.thetas:
            if classify_state(t) is not self.kind:
                raise ValueError(f"theta={t} is not a {self.kind.value} state")

    def states(self) -> list[BlochState]:
        return [BlochState(t) for t in self.thetas]


EXTREME = StateFamily(StateKind.EXTREME, tuple(m * math.pi / 2 for m in range(4)))
INTERMEDIATE = StateFamily(
    StateKind.INTERMEDIATE, tuple((2 * m + 1) * math.pi / 4 for m in range(4))
)
