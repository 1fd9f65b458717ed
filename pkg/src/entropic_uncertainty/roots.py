"""Bracketed bisection with a reportable trace."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

XTOL = 1e-10
MAX_ITER = 200


class NoSignChangeError(ValueError):
    def __init__(self, lo: float, hi: float, f_lo: float, f_hi: float):
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi
        super().__init__(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}"
        )


@dataclass(frozen=True)
class RootResult:
    root: float
    bracket: tuple[float, float]
    iterations: int
    residual: float

    def as_dict(self) -> dict:
        return {
            "root": self.root,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "residual": self.residual,
        }


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = XTOL,
    max_iter: int = MAX_ITER,
) -> RootResult:
    """Root of ``f`` on ``[lo, hi]``, halving until the bracket is narrower than ``xtol``."""
    if not lo < hi:
        raise ValueError(f"invalid bracket [{lo}, {hi}]")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return RootResult(lo, (lo, hi), 0, 0.0)
    if f_hi == 0.0:
        return RootResult(hi, (lo, hi), 0, 0.0)
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoSignChangeError(lo, hi, f_lo, f_hi)

    a, b = lo, hi
    n = 0
    while b - a > xtol and n < max_iter:
        mid = 0.5 * (a + b)
        f_mid = f(mid)
        n += 1
        if f_mid == 0.0:
            return RootResult(mid, (lo, hi), n, 0.0)
        if (f_mid < 0.0) == (f_lo < 0.0):
            a, f_lo = mid, f_mid
        else:
            b = mid
    root = 0.5 * (a + b)
    return RootResult(root, (lo, hi), n, f(root))


def sign_changes(values) -> list[int]:
    """Indices ``i`` where ``values[i]`` and ``values[i+1]`` have strictly opposite signs."""
    out = []
    for i in range(len(values) - 1):
        if values[i] * values[i + 1] < 0:
            out.append(i)
    return out
