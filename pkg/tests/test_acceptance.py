"""Acceptance criteria, one test each.

Every test prints a single ``[ACCEPT nn] PASS|FAIL`` line (visible with ``-s``);
the lines are also collected into the terminal summary by ``conftest.py``.
Expected values come from hand-written closed forms, never from the package.
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from entropic_uncertainty.analysis import (
    Target,
    ThetaRole,
    competition_value,
    critical_q,
    difference_critical_q,
    fisher_curve,
    fisher_grid,
)
from entropic_uncertainty.entropy import mutual_information, renyi, shannon, tsallis, tsallis_pseudo_additive
from entropic_uncertainty.gaussian import (
    GaussianPair,
    gaussian_critical_q,
    gaussian_renyi_product,
    gaussian_tsallis_product,
)
from entropic_uncertainty.measurement import (
    MeasurementSetup,
    correlation_defect,
    invert_noise,
    joint_statistics,
    marginal_statistics,
    operational_product,
    optimize_apparatus,
    simulate_coupling,
)
from entropic_uncertainty.state import BlochState, Observable, intrinsic_statistics

PI = math.pi
A = (1 + 1 / math.sqrt(2)) / 2
B = (1 - 1 / math.sqrt(2)) / 2
OUTCOMES = ((0, 1), (1, -1))

RESULTS: list[str] = []


def verdict(number: int, title: str, checks: dict[str, bool], detail: str = ""):
    ok = all(checks.values())
    failed = [name for name, good in checks.items() if not good]
    line = f"[ACCEPT {number:02d}] {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  ({detail})"
    if failed:
        line += f"  failed: {', '.join(failed)}"
    print(line)
    RESULTS.append(line)
    assert ok, line


def joint_closed_form(s, theta, delta):
    sx, sz = s * math.sin(theta), s * math.cos(theta)
    return np.array(
        [[0.25 * (1 + z * sz * math.sin(delta) + x * sx * math.cos(delta)) for z in (1, -1)] for x in (1, -1)]
    )


def test_01_product_intrinsic_critical_q():
    def oracle(q):
        return 2 ** (1 - q) - (A**q + B**q) ** 2

    expected = brentq(oracle, 1.01, 2.0, xtol=1e-14)
    root = critical_q(PI / 4, "tsallis", Target.PRODUCT_INTRINSIC, (1.0, 2.0)).root
    verdict(
        1,
        "intrinsic product critical q = 1.4313 +- 5e-4",
        {"reference value": abs(root - 1.4313) <= 5e-4, "power-sum oracle": abs(root - expected) <= 1e-9},
        f"root={root:.10f}, oracle={expected:.10f}",
    )


def test_02_product_operational_critical_q():
    def oracle(q):
        return 2 ** (1 - q) * (A**q + B**q) - (0.75**q + 0.25**q) ** 2

    expected = brentq(oracle, 1.01, 2.0, xtol=1e-14)
    root = critical_q(PI / 4, "tsallis", Target.PRODUCT_OPERATIONAL, (1.0, 2.0)).root
    verdict(
        2,
        "operational product critical q = 1.3439 +- 5e-4 at delta = pi/4",
        {"reference value": abs(root - 1.3439) <= 5e-4, "power-sum oracle": abs(root - expected) <= 1e-9},
        f"root={root:.10f}, oracle={expected:.10f}",
    )


def test_03_joint_roots_and_sign_pattern():
    low = critical_q(PI / 4, "tsallis", Target.JOINT, (1.5, 2.5)).root
    high = critical_q(PI / 4, "tsallis", Target.JOINT, (2.5, 3.5)).root

    def sums(q):
        return 0.5**q + 2 * 0.25**q, 2 * (A / 2) ** q + 2 * (B / 2) ** q

    exact = all(abs(a - b) < 1e-15 for a, b in (sums(2), sums(3)))
    signs = {
        "negative on (0, 2)": np.linspace(0.02, 1.98, 99),
        "positive on (2, 3)": np.linspace(2.02, 2.98, 49),
        "negative on (3, 6)": np.linspace(3.02, 6.0, 150),
    }
    checks = {"root 2": abs(low - 2.0) <= 1e-8, "root 3": abs(high - 3.0) <= 1e-8, "power-sum equality": exact}
    for label, qs in signs.items():
        vals = np.array([competition_value(q, PI / 4, "tsallis", Target.JOINT) for q in qs])
        checks[label] = bool(np.all(vals > 0) if "positive" in label else np.all(vals < 0))
    verdict(3, "joint competition roots 2 and 3, signs (-, +, -)", checks, f"roots={low:.12f}, {high:.12f}")


def test_04_entropy_difference_critical_q():
    t = difference_critical_q(PI / 4, "tsallis").root
    r = difference_critical_q(PI / 4, "renyi").root
    verdict(
        4,
        "entropy-difference root 1.60 +- 0.01, Renyi within 1e-8",
        {"tsallis root": abs(t - 1.60) <= 0.01, "renyi agrees": abs(t - r) <= 1e-8},
        f"tsallis={t:.10f}, renyi={r:.10f}",
    )


def test_05_generalized_fisher():
    grid = fisher_grid()
    half = fisher_curve(0.5, grid)
    two = fisher_curve(2.0, grid)
    quarter = fisher_curve(0.25, grid)
    verdict(
        5,
        "Fisher constant 4 at q = 1/2, pi/4 argmax at q = 2, argmin at q = 1/4",
        {
            "q=1/2 constant 4": bool(np.max(np.abs(half.values - 4.0)) <= 1e-9),
            "q=2 argmax at pi/4": two.role is ThetaRole.MAXIMUM,
            "q=1/4 argmin at pi/4": quarter.role is ThetaRole.MINIMUM,
        },
        f"q=2 argmax theta={grid[two.argmax]:.4f}, q=1/4 argmin theta={grid[quarter.argmin]:.4f}",
    )


def test_06_coupling_oracle():
    worst = 0.0
    for delta in np.linspace(PI / 2 / 50, PI / 2, 50):
        for theta in np.linspace(0, 2 * PI, 100, endpoint=False):
            sim = simulate_coupling(BlochState(theta), MeasurementSetup(delta)).values
            worst = max(worst, float(np.abs(sim - joint_closed_form(1.0, theta, delta)).max()))
    verdict(6, "Hilbert-space coupling matches joint closed form to 1e-12", {"grid": worst <= 1e-12}, f"max err={worst:.2e}")


def test_07_correlation_defect_identity():
    rng = np.random.default_rng(20240607)
    worst = 0.0
    for _ in range(1000):
        s, theta, delta = rng.uniform(0, 1), rng.uniform(0, 2 * PI), rng.uniform(0, PI / 2)
        state, setup = BlochState(theta, s), MeasurementSetup(delta)
        diff = joint_statistics(state, setup).values - operational_product(state, setup).values
        defect = correlation_defect(state, setup)
        for i, x in OUTCOMES:
            for j, z in OUTCOMES:
                expected = -x * z * s * s * math.sin(2 * theta) * math.sin(2 * delta) / 16
                worst = max(worst, abs(diff[i, j] - expected), abs(defect(x, z) - expected))
    verdict(7, "joint minus product equals the correlation defect to 1e-15", {"random": worst <= 1e-15}, f"max err={worst:.2e}")


def test_08_apparatus_optimum():
    worst = max(abs(2 * optimize_apparatus(d) - (PI / 2 - d)) for d in np.linspace(0, PI / 2, 100))
    verdict(8, "optimal apparatus angle satisfies 2 phi = pi/2 - delta to 1e-8", {"100 deltas": worst <= 1e-8}, f"max err={worst:.2e}")


def test_09_noise_inversion():
    worst = worst_marginal = 0.0
    for delta in np.linspace(0.05, PI / 2 - 0.05, 25):
        for theta in np.linspace(0, 2 * PI, 40, endpoint=False):
            for s in (0.0, 0.5, 1.0):
                state = BlochState(theta, s)
                inferred = invert_noise(joint_statistics(state, MeasurementSetup(delta)), delta)
                expected = np.array(
                    [[0.25 * (1 + z * state.sz + x * state.sx) for z in (1, -1)] for x in (1, -1)]
                )
                worst = max(worst, float(np.abs(inferred.values - expected).max()))
                for obs in Observable:
                    m = np.abs(inferred.marginal(obs) - intrinsic_statistics(state, obs).probs).max()
                    worst_marginal = max(worst_marginal, float(m))
    minimum = invert_noise(joint_statistics(BlochState(PI / 4), MeasurementSetup(PI / 4)), PI / 4).min_entry
    verdict(
        9,
        "noise inversion recovers the true joint quasi-distribution",
        {
            "closed form 1e-10": worst <= 1e-10,
            "min entry (1-sqrt2)/4": abs(minimum - (1 - math.sqrt(2)) / 4) <= 1e-12,
            "marginals 1e-12": worst_marginal <= 1e-12,
        },
        f"max err={worst:.2e}, min entry={minimum:.15f}",
    )


def test_10_mutual_information():
    qs = (0.3, 0.5, 1.4, 2.0, 2.5, 3.5)
    deltas = np.linspace(0, PI / 2, 22)[1:-1]
    thetas = np.linspace(0, PI / 2, 101)
    lowest = math.inf
    ordered = True
    for family in ("tsallis", "renyi"):
        for q in qs:
            for delta in deltas:
                setup = MeasurementSetup(delta)
                for theta in thetas:
                    lowest = min(lowest, mutual_information(joint_statistics(BlochState(theta), setup), family, q))
                inter = mutual_information(joint_statistics(BlochState(PI / 4), setup), family, q)
                extreme = mutual_information(joint_statistics(BlochState(0.0), setup), family, q)
                ordered &= inter >= extreme - 1e-12
    verdict(
        10,
        "mutual informations nonnegative, intermediate >= extreme",
        {"nonnegative": lowest >= -1e-12, "ordering": ordered},
        f"min I={lowest:.2e}",
    )


def test_11_gaussian_criticals():
    intrinsic = gaussian_critical_q("intrinsic").root
    operational = gaussian_critical_q("operational").root
    dxs = np.geomspace(0.1, 10, 201)
    flat = True
    for q in (0.3, 0.5, 1.0, 2.0, 3.0, 4.5):
        for fn in (gaussian_tsallis_product, gaussian_renyi_product):
            vals = np.array([fn(GaussianPair(d), q) for d in dxs])
            flat &= bool(np.max(np.abs(vals - vals[0])) <= 1e-12 * abs(vals[0]))
    verdict(
        11,
        "Gaussian critical q 1 (intrinsic) and 3 (operational), flat products",
        {
            "intrinsic 1.0": abs(intrinsic - 1.0) <= 1e-3,
            "operational 3.0": abs(operational - 3.0) <= 1e-3,
            "products constant": flat,
        },
        f"intrinsic={intrinsic:.8f}, operational={operational:.8f}",
    )


def test_12_entropy_family_consistency():
    rng = np.random.default_rng(7)
    worst_t = worst_r = 0.0
    for _ in range(1000):
        px = rng.dirichlet(np.ones(rng.integers(2, 6)))
        pz = rng.dirichlet(np.ones(rng.integers(2, 6)))
        q = rng.uniform(0.1, 5.0)
        joint = np.outer(px, pz).ravel()
        worst_t = max(worst_t, abs(tsallis_pseudo_additive(tsallis(px, q), tsallis(pz, q), q) - tsallis(joint, q)))
        worst_r = max(worst_r, abs(renyi(px, q) + renyi(pz, q) - renyi(joint, q)))

    worst_limit = 0.0
    for _ in range(200):
        p = rng.dirichlet(np.ones(rng.integers(2, 6)))
        h = -float(np.sum(p * np.log(p)))
        for q in (1 - 1e-6, 1 + 1e-6):
            worst_limit = max(worst_limit, abs(tsallis(p, q) - h), abs(renyi(p, q) - h))
        worst_limit = max(worst_limit, abs(shannon(p) - h))

    monotone = True
    for q in (0.3, 0.5, 1.0, 1.4, 2.0, 2.5, 3.5):
        for delta in np.linspace(0, PI / 2, 13):
            setup = MeasurementSetup(delta)
            for theta in np.linspace(0, 2 * PI, 73):
                state = BlochState(theta)
                for obs in Observable:
                    op = marginal_statistics(state, setup, obs)
                    intr = intrinsic_statistics(state, obs)
                    for fn in (tsallis, renyi):
                        monotone &= fn(op, q) >= fn(intr, q) - 1e-12
    verdict(
        12,
        "pseudo-additivity, additivity, Shannon limit, operational >= intrinsic",
        {
            "tsallis pseudo-additivity": worst_t <= 1e-12,
            "renyi additivity": worst_r <= 1e-12,
            "shannon limit": worst_limit <= 1e-5,
            "unsharpness monotone": monotone,
        },
        f"errs={worst_t:.1e}/{worst_r:.1e}/{worst_limit:.1e}",
    )
