"""Command-line front end: curve data as CSV, scalar reports as JSON.

Exit status is 0 on success, 2 on usage errors and 3 on numerical failures
(no sign change in a bracket, singular measurement configuration, failed
verification check).
"""

from __future__ import annotations

import argparse
import datetime as _dt
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    DEFAULT_STEPS,
    ScanConfig,
    Target,
    competition,
    competition_value,
    critical_q,
    difference_critical_q,
    entropy_curve,
    fisher_curve,
    fisher_grid,
    mutual_information_curve,
)
from .entropy import (
    Family,
    generalized_fisher,
    mutual_information,
    renyi,
    tsallis,
    tsallis_pseudo_additive,
)
from .gaussian import (
    CRITICAL_BRACKET,
    GaussianPair,
    SumForm,
    SumMode,
    gaussian_critical_q,
    gaussian_entropy_sum,
    gaussian_operational_joint_renyi,
    gaussian_operational_joint_tsallis,
    gaussian_renyi_product,
    gaussian_tsallis_product,
)
from .measurement import (
    BALANCED_DELTA,
    MeasurementSetup,
    SingularMeasurementError,
    correlation_defect,
    infer_true_joint,
    invert_noise,
    is_nonclassical,
    joint_statistics,
    operational_product,
    optimize_apparatus,
    simulate_coupling,
)
from .roots import NoSignChangeError
from .state import BlochState, Observable, intrinsic_statistics

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

CURVE_TARGETS = ("joint", "product-operational", "product-intrinsic", "fisher", "gaussian-sum")
CRITICAL_TARGETS = (
    "joint",
    "product-operational",
    "product-intrinsic",
    "entropy-difference",
    "gaussian-sum",
)
DEFAULT_BRACKETS = {
    "joint": (1.5, 2.5),
    "product-operational": (1.0, 2.0),
    "product-intrinsic": (1.0, 2.0),
    "entropy-difference": (1.1, 3.0),
    "gaussian-sum": CRITICAL_BRACKET,
}
ANGLE_FLAGS = ("delta", "theta", "theta_min", "theta_max")
# flags that say where output goes, not what is computed
NON_MANIFEST = ("output", "func", "manifest", "deg")
VERIFY_CHECKS = ("coupling", "eq62", "apparatus", "inversion", "additivity", "critical")


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    def __init__(self, report: dict):
        self.report = report
        super().__init__(report.get("error", "numerical failure"))


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(header: tuple[str, str], xs, ys) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for x, y in zip(xs, ys):
        buf.write(f"{fmt(x)},{fmt(y)}\n")
    return buf.getvalue()


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def write_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        t = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        t = _dt.datetime.now(tz=_dt.timezone.utc).replace(microsecond=0)
    return t.isoformat()


def build_manifest(args: argparse.Namespace) -> dict:
    params = {
        k: (list(v) if isinstance(v, tuple) else v)
        for k, v in sorted(vars(args).items())
        if k not in NON_MANIFEST and k != "timestamp"
    }
    return {
        "command": args.command,
        "parameters": params,
        "version": __version__,
        "timestamp": getattr(args, "timestamp", None) or _timestamp(),
    }


class Emitter:
    """Routes one command's output to stdout or to ``--output`` with its manifest."""

    def __init__(self, args: argparse.Namespace, stdout):
        self.args = args
        self.stdout = stdout
        self.manifest = build_manifest(args)

    def _write(self, text: str):
        if self.args.output:
            Path(self.args.output).write_text(text, newline="\n")
        else:
            self.stdout.write(text)

    def curve(self, header: tuple[str, str], xs, ys, extra: dict | None = None):
        if self.args.format == "json":
            report = {
                "columns": list(header),
                "rows": [[float(x), float(y)] for x, y in zip(xs, ys)],
                **(extra or {}),
                "manifest": self.manifest,
            }
            self._write(write_json(report))
            return
        self._write(write_csv(header, xs, ys))
        if self.args.output:
            Path(self.args.output + ".manifest.json").write_text(
                write_json(self.manifest), newline="\n"
            )

    def report(self, report: dict):
        if self.args.format == "csv":
            raise UsageError(f"'{self.args.command}' produces a scalar report; use --format json")
        self._write(write_json({**report, "manifest": self.manifest}))


# ---------------------------------------------------------------- commands


def _family(args) -> Family:
    return Family(args.family)


def _q_for(args) -> float:
    if args.family == "shannon":
        return 1.0
    if args.q is None:
        raise UsageError("--q is required")
    if not args.q > 0:
        raise UsageError(f"--q must be positive, got {args.q}")
    return args.q


def _check_delta(args):
    if not 0.0 <= args.delta <= math.pi / 2:
        raise UsageError(f"--delta must lie in [0, pi/2], got {args.delta}")


def cmd_scan(args, out: Emitter):
    q = _q_for(args)
    if args.target == "gaussian-sum":
        if args.family == "renyi":
            raise UsageError("gaussian-sum is defined for the Tsallis family only")
        dxs = 10.0 ** np.linspace(-1.0, 1.0, args.dx_steps)
        ys = [gaussian_entropy_sum(GaussianPair(d), q, args.mode, args.form) for d in dxs]
        if args.normalize:
            ref = gaussian_entropy_sum(GaussianPair(1.0), q, args.mode, args.form)
            if ref == 0.0:
                raise UsageError("cannot normalize to a zero value at dx = 1")
            ys = [y / ref for y in ys]
        out.curve(("dx", "value"), dxs, ys)
        return
    if args.target == "fisher":
        thetas = fisher_grid(args.theta_steps)
        curve = fisher_curve(q, thetas)
        out.curve(("theta", "value"), curve.x, curve.values)
        return
    _check_delta(args)
    config = ScanConfig(
        q=q,
        family=_family(args),
        target=Target(args.target),
        delta=args.delta,
        theta_min=args.theta_min,
        theta_max=args.theta_max,
        theta_steps=args.theta_steps,
        normalize=args.normalize,
    )
    curve = entropy_curve(config)
    out.curve(("theta", "value"), curve.x, curve.values)


def cmd_critical_q(args, out: Emitter):
    bracket = tuple(args.bracket) if args.bracket else DEFAULT_BRACKETS[args.target]
    report = {"target": args.target, "family": args.family, "delta": args.delta}
    try:
        if args.target == "gaussian-sum":
            report["mode"] = args.mode
            result = gaussian_critical_q(args.mode, bracket, args.form)
        elif args.target == "entropy-difference":
            _check_delta(args)
            result = difference_critical_q(args.delta, _family(args), bracket)
        else:
            _check_delta(args)
            result = critical_q(args.delta, _family(args), Target(args.target), bracket)
    except NoSignChangeError as exc:
        raise NumericalFailure(
            {
                **report,
                "error": str(exc),
                "bracket": list(bracket),
                "endpoint_values": [exc.f_lo, exc.f_hi],
            }
        ) from exc
    report.update(result.as_dict())
    out.report(report)


def cmd_competition(args, out: Emitter):
    _check_delta(args)
    family = _family(args)
    target = Target(args.target)
    if args.q_steps:
        qs = np.linspace(args.q_min, args.q_max, args.q_steps)
        if np.any(qs <= 0):
            raise UsageError("the q grid must be strictly positive")
        ys = [competition_value(q, args.delta, family, target) for q in qs]
        out.curve(("q", "value"), qs, ys)
        return
    res = competition(_q_for(args), args.delta, family, target)
    out.report(
        {
            "q": res.q,
            "delta": args.delta,
            "family": args.family,
            "target": args.target,
            "delta_T": res.delta_T,
            "winner": res.winner.value,
        }
    )


def cmd_mutual_info(args, out: Emitter):
    _check_delta(args)
    q = _q_for(args)
    family = _family(args)
    if args.theta is not None:
        joint = joint_statistics(BlochState(args.theta, args.s), MeasurementSetup(args.delta))
        out.report(
            {
                "theta": args.theta,
                "s": args.s,
                "delta": args.delta,
                "q": q,
                "family": args.family,
                "mutual_information": mutual_information(joint, family, q),
            }
        )
        return
    thetas = np.linspace(args.theta_min, args.theta_max, args.theta_steps)
    curve = mutual_information_curve(q, family, args.delta, thetas)
    out.curve(("theta", "value"), curve.x, curve.values)


def cmd_fisher(args, out: Emitter):
    q = _q_for(args)
    if args.theta is not None:
        try:
            value = generalized_fisher(args.theta, q)
        except ValueError as exc:
            raise NumericalFailure({"theta": args.theta, "q": q, "error": str(exc)}) from exc
        out.report({"theta": args.theta, "q": q, "fisher": value, "fisher_power": value**q})
        return
    curve = fisher_curve(q, fisher_grid(args.theta_steps))
    out.report(
        {
            "q": q,
            "theta_steps": args.theta_steps,
            "min": float(curve.values.min()),
            "max": float(curve.values.max()),
            "argmin_theta": float(curve.x[curve.argmin]),
            "argmax_theta": float(curve.x[curve.argmax]),
            "constant": curve.constant,
            "role_of_pi_over_4": curve.role.value,
        }
    )


def cmd_gaussian(args, out: Emitter):
    q = _q_for(args)
    pair = GaussianPair(args.dx)
    out.report(
        {
            "dx": pair.dx,
            "dy": pair.dy,
            "q": q,
            "tsallis_product": gaussian_tsallis_product(pair, q),
            "renyi_product": gaussian_renyi_product(pair, q),
            "operational_joint_tsallis": gaussian_operational_joint_tsallis(pair, q),
            "operational_joint_renyi": gaussian_operational_joint_renyi(pair, q),
            "entropy_sum": {
                mode.value: {
                    form.value: gaussian_entropy_sum(pair, q, mode, form) for form in SumForm
                }
                for mode in SumMode
            },
        }
    )


def cmd_nonclassical(args, out: Emitter):
    if not 0.0 <= args.s <= 1.0:
        raise UsageError(f"--s must lie in [0, 1], got {args.s}")
    state = BlochState(args.theta, args.s)
    quasi = infer_true_joint(state)
    out.report(
        {
            "theta": args.theta,
            "s": args.s,
            "inferred_joint": quasi.values.tolist(),
            "min_entry": quasi.min_entry,
            "nonclassical": is_nonclassical(state),
        }
    )


# ---------------------------------------------------------------- verify


def _check_coupling(args, rng) -> dict:
    deltas = (
        [args.delta]
        if args.delta_given
        else np.linspace(math.pi / 2 / 50, math.pi / 2, 50)
    )
    thetas = np.linspace(0.0, 2 * math.pi, 100, endpoint=False)
    worst = 0.0
    for d in deltas:
        setup = MeasurementSetup(d)
        for t in thetas:
            state = BlochState(t)
            diff = np.abs(simulate_coupling(state, setup).values - joint_statistics(state, setup).values)
            worst = max(worst, float(diff.max()))
    return {"max_abs_error": worst, "tolerance": 1e-12, "passed": worst < 1e-12}


def _check_eq62(args, rng) -> dict:
    worst = 0.0
    for _ in range(args.samples):
        s = rng.uniform(0, 1)
        t = rng.uniform(0, 2 * math.pi)
        d = rng.uniform(0, math.pi / 2)
        state, setup = BlochState(t, s), MeasurementSetup(d)
        diff = joint_statistics(state, setup).values - operational_product(state, setup).values
        defect = correlation_defect(state, setup)
        for i, x in enumerate((1, -1)):
            for j, z in enumerate((1, -1)):
                worst = max(worst, abs(diff[i, j] - defect(x, z)))
    return {"max_abs_error": worst, "tolerance": 1e-15, "passed": worst < 1e-15}


def _check_apparatus(args, rng) -> dict:
    deltas = np.linspace(0.0, math.pi / 2, 100)
    worst = max(abs(2 * optimize_apparatus(d) - (math.pi / 2 - d)) for d in deltas)
    return {"max_abs_error": worst, "tolerance": 1e-8, "passed": worst < 1e-8}


def _check_inversion(args, rng) -> dict:
    worst = 0.0
    worst_marginal = 0.0
    for d in np.linspace(0.05, math.pi / 2 - 0.05, 25):
        setup = MeasurementSetup(d)
        for t in np.linspace(0.0, 2 * math.pi, 40, endpoint=False):
            for s in (0.0, 0.5, 1.0):
                state = BlochState(t, s)
                closed = infer_true_joint(state)
                inverted = invert_noise(joint_statistics(state, setup), d)
                worst = max(worst, float(np.abs(closed.values - inverted.values).max()))
                for obs in Observable:
                    m = np.abs(closed.marginal(obs) - intrinsic_statistics(state, obs).probs).max()
                    worst_marginal = max(worst_marginal, float(m))
    passed = worst < 1e-10 and worst_marginal < 1e-12
    return {
        "max_abs_error": worst,
        "max_marginal_error": worst_marginal,
        "tolerance": 1e-10,
        "passed": passed,
    }


def _check_additivity(args, rng) -> dict:
    worst_t = worst_r = 0.0
    for _ in range(args.samples):
        px = rng.dirichlet(np.ones(rng.integers(2, 5)))
        pz = rng.dirichlet(np.ones(rng.integers(2, 5)))
        q = rng.uniform(0.1, 5.0)
        prod = np.outer(px, pz).reshape(-1)
        worst_t = max(
            worst_t,
            abs(tsallis_pseudo_additive(tsallis(px, q), tsallis(pz, q), q) - tsallis(prod, q)),
        )
        worst_r = max(worst_r, abs(renyi(px, q) + renyi(pz, q) - renyi(prod, q)))
    return {
        "max_tsallis_error": worst_t,
        "max_renyi_error": worst_r,
        "tolerance": 1e-12,
        "passed": worst_t < 1e-12 and worst_r < 1e-12,
    }


def _check_critical(args, rng) -> dict:
    found = {
        "product-intrinsic": critical_q(target=Target.PRODUCT_INTRINSIC).root,
        "product-operational": critical_q(target=Target.PRODUCT_OPERATIONAL).root,
        "joint-low": critical_q(target=Target.JOINT, bracket=(1.5, 2.5)).root,
        "joint-high": critical_q(target=Target.JOINT, bracket=(2.5, 3.5)).root,
        "entropy-difference": difference_critical_q().root,
        "gaussian-intrinsic": gaussian_critical_q(SumMode.INTRINSIC).root,
        "gaussian-operational": gaussian_critical_q(SumMode.OPERATIONAL).root,
    }
    expected = {
        "product-intrinsic": (1.4313, 5e-4),
        "product-operational": (1.3439, 5e-4),
        "joint-low": (2.0, 1e-8),
        "joint-high": (3.0, 1e-8),
        "entropy-difference": (1.60, 1e-2),
        "gaussian-intrinsic": (1.0, 1e-3),
        "gaussian-operational": (3.0, 1e-3),
    }
    passed = all(abs(found[k] - v) <= tol for k, (v, tol) in expected.items())
    return {"roots": found, "passed": passed}


_CHECKS = {
    "coupling": _check_coupling,
    "eq62": _check_eq62,
    "apparatus": _check_apparatus,
    "inversion": _check_inversion,
    "additivity": _check_additivity,
    "critical": _check_critical,
}


def cmd_verify(args, out: Emitter) -> int:
    names = list(VERIFY_CHECKS) if args.check == "all" else [args.check]
    lines = []
    status = EXIT_OK
    for name in names:
        rng = np.random.default_rng(args.seed)
        try:
            result = {"check": name, **_CHECKS[name](args, rng)}
        except SingularMeasurementError as exc:
            result = {"check": name, "passed": False, "rejected": True, "error": str(exc)}
        if not result["passed"]:
            status = EXIT_NUMERIC
        lines.append(json.dumps(result, sort_keys=True, default=_json_default))
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, newline="\n")
        Path(args.output + ".manifest.json").write_text(write_json(out.manifest), newline="\n")
    else:
        out.stdout.write(text)
    return status


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser, *, target_choices=None, target_default=None):
    p.add_argument("--q", type=float, default=None, help="entropic order (q > 0)")
    p.add_argument("--delta", type=float, default=None, help="measurement unsharpness angle in [0, pi/2]")
    p.add_argument("--family", choices=[f.value for f in Family], default="tsallis")
    if target_choices:
        p.add_argument("--target", choices=target_choices, default=target_default)
    p.add_argument("--theta-steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--theta-min", type=float, default=None, help="default 0")
    p.add_argument("--theta-max", type=float, default=None, help="default pi/2")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default=None, help="default: csv for curves, json for reports")
    p.add_argument("--output", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deg", action="store_true", help="read angle flags in degrees")
    p.add_argument("--mode", choices=[m.value for m in SumMode], default="intrinsic")
    p.add_argument("--form", choices=[f.value for f in SumForm], default="printed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropic-uncertainty",
        description="Entropic joint-uncertainty measures for qubit complementary observables.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="entropy or Fisher curve over theta, or Gaussian sum over dx")
    _add_common(p, target_choices=CURVE_TARGETS, target_default="joint")
    p.add_argument("--dx-steps", type=int, default=1001)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("critical-q", help="order at which a competition changes sign")
    _add_common(p, target_choices=CRITICAL_TARGETS, target_default="product-intrinsic")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    p.set_defaults(func=cmd_critical_q)

    p = sub.add_parser("competition", help="intermediate minus extreme entropy")
    _add_common(p, target_choices=CURVE_TARGETS[:3], target_default="joint")
    p.add_argument("--q-min", type=float, default=0.05)
    p.add_argument("--q-max", type=float, default=6.0)
    p.add_argument("--q-steps", type=int, default=0, help="emit a curve over q instead of one value")
    p.set_defaults(func=cmd_competition)

    p = sub.add_parser("mutual-info", help="Tsallis/Rényi mutual information of the joint statistics")
    _add_common(p)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--s", type=float, default=1.0)
    p.set_defaults(func=cmd_mutual_info)

    p = sub.add_parser("fisher", help="q-order Fisher information summary")
    _add_common(p)
    p.add_argument("--theta", type=float, default=None)
    p.set_defaults(func=cmd_fisher)

    p = sub.add_parser("gaussian", help="closed-form Gaussian quadrature entropies")
    _add_common(p)
    p.add_argument("--dx", type=float, default=1.0)
    p.set_defaults(func=cmd_gaussian)

    p = sub.add_parser("nonclassical", help="noise-inverted joint quasi-distribution")
    _add_common(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.set_defaults(func=cmd_nonclassical)

    p = sub.add_parser("verify", help="run the oracle-equivalence checks")
    _add_common(p)
    p.add_argument("--check", choices=("all",) + VERIFY_CHECKS, default="all")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("manifest")
    p.add_argument("--output", default=None)
    p.set_defaults(func=None)
    return parser


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    args.delta_given = args.delta is not None
    if args.deg:
        for name in ANGLE_FLAGS:
            v = getattr(args, name, None)
            if v is not None:
                setattr(args, name, math.radians(v))
        args.deg = False
    if args.delta is None:
        args.delta = BALANCED_DELTA
    if args.theta_min is None:
        args.theta_min = 0.0
    if args.theta_max is None:
        args.theta_max = math.pi / 2
    if args.theta_steps < 2:
        raise UsageError(f"--theta-steps must be at least 2, got {args.theta_steps}")
    return args


def _replay_namespace(args: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    manifest = json.loads(Path(args.manifest).read_text())
    command = manifest["command"]
    base = parser.parse_args([command] + (["--theta", "0"] if command == "nonclassical" else []))
    for k, v in manifest["parameters"].items():
        setattr(base, k, v)
    base.output = args.output
    base.timestamp = manifest["timestamp"]
    base.deg = False
    return base


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "replay":
            args = _replay_namespace(args, parser)
        else:
            args = _resolve(args)
        emitter = Emitter(args, stdout)
        status = args.func(args, emitter)
        return EXIT_OK if status is None else status
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except NumericalFailure as exc:
        stderr.write(write_json(exc.report))
        return EXIT_NUMERIC
    except (SingularMeasurementError, NoSignChangeError) as exc:
        stderr.write(write_json({"error": str(exc)}))
        return EXIT_NUMERIC
    except ValueError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
