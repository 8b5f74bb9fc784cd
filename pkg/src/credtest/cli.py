"""Command line front end: ``credtest test``, ``credtest interval``, ``credtest power``.

``test`` and ``interval`` print one ``key=value`` record per run; ``power``
writes CSV. Exit codes: 0 success, 2 usage or data error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .conjugate import FIXED_NAMES, Scenario, ScenarioKind, posterior_from_data
from .credible import CredibleSet, central_interval, check_alpha, credible_bound, hpd_set
from .errors import DataError, DomainError
from .power import TESTS, PowerStudyConfig, default_grid, power_study
from .testing import (
    Decision,
    HypothesisRegion,
    MEWLoss,
    ThreeWayDecision,
    central_evidence,
    composite_bayes_test,
    fbst_evidence,
    fbst_tangent_set,
    mew_test,
    region_probability,
    three_decision_test,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

CSV_HEADER = ["theta", "test", "rejection_rate", "std_error", "n", "R", "alpha", "seed"]

METHODS = (
    "central",
    "hpd",
    "three-decision",
    "fbst",
    "mew",
    "one-sided-lower",
    "one-sided-upper",
    "composite",
)
KINDS = ("central", "hpd", "lower", "upper")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# record format
# ---------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _fmt_floats(xs) -> str:
    return ",".join(_fmt_float(x) for x in xs)


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",")) if text else ()


def _fmt_intervals(intervals) -> str:
    return ",".join(f"{_fmt_float(lo)}:{_fmt_float(hi)}" for lo, hi in intervals)


def _parse_intervals(text: str) -> tuple[tuple[float, float], ...]:
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition(":")
        if not sep:
            raise ValueError(f"interval {part!r} is not of the form lo:hi")
        out.append((float(lo), float(hi)))
    return tuple(out)


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"not a boolean: {text!r}")
    return text == "true"


_CODECS = {
    float: (_fmt_float, float),
    int: (str, int),
    str: (str, str),
    bool: (lambda b: "true" if b else "false", _parse_bool),
    "floats": (_fmt_floats, _parse_floats),
    "intervals": (_fmt_intervals, _parse_intervals),
}


def _field(codec, default=None):
    return dataclasses.field(default=default, metadata={"codec": codec})


@dataclass(frozen=True)
class RunResult:
    """Everything one ``test`` or ``interval`` invocation reports.

    Unset fields are left out of the record; :meth:`from_record` restores them
    as ``None``.
    """

    command: str = _field(str)
    scenario: str = _field(str)
    method: str | None = _field(str)
    alpha: float | None = _field(float)
    theta0: float | None = _field(float)
    theta0_posterior: float | None = _field(float)
    posterior_family: str | None = _field(str)
    posterior_params: tuple[float, ...] | None = _field("floats")
    decision: str | None = _field(str)
    three_decision: int | None = _field(int)
    threshold: float | None = _field(float)
    ev_hpd: float | None = _field(float)
    ev_central: float | None = _field(float)
    interval_kind: str | None = _field(str)
    endpoints: tuple[tuple[float, float], ...] | None = _field("intervals")
    nominal_credibility: float | None = _field(float)
    achieved_mass: float | None = _field(float)
    density_level: float | None = _field(float)
    one_sided: bool | None = _field(bool)
    region: tuple[tuple[float, float], ...] | None = _field("intervals")
    region_probability: float | None = _field(float)
    loss_a: float | None = _field(float)
    loss_b: float | None = _field(float)

    def to_record(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            encode = _CODECS[f.metadata["codec"]][0]
            lines.append(f"{f.name}={encode(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_record(cls, text: str) -> RunResult:
        fields = {f.name: f for f in dataclasses.fields(cls)}
        values = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, sep, raw = line.partition("=")
            if not sep or key not in fields:
                raise ValueError(f"unrecognised record line {line!r}")
            decode = _CODECS[fields[key].metadata["codec"]][1]
            values[key] = decode(raw)
        return cls(**values)


def _interval_fields(cset: CredibleSet) -> dict:
    return {
        "interval_kind": cset.kind.value,
        "endpoints": cset.intervals,
        "nominal_credibility": cset.nominal_credibility,
        "achieved_mass": cset.achieved_mass,
        "density_level": cset.density_level,
        "one_sided": cset.one_sided,
    }


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------


def read_data(path: str) -> list[float]:
    """One real per line; blank lines and ``#`` comments are skipped."""
    values = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read data file {path!r}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise DataError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not values:
        raise DataError(f"{path}: no observations")
    return values


def _scenario_kind(name: str) -> ScenarioKind:
    try:
        return ScenarioKind(name.replace("-", "_"))
    except ValueError:
        choices = ", ".join(k.value.replace("_", "-") for k in ScenarioKind)
        raise UsageError(f"unknown scenario {name!r}; choose from {choices}") from None


def build_scenario(name: str, constants: dict) -> Scenario:
    kind = _scenario_kind(name)
    fixed = []
    for const in FIXED_NAMES[kind]:
        value = constants.get(const)
        if value is None and const == "known_mean":
            value = 0.0
        if value is None:
            raise UsageError(f"scenario {name} needs --{const.replace('_', '-')}")
        fixed.append(value)
    return Scenario(kind, tuple(fixed))


def parse_region(text: str) -> HypothesisRegion:
    try:
        return HypothesisRegion(_parse_intervals(text))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"bad --region {text!r}: expected lo:hi[,lo:hi...]") from None


def _constants(args) -> dict:
    return {
        "known_mean": args.known_mean,
        "known_shape": args.known_shape,
        "pareto_m": args.pareto_m,
        "pareto_k": args.pareto_k,
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _posterior(args):
    scenario = build_scenario(args.scenario, _constants(args))
    data = read_data(args.data)
    return scenario, posterior_from_data(scenario, data)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--method {args.method} needs --{name.replace('_', '-')}")


def cmd_test(args) -> RunResult:
    scenario, d = _posterior(args)
    theta0 = args.theta0
    null = scenario.posterior_value(theta0)
    alpha = check_alpha(args.alpha)
    out = dict(
        command="test",
        scenario=scenario.kind.value,
        method=args.method,
        alpha=alpha,
        theta0=theta0,
        theta0_posterior=null,
        posterior_family=d.family.value,
        posterior_params=d.params,
    )
    method = args.method
    if method in ("central", "hpd", "one-sided-lower", "one-sided-upper"):
        if method == "central":
            cset = central_interval(d, alpha)
            out["ev_central"] = central_evidence(d, null)
        elif method == "hpd":
            cset = hpd_set(d, alpha)
        else:
            cset = credible_bound(d, alpha, "lower" if method == "one-sided-lower" else "upper")
        out.update(_interval_fields(cset))
        out["decision"] = (Decision.ACCEPT if cset.contains(null) else Decision.REJECT).value
    elif method == "three-decision":
        phi = three_decision_test(d, null, alpha)
        out.update(_interval_fields(central_interval(d, alpha)))
        out["three_decision"] = int(phi)
        out["decision"] = (Decision.ACCEPT if phi is ThreeWayDecision.NULL else Decision.REJECT).value
    elif method == "fbst":
        ev = fbst_evidence(d, null)
        out.update(_interval_fields(fbst_tangent_set(d, null)))
        out["ev_hpd"] = ev
        out["ev_central"] = central_evidence(d, null)
        out["threshold"] = alpha
        out["decision"] = (Decision.REJECT if ev < alpha else Decision.ACCEPT).value
    elif method == "mew":
        _require(args, "mew_a", "mew_b", "mew_c")
        loss = MEWLoss(args.mew_a, args.mew_b, args.mew_c)
        out.update(_interval_fields(hpd_set(d, loss.threshold)))
        out["threshold"] = loss.threshold
        out["ev_hpd"] = fbst_evidence(d, null)
        out["ev_central"] = central_evidence(d, null)
        out["decision"] = mew_test(d, null, loss).value
    elif method == "composite":
        _require(args, "region", "loss_a", "loss_b")
        region = parse_region(args.region)
        out["region"] = region.intervals
        out["loss_a"] = args.loss_a
        out["loss_b"] = args.loss_b
        out["threshold"] = args.loss_b / (args.loss_a + args.loss_b)
        out["region_probability"] = region_probability(d, region)
        out["decision"] = composite_bayes_test(d, region, args.loss_a, args.loss_b).value
    else:
        raise UsageError(f"unknown method {method!r}")
    return RunResult(**out)


def cmd_interval(args) -> RunResult:
    scenario, d = _posterior(args)
    kind = args.kind
    if kind == "central":
        cset = central_interval(d, args.alpha)
    elif kind == "hpd":
        cset = hpd_set(d, args.alpha)
    else:
        cset = credible_bound(d, args.alpha, kind)
    return RunResult(
        command="interval",
        scenario=scenario.kind.value,
        alpha=args.alpha,
        posterior_family=d.family.value,
        posterior_params=d.params,
        **_interval_fields(cset),
    )


CONFIG_KEYS = (
    "scenario",
    "known_mean",
    "known_shape",
    "pareto_m",
    "pareto_k",
    "theta0",
    "theta_grid",
    "sample_size",
    "replications",
    "alpha",
    "tests",
    "seed",
    "workers",
)


def load_power_config(args) -> tuple[PowerStudyConfig, int | None]:
    settings: dict = {}
    if args.config is not None:
        try:
            raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config!r} is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise UsageError("config must be a JSON object")
        for key in raw:
            if key not in CONFIG_KEYS:
                raise UsageError(f"invalid config key {key!r}")
        settings.update(raw)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if "scenario" not in settings or "theta0" not in settings:
        raise UsageError("power study needs a scenario and theta0 (flags or --config)")
    scenario = build_scenario(str(settings["scenario"]), settings)
    theta0 = float(settings["theta0"])
    grid = settings.get("theta_grid")
    if grid is None:
        grid = default_grid(theta0)
    elif isinstance(grid, str):
        grid = _parse_floats(grid)
    tests = settings.get("tests", TESTS)
    if isinstance(tests, str):
        tests = tuple(t.strip() for t in tests.split(","))
    try:
        cfg = PowerStudyConfig(
            scenario=scenario,
            theta0=theta0,
            theta_grid=tuple(float(t) for t in grid),
            sample_size=int(settings.get("sample_size", 20)),
            replications=int(settings.get("replications", 20_000)),
            alpha=float(settings.get("alpha", 0.05)),
            tests=tuple(tests),
            seed=int(settings.get("seed", 0)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"malformed power config: {exc}") from None
    workers = settings.get("workers")
    return cfg, (int(workers) if workers is not None else None)


def power_csv(cfg: PowerStudyConfig, curves) -> str:
    """Render curves as CSV, one row per (grid point, test), grid order first."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i, theta in enumerate(cfg.theta_grid):
        for curve in curves:
            writer.writerow([
                f"{theta:.10g}",
                curve.test,
                f"{curve.rejection_rates[i]:.10g}",
                f"{curve.standard_errors[i]:.10g}",
                cfg.sample_size,
                cfg.replications,
                f"{cfg.alpha:.10g}",
                cfg.seed,
            ])
    return buf.getvalue()


def cmd_power(args) -> str:
    cfg, workers = load_power_config(args)
    text = power_csv(cfg, power_study(cfg, workers=workers))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return text


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_posterior_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--scenario", required=required, help="e.g. exponential-rate, normal-variance-known-mean")
    p.add_argument("--known-mean", type=float, dest="known_mean")
    p.add_argument("--known-shape", type=float, dest="known_shape")
    p.add_argument("--pareto-m", type=float, dest="pareto_m")
    p.add_argument("--pareto-k", type=float, dest="pareto_k")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credtest", description="Bayesian hypothesis tests by inversion of credible sets"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="test a point or composite hypothesis")
    _add_posterior_flags(p)
    p.add_argument("--data", required=True, help="one observation per line")
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--mew-a", type=float, dest="mew_a")
    p.add_argument("--mew-b", type=float, dest="mew_b")
    p.add_argument("--mew-c", type=float, dest="mew_c")
    p.add_argument("--region", help="null region as lo:hi[,lo:hi...]; inf allowed (write --region=-inf:... when it starts with a minus)")
    p.add_argument("--loss-a", type=float, dest="loss_a", help="cost of rejecting a true null")
    p.add_argument("--loss-b", type=float, dest="loss_b", help="cost of accepting a false null")

    p = sub.add_parser("interval", help="compute a credible set")
    _add_posterior_flags(p)
    p.add_argument("--data", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--kind", choices=KINDS, required=True)

    p = sub.add_parser("power", help="Monte Carlo power study, CSV output")
    p.add_argument("--config", help="JSON file with PowerStudyConfig fields")
    _add_posterior_flags(p, required=False)
    p.add_argument("--theta0", type=float)
    p.add_argument("--grid", dest="theta_grid", help="comma-separated true parameter values")
    p.add_argument("--n", type=int, dest="sample_size")
    p.add_argument("--replications", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--tests", help="comma-separated subset of central,hpd")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="write CSV here instead of standard output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "power":
            text = cmd_power(args)
            if not args.out:
                sys.stdout.write(text)
        elif args.command == "test":
            sys.stdout.write(cmd_test(args).to_record())
        else:
            sys.stdout.write(cmd_interval(args).to_record())
    except (UsageError, DataError) as exc:
        print(f"credtest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"credtest: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
