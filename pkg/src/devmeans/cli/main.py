"""``devmeans`` command line: means, population constants, simulations, reference checks.

Exit status is 0 on success, 1 when the computation fails (the error is a
one-line JSON object on stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import warnings
from typing import Sequence

from ..asymptotics.constants import asymptotic_constants
from ..asymptotics.large_deviations import ld_rate
from ..core.deviations import check_deviation_axioms, deviation_mean
from ..errors import DevMeansError, ExactModeUnavailable
from ..montecarlo import ExperimentConfig, run_clt, run_ld, run_lil, run_slln
from ..population.expectations import population_mean
from .golden import verify_paper
from .registry import UsageError, resolve_deviation, resolve_distribution

SIMULATIONS = ("slln", "clt", "lil", "ld")
_NEEDS = {
    "mean": ("deviation", "data"),
    "population-mean": ("deviation", "distribution"),
    "constants": ("deviation", "distribution"),
    "ld-rate": ("deviation", "distribution", "x"),
    "simulate": ("deviation", "distribution"),
    "axioms": ("deviation",),
    "verify-paper": (),
}
_FLAGS = ("deviation", "distribution", "data", "x", "n", "n_list", "replications", "seed", "threads", "output", "format")


@dataclasses.dataclass(frozen=True)
class RunSpec:
    command: str
    experiment: str | None = None
    deviation: str | None = None
    distribution: str | None = None
    data: tuple[float, ...] | None = None
    x: float | None = None
    n: int | None = None
    n_list: tuple[int, ...] | None = None
    replications: int = 1
    seed: int = 0
    threads: int | None = None
    output: str | None = None
    format: str = "csv"


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deviation", help="registry string, e.g. power:p=2")
    common.add_argument("--distribution", help="registry string, e.g. exponential:rate=1")
    common.add_argument("--data", type=_floats, help="comma-separated sample")
    common.add_argument("--x", type=float, help="level for large-deviation commands")
    common.add_argument("--n", type=int, help="sample size or trajectory length")
    common.add_argument("--n-list", dest="n_list", type=_ints, help="comma-separated increasing sample sizes")
    common.add_argument("--replications", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--config", help="file of key=value lines mirroring the flags")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"))

    parser = argparse.ArgumentParser(prog="devmeans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _NEEDS:
        p = sub.add_parser(name, parents=[common])
        if name == "simulate":
            p.add_argument("experiment", choices=SIMULATIONS)
    return parser


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, eq, value = line.partition("=")
            if not eq:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key = key.strip().replace("-", "_")
            if key not in _FLAGS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


_CONVERT = {
    "data": _floats,
    "x": float,
    "n": int,
    "n_list": _ints,
    "replications": int,
    "seed": int,
    "threads": int,
}


def parse_args(argv: Sequence[str] | None = None) -> RunSpec:
    """Parse ``argv`` into a :class:`RunSpec`; usage errors exit with status 2."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    values = {k: getattr(ns, k) for k in _FLAGS}
    if ns.config:
        try:
            file_values = _read_config(ns.config)
            for key, text in file_values.items():
                if values[key] is None:
                    values[key] = _CONVERT[key](text) if key in _CONVERT else text
        except (OSError, UsageError, ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(str(exc))
    if values["format"] not in (None, "csv", "json"):
        parser.error(f"format must be csv or json, not {values['format']!r}")
    missing = [k for k in _NEEDS[ns.command] if values[k] is None]
    if ns.command == "simulate" and ns.experiment == "ld" and values["x"] is None:
        missing.append("x")
    if missing:
        parser.error(f"{ns.command} requires " + ", ".join("--" + m.replace("_", "-") for m in missing))
    for key, default in (("replications", 1), ("seed", 0), ("format", "csv")):
        if values[key] is None:
            values[key] = default
    return RunSpec(command=ns.command, experiment=getattr(ns, "experiment", None), **values)


def _rows(spec: RunSpec, D, dist) -> list[dict]:
    if spec.command == "mean":
        r = deviation_mean(D, spec.data)
        return [dataclasses.asdict(r)]
    if spec.command == "population-mean":
        r = population_mean(D, dist)
        return [{
            "t0": r.t0,
            "residual": r.residual,
            "interior_point": r.interior_point,
            "probe_left": r.probe[0].verdict if r.probe else "",
            "probe_right": r.probe[1].verdict if r.probe else "",
            "diagnostic": r.diagnostic or "",
        }]
    if spec.command == "constants":
        return [dataclasses.asdict(asymptotic_constants(D, dist))]
    if spec.command == "ld-rate":
        r = ld_rate(D, dist, spec.x)
        return [{"x": r.x, "inf_phi": r.inf_phi, "log_inf_phi": math.log(r.inf_phi), "c_star": r.c_star, "gamma": r.gamma}]
    if spec.command == "axioms":
        r = check_deviation_axioms(D)
        return [{**dataclasses.asdict(r), "passed": r.passed}]
    if spec.command == "verify-paper":
        return [{**dataclasses.asdict(c), "passed": c.passed} for c in verify_paper()]
    return _simulate(spec, D, dist)


def _experiment_config(spec: RunSpec, default_n: int) -> ExperimentConfig:
    n_list = spec.n_list or ((spec.n,) if spec.n else (default_n,))
    return ExperimentConfig(
        n_list=n_list,
        replications=spec.replications,
        seed=spec.seed,
        max_n=spec.n,
        threads=spec.threads,
    )


def _simulate(spec: RunSpec, D, dist) -> list[dict]:
    if spec.experiment == "slln":
        r = run_slln(D, dist, _experiment_config(spec, 1000))
        return [{"n": n, "mean_abs_error": e, "t0": r.t0} for n, e in zip(r.n_list, r.mean_abs_error)]
    if spec.experiment == "clt":
        r = run_clt(D, dist, _experiment_config(spec, 1000))
        return [
            {"replication": i, "z": z, "n": r.n, "t0": r.t0, "sigma2": r.sigma2, "ks_stat": r.ks_stat}
            for i, z in enumerate(r.z)
        ]
    if spec.experiment == "lil":
        r = run_lil(D, dist, _experiment_config(spec, 10**4))
        return [
            {"n": n, "scaled": s, "lil_c": r.lil_c, "t0": r.t0, "running_max": r.running_max, "running_min": r.running_min}
            for n, s in zip(r.checkpoints, r.scaled)
        ]
    cfg = _experiment_config(spec, 100)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ExactModeUnavailable)
        r = run_ld(D, dist, spec.x, cfg)
    for w in caught:
        print(json.dumps({"warning": type(w.message).__name__, "message": str(w.message)}), file=sys.stderr)
    return [
        {
            "n": n, "prob": p, "log_prob": lp, "rate": rt, "ci_lower": lo, "ci_upper": hi,
            "sup_rate": r.sup_rate, "theory": r.theory, "exact": r.exact,
        }
        for n, p, lp, rt, lo, hi in zip(r.n_list, r.prob, r.log_prob, r.rate, r.ci_lower, r.ci_upper)
    ]


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(rows: list[dict], fmt: str) -> str:
    """Rows as CSV (17 significant digits, so floats round-trip) or JSON."""
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow(_cell(v) for v in row.values())
    return buf.getvalue()


def run(spec: RunSpec) -> int:
    """Execute ``spec`` and write its report; returns the exit status."""
    try:
        D = resolve_deviation(spec.deviation) if spec.deviation else None
        dist = resolve_distribution(spec.distribution) if spec.distribution else None
    except ValueError as exc:
        print(f"devmeans: error: {exc}", file=sys.stderr)
        return 2
    try:
        rows = _rows(spec, D, dist)
    except (DevMeansError, ValueError, ArithmeticError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    text = render(rows, spec.format)
    if spec.output:
        with open(spec.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if spec.command == "verify-paper":
        return 0 if all(r["passed"] for r in rows) else 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_args(argv))
