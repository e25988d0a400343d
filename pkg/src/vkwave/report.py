"""Scenario execution and report serialization.

run_scenario executes every check of a validated scenario in listed order
(a failing check never aborts the rest) and collects one CheckResult per
law-resolved check.  Residuals are scaled: each raw residual is divided by
the larger of 1 and the natural magnitude of the terms entering it, so
tolerances compare like with like across parameter regimes.

emit_report serializes a Report to json, csv, or a fixed-width human
table.  Emitted bytes are deterministic for a given scenario and seed;
the wall-clock duration is kept on the Report object only and never
serialized.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass

import numpy as np

from .balance import balance_residual
from .conservation import conservation_divergence
from .errors import ValidationError
from .jumps import (
    amplitude_relation_residuals,
    amplitude_relation_scales,
    balance_jump_residual,
    balance_jump_scale,
    closed_form_jump_residual,
    dynamic_jump_residuals,
    dynamic_jump_scales,
    extract_jumps,
)
from .scenario import Scenario, build_field, sample_front_point, scenario_to_dict
from .solutions import pde_residual, pde_term_scales
from .version import __version__


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one executed check (one row in the report)."""

    name: str
    kind: str
    status: str  # "pass" | "fail" | "error"
    residual: float | None
    tolerance: float | None
    detail: str = ""


@dataclass(frozen=True)
class Report:
    """All results of one scenario run."""

    scenario: dict
    results: tuple[CheckResult, ...]
    version: str
    duration_seconds: float

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.status == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status == "fail")

    @property
    def errors(self) -> int:
        return sum(1 for r in self.results if r.status == "error")

    @property
    def exit_code(self) -> int:
        if self.errors:
            return 2
        return 1 if self.failed else 0


def _status(residual: float, tol: float) -> str:
    return "pass" if residual < tol else "fail"


def _run_pde_residual(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = check.tolerance if check.tolerance is not None else scenario.tolerances.analytic
    if check.points is not None:
        pts = np.array(check.points, dtype=np.float64)
    else:
        n = check.samples if check.samples is not None else 20
        pts = rng.uniform(-1.0, 1.0, (n, 3))
    jet = field.jet(pts)
    r1, r2 = pde_residual(jet, field.params)
    s1, s2 = pde_term_scales(jet, field.params)
    scaled = max(
        float(np.max(np.abs(r1) / np.maximum(1.0, s1))),
        float(np.max(np.abs(r2) / np.maximum(1.0, s2))),
    )
    return [
        CheckResult(
            name="pde_residual",
            kind="pde_residual",
            status=_status(scaled, tol),
            residual=scaled,
            tolerance=tol,
            detail=f"max over {len(pts)} points",
        )
    ]


def _sample_off_front(field, rng, n: int, h: float) -> np.ndarray:
    """Uniform points in [-1,1]^3 kept clear of the front by the FD margin."""
    front = getattr(field, "front", None)
    margin = max(0.05, 8.0 * h)
    pts = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 200 * n + 100:
            raise ValidationError(
                "could not sample points clear of the front; the front may "
                "nearly fill the sampling box"
            )
        cand = rng.uniform(-1.0, 1.0, 3)
        if front is not None:
            g = float(front.value(cand))
            grad = np.asarray(front.spatial_gradient(cand), dtype=np.float64)
            slope = float(np.hypot(grad[0], grad[1])) + abs(
                float(front.time_derivative(cand))
            )
            if slope > 0.0 and abs(g) / slope <= margin:
                continue
        pts.append(cand)
    return np.array(pts)


def _run_conservation(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = (
        check.tolerance
        if check.tolerance is not None
        else scenario.tolerances.finite_difference
    )
    h = check.step if check.step is not None else 1e-3
    if check.points is not None:
        pts = np.array(check.points, dtype=np.float64)
    else:
        pts = _sample_off_front(field, rng, check.samples if check.samples else 3, h)
    results = []
    for name in check.laws:
        worst = 0.0
        for k in range(pts.shape[0]):
            est = conservation_divergence(field, name, pts[k], h=h)
            worst = max(worst, abs(est.residual) / max(1.0, est.scale))
        results.append(
            CheckResult(
                name=f"conservation[{name}]",
                kind="conservation",
                status=_status(worst, tol),
                residual=worst,
                tolerance=tol,
                detail=f"h={h:g}, {pts.shape[0]} points",
            )
        )
    return results


def _front_records(field, check, rng):
    times = check.times if check.times is not None else (0.0,)
    n = check.samples if check.samples is not None else 3
    records = []
    for t in times:
        for _ in range(n):
            draw = float(rng.uniform(-1.0, 1.0))
            point = sample_front_point(field.front, t, draw)
            records.append(extract_jumps(field, point))
    return records


def _run_dynamic_jumps(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = check.tolerance if check.tolerance is not None else scenario.tolerances.analytic
    records = _front_records(field, check, rng)
    worst = 0.0
    for rec in records:
        r_w, r_phi = dynamic_jump_residuals(rec, field.params)
        s_w, s_phi = dynamic_jump_scales(rec, field.params)
        worst = max(worst, abs(r_w) / max(1.0, s_w), abs(r_phi) / max(1.0, s_phi))
    return [
        CheckResult(
            name="dynamic_jumps",
            kind="dynamic_jumps",
            status=_status(worst, tol),
            residual=worst,
            tolerance=tol,
            detail=f"{len(records)} front points",
        )
    ]


def _run_balance_jump(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = check.tolerance if check.tolerance is not None else scenario.tolerances.analytic
    records = _front_records(field, check, rng)
    results = []
    for name in check.laws:
        worst = 0.0
        for rec in records:
            r = balance_jump_residual(name, rec, field.params)
            s = balance_jump_scale(name, rec, field.params)
            worst = max(worst, abs(r) / max(1.0, s))
        results.append(
            CheckResult(
                name=f"balance_jump[{name}]",
                kind="balance_jump",
                status=_status(worst, tol),
                residual=worst,
                tolerance=tol,
                detail=f"{len(records)} front points",
            )
        )
    return results


def _run_closed_form_jump(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = check.tolerance if check.tolerance is not None else scenario.tolerances.analytic
    records = _front_records(field, check, rng)
    results = []
    for name in check.laws:
        try:
            worst = 0.0
            for rec in records:
                r = closed_form_jump_residual(name, rec, field.params)
                s = balance_jump_scale(name, rec, field.params)
                worst = max(worst, abs(r) / max(1.0, s))
            results.append(
                CheckResult(
                    name=f"closed_form_jump[{name}]",
                    kind="closed_form_jump",
                    status=_status(worst, tol),
                    residual=worst,
                    tolerance=tol,
                    detail=f"{len(records)} front points",
                )
            )
        except Exception as exc:
            results.append(
                CheckResult(
                    name=f"closed_form_jump[{name}]",
                    kind="closed_form_jump",
                    status="error",
                    residual=None,
                    tolerance=tol,
                    detail=f"{type(exc).__name__}: {exc}",
                )
            )
    return results


def _run_wave_relations(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = check.tolerance if check.tolerance is not None else scenario.tolerances.analytic
    r1, r2 = amplitude_relation_residuals(field)
    s1, s2 = amplitude_relation_scales(field)
    scaled = max(abs(r1) / max(1.0, s1), abs(r2) / max(1.0, s2))
    return [
        CheckResult(
            name="wave_relations",
            kind="wave_relations",
            status=_status(scaled, tol),
            residual=scaled,
            tolerance=tol,
            detail=f"residuals ({r1:.3e}, {r2:.3e})",
        )
    ]


def _run_balance(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    tol = check.tolerance if check.tolerance is not None else scenario.tolerances.quadrature
    region = check.region if check.region is not None else scenario.region
    times = check.times if check.times is not None else (0.0,)
    results = []
    for name in check.laws:
        worst = 0.0
        quad_err = 0.0
        for t in times:
            rep = balance_residual(field, name, region, t, check.dt)
            scale = max(1.0, abs(rep.time_derivative), abs(rep.flux_integral))
            worst = max(worst, abs(rep.residual) / scale)
            quad_err = max(quad_err, rep.quadrature_error)
        results.append(
            CheckResult(
                name=f"balance[{name}]",
                kind="balance",
                status=_status(worst, tol),
                residual=worst,
                tolerance=tol,
                detail=f"quadrature error {quad_err:.2e}",
            )
        )
    return results


_RUNNERS = {
    "pde_residual": _run_pde_residual,
    "conservation": _run_conservation,
    "dynamic_jumps": _run_dynamic_jumps,
    "balance_jump": _run_balance_jump,
    "closed_form_jump": _run_closed_form_jump,
    "wave_relations": _run_wave_relations,
    "balance": _run_balance,
}


def _run_check(scenario: Scenario, field, check, rng) -> list[CheckResult]:
    try:
        return _RUNNERS[check.kind](scenario, field, check, rng)
    except Exception as exc:
        return [
            CheckResult(
                name=check.kind,
                kind=check.kind,
                status="error",
                residual=None,
                tolerance=None,
                detail=f"{type(exc).__name__}: {exc}",
            )
        ]


def run_scenario(scenario: Scenario) -> Report:
    """Build the scenario's field and execute its checks in order."""
    start = time.perf_counter()
    field = build_field(scenario)
    rng = np.random.default_rng(scenario.seed)
    results: list[CheckResult] = []
    for check in scenario.checks:
        results.extend(_run_check(scenario, field, check, rng))
    return Report(
        scenario=scenario_to_dict(scenario),
        results=tuple(results),
        version=__version__,
        duration_seconds=time.perf_counter() - start,
    )


def _emit_value(v):
    if v is None:
        return None
    return v if math.isfinite(v) else repr(v)


def _emit_json(report: Report) -> bytes:
    payload = {
        "version": report.version,
        "scenario": report.scenario,
        "checks": [
            {
                "name": r.name,
                "kind": r.kind,
                "status": r.status,
                "residual": _emit_value(r.residual),
                "tolerance": _emit_value(r.tolerance),
                "detail": r.detail,
            }
            for r in report.results
        ],
        "summary": {
            "total": len(report.results),
            "passed": report.passed,
            "failed": report.failed,
            "errors": report.errors,
        },
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def _emit_csv(report: Report) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "kind", "status", "residual", "tolerance", "detail"])
    for r in report.results:
        writer.writerow(
            [
                r.name,
                r.kind,
                r.status,
                "" if r.residual is None else repr(r.residual),
                "" if r.tolerance is None else repr(r.tolerance),
                r.detail,
            ]
        )
    return buf.getvalue().encode("utf-8")


def _emit_human(report: Report) -> bytes:
    name_w = max([len(r.name) for r in report.results], default=10)
    name_w = min(max(name_w, 12), 44)
    header = f"{'name':<{name_w}}  {'status':<6}  {'residual':>12}  {'tolerance':>10}  detail"
    lines = [header, "-" * len(header)]
    for r in report.results:
        res = "" if r.residual is None else f"{r.residual:12.4e}"
        tol = "" if r.tolerance is None else f"{r.tolerance:10.1e}"
        lines.append(
            f"{r.name[:name_w]:<{name_w}}  {r.status:<6}  {res:>12}  {tol:>10}  {r.detail}"
        )
    lines.append(
        f"{len(report.results)} checks: {report.passed} passed, "
        f"{report.failed} failed, {report.errors} errors"
    )
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    """Serialize a report; bytes are stable across runs with equal inputs."""
    if fmt == "json":
        return _emit_json(report)
    if fmt == "csv":
        return _emit_csv(report)
    if fmt == "human":
        return _emit_human(report)
    raise ValidationError(f"unknown report format {fmt!r}; use json, csv, or human")
