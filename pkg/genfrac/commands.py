"""Command handlers of the command line front end.

``deriv`` evaluates the derivative at a point, both from the closed form and from
the limit definition. ``integ`` computes the integral on an interval. ``verify`` runs
the verification suite. ``table`` prints the derivatives of the special functions,
``rolle`` and ``mvt`` look for the witness of Rolle's and of the mean value theorem.

Every handler takes a ``RunSpec`` and returns a ``CommandOutput``; expected failures
are raised as ``GenFracError`` subclasses and turned into exit codes by the caller.
"""
import logging
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from genfrac.config import SuiteConfig
from genfrac.constants import SUMMARY_LINE, ExitCode
from genfrac.derivative import d_alpha_closed, d_alpha_limit, order_value, special_table
from genfrac.errors import (
    ConvergenceError,
    DomainError,
    GenFracError,
    InvalidArgumentError,
)
from genfrac.expr import ExprTree, parse
from genfrac.integral import i_alpha, require_converged
from genfrac.kernel import Kernel, ensure_admissible, parse_kernel
from genfrac.report import CommandOutput, OutputFormat
from genfrac.theorems import TheoremReport, mvt_find_c, rolle_find_c, run_full_suite
from genfrac.theorems.suite import (
    DEFAULT_ALPHAS,
    DEFAULT_FUNCTIONS,
    DEFAULT_INTERVALS,
    DEFAULT_KERNELS,
)

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class RunSpec:
    command: str
    f: Optional[str] = None
    g: Optional[str] = None
    kernel: Optional[str] = None

    # Left end of the validity interval of a kernel given as an expression.
    kernel_start: float = 0.0

    alpha: Optional[float] = None

    # Evaluation point of ``deriv`` and ``table``.
    t: Optional[float] = None

    # Interval of ``integ``, ``rolle``, ``mvt``, and of ``verify`` when given.
    a: Optional[float] = None
    b: Optional[float] = None

    # Parameters of the special functions of ``table``.
    param_a: float = 1.0
    param_b: float = 1.0

    theorems: tuple[str, ...] = ()
    alpha_grid: tuple[float, ...] = ()
    output_format: str = OutputFormat.TABLE
    config: SuiteConfig = field(default_factory=SuiteConfig)

    def __post_init__(self) -> None:
        if self.alpha is not None:
            order_value(self.alpha)
        for alpha in self.alpha_grid:
            order_value(alpha)
        if self.a is not None and self.b is not None and self.a > self.b:
            msg = f"the interval [{self.a!r}, {self.b!r}] is out of order"
            raise InvalidArgumentError(msg)

    def summary(self) -> dict[str, Any]:
        """The inputs of the run, as recorded in the output."""
        data = asdict(self)
        data.pop("output_format")
        data["theorems"] = list(self.theorems)
        data["alpha_grid"] = list(self.alpha_grid)
        return {key: value for key, value in data.items() if value is not None}


Handler = Callable[[RunSpec], CommandOutput]

COMMANDS: dict[str, Handler] = {}


def command(name: str) -> Callable[[Handler], Handler]:
    """Register the decorated function as the handler of *name*."""

    def decorator(handler: Handler) -> Handler:
        COMMANDS[name] = handler
        return handler

    return decorator


def run_command(spec: RunSpec) -> CommandOutput:
    try:
        handler = COMMANDS[spec.command]
    except KeyError:
        msg = f"unknown command: {spec.command!r}"
        raise InvalidArgumentError(msg) from None
    output = handler(spec)
    logger.info("command=%s exit=%d", spec.command, output.exit_code)
    return output


def _require(value: Optional[Any], flag: str, name: str) -> Any:
    if value is None:
        msg = f"{name} needs {flag}"
        raise InvalidArgumentError(msg)
    return value


def _function(spec: RunSpec) -> ExprTree:
    return parse(_require(spec.f, "--f", spec.command))


def _kernel(spec: RunSpec) -> Kernel:
    text = _require(spec.kernel, "--kernel", spec.command)
    return parse_kernel(text, spec.kernel_start, spec.config.numeric.exp_floor)


def _alpha(spec: RunSpec) -> float:
    return order_value(_require(spec.alpha, "--alpha", spec.command))


def _interval(spec: RunSpec) -> tuple[float, float]:
    return (
        _require(spec.a, "--a", spec.command),
        _require(spec.b, "--b", spec.command),
    )


@command("deriv")
def cmd_deriv(spec: RunSpec) -> CommandOutput:
    f = _function(spec)
    kernel = _kernel(spec)
    alpha = _alpha(spec)
    t = _require(spec.t, "--t", spec.command)
    if t <= kernel.validity_start:
        start = kernel.validity_start
        msg = f"t={t!r} is not right of the kernel validity start {start!r}"
        raise DomainError(msg)
    ensure_admissible(kernel, kernel.validity_start, t)
    closed = d_alpha_closed(f, kernel, alpha, t)
    limit = d_alpha_limit(f, kernel, alpha, t, spec.config.numeric)
    if not limit.converged:
        msg = (
            f"the limit at t={t!r} did not converge "
            f"(value {limit.value:.17g}, error estimate {limit.error_estimate:.3e})"
        )
        raise ConvergenceError(msg)
    result = {
        "t": t,
        "closed": closed,
        "limit": limit.value,
        "error_estimate": limit.error_estimate,
        "discrepancy": abs(limit.value - closed),
        "steps": len(limit.steps_used),
    }
    return CommandOutput(spec.command, spec.summary(), [result])


@command("integ")
def cmd_integ(spec: RunSpec) -> CommandOutput:
    f = _function(spec)
    kernel = _kernel(spec)
    alpha = _alpha(spec)
    a, b = _interval(spec)
    ensure_admissible(kernel, a, b)
    result = i_alpha(f, kernel, alpha, a, b, spec.config.quad)
    value = require_converged(result, "integ")
    row = {
        "a": a,
        "b": b,
        "value": value,
        "error_estimate": result.error_estimate,
        "subdivisions": result.subdivisions,
        "substituted": result.substituted,
    }
    output = CommandOutput(spec.command, spec.summary(), [row])
    if result.substituted:
        output.summary_lines.append(
            "singular endpoint: integrated in u = k(x)^alpha / alpha"
        )
    return output


def _report_row(report: TheoremReport) -> dict[str, Any]:
    inputs = report.inputs
    return {
        "theorem": report.theorem,
        "kernel": inputs.get("kernel"),
        "f": inputs.get("f"),
        "g": inputs.get("g"),
        "alpha": inputs.get("alpha"),
        "max_residual": report.max_residual,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "witness": report.witness,
    }


def summarize_reports(
    reports: list[TheoremReport],
) -> tuple[dict[str, Any], list[str]]:
    """Return the per theorem summary of a suite run and its printed lines."""
    per_theorem: dict[str, dict[str, Any]] = {}
    for report in reports:
        entry = per_theorem.setdefault(
            report.theorem, {"max_residual": 0.0, "passed": 0, "total": 0}
        )
        entry["max_residual"] = max(entry["max_residual"], report.max_residual)
        entry["passed"] += report.passed
        entry["total"] += 1
    lines = [
        SUMMARY_LINE.format(
            theorem=theorem,
            residual=entry["max_residual"],
            passed=entry["passed"],
            total=entry["total"],
        )
        for theorem, entry in per_theorem.items()
    ]
    failed = sum(not report.passed for report in reports)
    summary = {
        "theorems": per_theorem,
        "reports": len(reports),
        "failed": failed,
        "passed": failed == 0,
    }
    return summary, lines


@command("verify")
def cmd_verify(spec: RunSpec) -> CommandOutput:
    if spec.f is not None:
        texts = [spec.f] if spec.g is None else [spec.f, spec.g]
    else:
        texts = list(DEFAULT_FUNCTIONS)
    functions = [parse(text) for text in texts]
    kernel_specs = [spec.kernel] if spec.kernel is not None else list(DEFAULT_KERNELS)
    exp_floor = spec.config.numeric.exp_floor
    kernels = [
        parse_kernel(text, spec.kernel_start, exp_floor) for text in kernel_specs
    ]
    if spec.alpha_grid:
        alphas = list(spec.alpha_grid)
    elif spec.alpha is not None:
        alphas = [spec.alpha]
    else:
        alphas = list(DEFAULT_ALPHAS)
    if spec.a is not None or spec.b is not None:
        intervals = [_interval(spec)]
    else:
        intervals = list(DEFAULT_INTERVALS)
    reports = run_full_suite(
        functions,
        kernels,
        alphas,
        intervals,
        spec.config,
        spec.theorems or None,
    )
    summary, lines = summarize_reports(reports)
    output = CommandOutput(
        spec.command,
        spec.summary(),
        [report.to_dict() for report in reports],
        summary,
        rows=[_report_row(report) for report in reports],
        summary_lines=lines,
    )
    if not summary["passed"]:
        output.exit_code = ExitCode.VERIFICATION_FAILED
    return output


@command("table")
def cmd_table(spec: RunSpec) -> CommandOutput:
    kernel = _kernel(spec)
    alpha = _alpha(spec)
    x = _require(spec.t, "--x", spec.command)
    rows = []
    for row in special_table(alpha, kernel, x, spec.param_a, spec.param_b):
        limit: Optional[float] = None
        note = row.error
        try:
            estimate = d_alpha_limit(
                parse(row.expression), kernel, alpha, x, spec.config.numeric
            )
            limit = estimate.value
        except GenFracError as exc:
            note = note or f"limit: {exc}"
        discrepancy = (
            abs(limit - row.closed_value)
            if limit is not None and row.closed_value is not None
            else None
        )
        rows.append(
            {
                "function": row.label,
                "expression": row.expression,
                "closed": row.closed_value,
                "limit": limit,
                "discrepancy": discrepancy,
                "error": note,
            }
        )
    return CommandOutput(spec.command, spec.summary(), rows)


def _witness_output(spec: RunSpec, report: TheoremReport) -> CommandOutput:
    a, b = _interval(spec)
    row = {
        "theorem": report.theorem,
        "a": a,
        "b": b,
        "c": report.witness,
        "residual": report.max_residual,
        "lhs": report.details.get("lhs"),
        "rhs": report.details.get("rhs"),
        "passed": report.passed,
    }
    output = CommandOutput(
        spec.command,
        spec.summary(),
        [row],
        {"notes": list(report.notes)},
        summary_lines=list(report.notes),
    )
    if not report.passed:
        output.exit_code = ExitCode.VERIFICATION_FAILED
    return output


@command("rolle")
def cmd_rolle(spec: RunSpec) -> CommandOutput:
    f = _function(spec)
    kernel = _kernel(spec)
    alpha = _alpha(spec)
    a, b = _interval(spec)
    ensure_admissible(kernel, a, b)
    return _witness_output(spec, rolle_find_c(f, kernel, alpha, a, b, spec.config))


@command("mvt")
def cmd_mvt(spec: RunSpec) -> CommandOutput:
    f = _function(spec)
    kernel = _kernel(spec)
    alpha = _alpha(spec)
    a, b = _interval(spec)
    ensure_admissible(kernel, a, b)
    return _witness_output(spec, mvt_find_c(f, kernel, alpha, a, b, spec.config))
