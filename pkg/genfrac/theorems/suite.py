"""The verification suite.

Every check is a function registered on the ``checks`` registry under its theorem
id, in the order the reports are produced. ``run_full_suite`` walks the grid
(kernel, function, alpha, interval) and calls the registered checks for every cell;
a check raising an error turns into a failed report and the batch goes on.
"""
import logging
import math
from collections.abc import Callable, Collection, Sequence
from dataclasses import dataclass
from typing import Optional

from genfrac.config import SuiteConfig
from genfrac.constants import Theorem
from genfrac.derivative import order_value
from genfrac.errors import GenFracError, InvalidArgumentError, KernelValidationError
from genfrac.expr import BinaryOp, ExprTree, combine, constant, parse
from genfrac.integral import (
    check_D_of_I,
    check_I_of_D,
    check_linearity_properties,
    check_one_sign,
    integral_mean_value,
    integration_by_parts_residual,
)
from genfrac.kernel import Kernel, ensure_admissible, parse_kernel
from genfrac.theorems.record import ReportRecord, TheoremReport
from genfrac.theorems.rules import (
    check_antiderivative_identity,
    check_boundary_limit,
    check_chain_rule,
    check_constant_rule,
    check_equivalence,
    check_linearity,
    check_power_rule,
    check_prior_reduction,
    check_product_rule,
    check_quotient_rule,
    summarize,
)
from genfrac.theorems.witness import mean_value_slope, mvt_find_c, rolle_find_c

DEFAULT_KERNELS: tuple[str, ...] = ("identity", "power:2", "exp", "log1p")
DEFAULT_FUNCTIONS: tuple[str, ...] = (
    "x^2",
    "sin(x)",
    "exp(2*x)",
    "ln(1+x)",
    "1/(1+x^2)",
    "x*sin(x)",
)
DEFAULT_ALPHAS: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
DEFAULT_INTERVALS: tuple[tuple[float, float], ...] = ((0.5, 2.5),)

POWER_RULE_EXPONENTS: tuple[float, ...] = (-1.0, 0.5, 1.0, 2.0, 3.0)
CONSTANT_RULE_VALUE: float = 3.0
LINEARITY_WEIGHTS: tuple[float, float] = (2.0, -3.0)
HOMOGENEITY_FACTOR: float = 2.5

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class SuiteCase:
    """One cell of the grid, as seen by a check."""

    f: ExprTree

    # Partner function of the two-function identities: the next function of the
    # grid, cyclically (f itself when the grid has a single function).
    g: ExprTree

    kernel: Kernel
    alpha: float
    interval: tuple[float, float]
    points: tuple[float, ...]
    cfg: SuiteConfig


Check = Callable[[SuiteCase], list[TheoremReport]]


@dataclass(frozen=True)
class CheckEntry:
    theorem: str
    check: Check

    # A check which does not depend on f only runs for the first function of the
    # grid, one which does not depend on the interval only for the first interval.
    per_function: bool = True
    per_interval: bool = True

    def runs_for(self, function_index: int, interval_index: int) -> bool:
        if not self.per_function and function_index > 0:
            return False
        return self.per_interval or interval_index == 0


class CheckRegistry:
    """Map of theorem ids to the checks producing their reports."""

    def __init__(self) -> None:
        self._checks: dict[str, CheckEntry] = {}

    def register(
        self, theorem: str, *, per_function: bool = True, per_interval: bool = True
    ) -> Callable[[Check], Check]:
        def decorator(check: Check) -> Check:
            if theorem in self._checks:
                msg = f"a check is already registered for {theorem!r}"
                raise ValueError(msg)
            self._checks[theorem] = CheckEntry(
                theorem, check, per_function, per_interval
            )
            return check

        return decorator

    @property
    def theorems(self) -> tuple[str, ...]:
        return tuple(self._checks)

    def select(self, theorems: Optional[Collection[str]]) -> list[CheckEntry]:
        """Return the registered checks in order, restricted to *theorems*."""
        if theorems is None:
            return list(self._checks.values())
        unknown = sorted(set(theorems) - set(self._checks))
        if unknown:
            msg = f"unknown theorem(s): {', '.join(unknown)}"
            raise InvalidArgumentError(msg)
        return [entry for name, entry in self._checks.items() if name in theorems]


checks = CheckRegistry()


def evaluation_points(interval: tuple[float, float], count: int) -> tuple[float, ...]:
    """*count* equally spaced points strictly inside *interval*."""
    a, b = interval
    return tuple(a + (b - a) * (i + 1) / (count + 1) for i in range(count))


def _scaled(residual: float, reference: float) -> float:
    return residual / (1.0 + abs(reference))


@checks.register(Theorem.LINEARITY)
def _linearity(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_linearity(
            case.f,
            case.g,
            case.kernel,
            case.alpha,
            LINEARITY_WEIGHTS,
            case.points,
            case.cfg.tolerance,
        )
    ]


@checks.register(Theorem.POWER, per_function=False)
def _power(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_power_rule(n, case.kernel, case.alpha, case.points)
        for n in POWER_RULE_EXPONENTS
    ]


@checks.register(Theorem.CONSTANT, per_function=False)
def _constant(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_constant_rule(
            CONSTANT_RULE_VALUE,
            case.kernel,
            case.alpha,
            case.points,
            case.cfg.tolerance,
        )
    ]


@checks.register(Theorem.PRODUCT)
def _product(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_product_rule(
            case.f, case.g, case.kernel, case.alpha, case.points, case.cfg.tolerance
        )
    ]


@checks.register(Theorem.QUOTIENT)
def _quotient(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_quotient_rule(
            case.f,
            case.g,
            case.kernel,
            case.alpha,
            case.points,
            case.cfg.tolerance,
            case.cfg.orientation,
        )
    ]


@checks.register(Theorem.CHAIN)
def _chain(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_chain_rule(
            case.f, case.g, case.kernel, case.alpha, case.points, case.cfg.tolerance
        )
    ]


@checks.register(Theorem.EQUIVALENCE)
def _equivalence(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_equivalence(
            case.f,
            case.kernel,
            case.alpha,
            case.points,
            case.cfg.numeric,
            case.cfg.limit_tolerance,
        )
    ]


@checks.register(Theorem.ANTIDERIVATIVE, per_function=False)
def _antiderivative(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_antiderivative_identity(
            case.kernel, case.alpha, case.points, case.cfg.tolerance
        )
    ]


@checks.register(Theorem.REDUCTION)
def _reduction(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_prior_reduction(
            case.f,
            case.kernel,
            case.alpha,
            case.points,
            case.cfg.numeric,
            case.cfg.limit_tolerance,
        )
    ]


@checks.register(Theorem.BOUNDARY, per_interval=False)
def _boundary(case: SuiteCase) -> list[TheoremReport]:
    return [
        check_boundary_limit(
            case.f, case.kernel, case.alpha, case.cfg.numeric, case.cfg.limit_tolerance
        )
    ]


def mean_value_auxiliary(
    f: ExprTree, kernel: Kernel, alpha: float, a: float, b: float
) -> ExprTree:
    """Return ``G = f - slope k^alpha / alpha`` with the mean value slope of f on
    [a, b]; ``G(a) = G(b)`` holds by construction, so Rolle's theorem applies."""
    slope = mean_value_slope(f, kernel, alpha, a, b)
    antiderivative = combine(
        BinaryOp.DIV,
        combine(BinaryOp.POW, kernel.k, constant(alpha)),
        constant(alpha),
    )
    return combine(
        BinaryOp.SUB, f, combine(BinaryOp.MUL, constant(slope), antiderivative)
    )


@checks.register(Theorem.ROLLE)
def _rolle(case: SuiteCase) -> list[TheoremReport]:
    a, b = case.interval
    auxiliary = mean_value_auxiliary(case.f, case.kernel, case.alpha, a, b)
    return [rolle_find_c(auxiliary, case.kernel, case.alpha, a, b, case.cfg)]


@checks.register(Theorem.MVT)
def _mvt(case: SuiteCase) -> list[TheoremReport]:
    a, b = case.interval
    return [mvt_find_c(case.f, case.kernel, case.alpha, a, b, case.cfg)]


def _record(
    case: SuiteCase, theorem: str, tolerance: float, with_g: bool = False
) -> ReportRecord:
    inputs = summarize(
        case.kernel,
        case.alpha,
        case.f,
        case.g if with_g else None,
        case.points,
        interval=list(case.interval),
    )
    return ReportRecord(theorem, tolerance, inputs)


@checks.register(Theorem.D_OF_I)
def _d_of_i(case: SuiteCase) -> list[TheoremReport]:
    a, _ = case.interval
    record = _record(case, Theorem.D_OF_I, case.cfg.inverse_tolerance)
    for t in case.points:
        try:
            residual = check_D_of_I(case.f, case.kernel, case.alpha, a, t, case.cfg)
            record.add_residual(t, _scaled(residual, case.f(t)))
        except GenFracError as exc:
            record.add_error(t, exc)
    return [record.build()]


@checks.register(Theorem.I_OF_D)
def _i_of_d(case: SuiteCase) -> list[TheoremReport]:
    a, _ = case.interval
    record = _record(case, Theorem.I_OF_D, case.cfg.inverse_tolerance)
    for t in case.points:
        try:
            residual = check_I_of_D(case.f, case.kernel, case.alpha, a, t, case.cfg)
            record.add_residual(t, _scaled(residual, case.f(t) - case.f(a)))
        except GenFracError as exc:
            record.add_error(t, exc)
    return [record.build()]


@checks.register(Theorem.PARTS)
def _parts(case: SuiteCase) -> list[TheoremReport]:
    a, b = case.interval
    record = _record(
        case, Theorem.PARTS, case.cfg.inverse_tolerance, with_g=True
    )
    residual = integration_by_parts_residual(
        case.f, case.g, case.kernel, case.alpha, a, b, case.cfg
    )
    boundary = case.f(b) * case.g(b) - case.f(a) * case.g(a)
    record.add_residual(None, _scaled(residual, boundary))
    return [record.build()]


@checks.register(Theorem.INTEGRAL_MEAN)
def _integral_mean(case: SuiteCase) -> list[TheoremReport]:
    a, b = case.interval
    record = _record(
        case, Theorem.INTEGRAL_MEAN, case.cfg.tolerance, with_g=True
    )
    g: ExprTree = case.g
    try:
        check_one_sign(g, a, b, case.cfg.root.sign_samples)
    except GenFracError as exc:
        record.add_note(f"{exc}, using g = 1")
        g = constant(1.0)
    witness = integral_mean_value(case.f, g, case.kernel, case.alpha, a, b, case.cfg)
    record.add_residual(witness.x0, witness.residual)
    slack = case.cfg.tolerance * (1.0 + abs(witness.xi_value))
    lower = witness.lower_bound - slack
    if not lower <= witness.xi_value <= witness.upper_bound + slack:
        record.add_note("the mean lies outside the sampled range of f")
        record.add_residual(None, math.inf, "bounds")
    if not witness.bracketed:
        record.add_note("no sign change of f - xi, x0 minimizes |f(x0) - xi|")
    record.set_detail("xi", witness.xi_value)
    record.set_detail("lower_bound", witness.lower_bound)
    record.set_detail("upper_bound", witness.upper_bound)
    return [record.build(witness=witness.x0)]


@checks.register(Theorem.INTEGRAL_PROPERTIES)
def _integral_properties(case: SuiteCase) -> list[TheoremReport]:
    a, b = case.interval
    record = _record(
        case, Theorem.INTEGRAL_PROPERTIES, case.cfg.tolerance, with_g=True
    )
    residuals = check_linearity_properties(
        case.f,
        case.g,
        case.kernel,
        case.alpha,
        a,
        b,
        0.5 * (a + b),
        HOMOGENEITY_FACTOR,
        case.cfg,
    )
    for name, residual in residuals.items():
        record.add_residual(None, _scaled(residual, residuals.reversed_value), name)
    record.set_detail("reversed_value", residuals.reversed_value)
    return [record.build()]


def _failed_report(case: SuiteCase, theorem: str, exc: Exception) -> TheoremReport:
    record = ReportRecord(
        theorem,
        case.cfg.tolerance,
        summarize(case.kernel, case.alpha, case.f, points=case.points),
    )
    if isinstance(exc, GenFracError):
        record.add_error(None, exc, theorem)
    else:
        record.add_note(f"{type(exc).__name__}: {exc}")
        record.add_residual(None, math.inf)
    return record.build()


def _run_check(case: SuiteCase, entry: CheckEntry) -> list[TheoremReport]:
    try:
        return entry.check(case)
    except (GenFracError, ArithmeticError, ValueError) as exc:
        logger.warning(
            "theorem=%s kernel=%s alpha=%g error=%s",
            entry.theorem,
            case.kernel.name,
            case.alpha,
            exc,
        )
        return [_failed_report(case, entry.theorem, exc)]


def _kernel_error(
    kernel: Kernel, interval: tuple[float, float]
) -> Optional[KernelValidationError]:
    try:
        ensure_admissible(kernel, *interval)
    except KernelValidationError as exc:
        return exc
    return None


def default_grid() -> tuple[list[ExprTree], list[Kernel]]:
    """Parse the default functions and kernels."""
    return (
        [parse(text) for text in DEFAULT_FUNCTIONS],
        [parse_kernel(spec) for spec in DEFAULT_KERNELS],
    )


def run_full_suite(
    functions: Sequence[ExprTree],
    kernels: Sequence[Kernel],
    alphas: Sequence[float],
    intervals: Sequence[tuple[float, float]],
    cfg: SuiteConfig,
    theorems: Optional[Collection[str]] = None,
) -> list[TheoremReport]:
    """Run the registered checks over the grid.

    The reports come out ordered by kernel, function, alpha and theorem (the
    registration order), so two runs with the same inputs give the same list. A
    kernel which is not admissible on an interval fails every check there.
    """
    selected = checks.select(theorems)
    for a, b in intervals:
        if not a < b:
            msg = f"the interval [{a!r}, {b!r}] is empty or out of order"
            raise InvalidArgumentError(msg)
    for alpha in alphas:
        order_value(alpha)
    reports: list[TheoremReport] = []
    for kernel in kernels:
        kernel_errors = [_kernel_error(kernel, interval) for interval in intervals]
        for f_index, f in enumerate(functions):
            g = functions[(f_index + 1) % len(functions)]
            for alpha in alphas:
                for i_index, interval in enumerate(intervals):
                    points = evaluation_points(interval, cfg.points_per_interval)
                    case = SuiteCase(f, g, kernel, float(alpha), interval, points, cfg)
                    for entry in selected:
                        if not entry.runs_for(f_index, i_index):
                            continue
                        error = kernel_errors[i_index]
                        if error is not None:
                            reports.append(_failed_report(case, entry.theorem, error))
                            continue
                        reports.extend(_run_check(case, entry))
        logger.info(
            "kernel=%s reports=%d failed=%d",
            kernel.name,
            len(reports),
            sum(not report.passed for report in reports),
        )
    return reports
