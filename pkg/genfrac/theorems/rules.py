"""Residual checks of the derivative rules.

Every check evaluates both sides of an identity at the given points and records
``|left - right|`` in a ``ReportRecord``. The closed form of the derivative is used
throughout; ``check_equivalence`` and ``check_prior_reduction`` are the only checks
going through a limit, and their residuals are scaled by ``1 + |closed form|``.
"""
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from typing import Any, Optional

from genfrac.config import NumericConfig
from genfrac.constants import Orientation, Preset, Theorem
from genfrac.derivative import (
    LimitEstimate,
    Order,
    d_alpha_at_start,
    d_alpha_closed,
    d_alpha_limit,
    order_value,
)
from genfrac.errors import ConvergenceError, GenFracError, InvalidArgumentError
from genfrac.expr import (
    BinaryOp,
    ExprTree,
    combine,
    compose,
    constant,
    differentiate,
    parse,
)
from genfrac.kernel import Kernel
from genfrac.prior import PriorDefinition, katugampola_displacement_gap, prior_limit
from genfrac.theorems.record import OTHER_ORIENTATION_KEY, ReportRecord, TheoremReport

# Points where |g| is below this are skipped by the quotient rule.
QUOTIENT_DENOMINATOR_FLOOR: float = 1e-8

# Steps at which the Katugampola displacement is compared with the generalized one.
DISPLACEMENT_STEPS: tuple[float, ...] = tuple(1e-2 * 0.5**j for j in range(8))

logger = logging.getLogger(__package__)


def expression_text(tree: ExprTree) -> str:
    return tree.source or str(tree)


def summarize(
    kernel: Kernel,
    alpha: float,
    f: Optional[ExprTree] = None,
    g: Optional[ExprTree] = None,
    points: Optional[Sequence[float]] = None,
    **extra: Any,
) -> dict[str, Any]:
    """Build the inputs summary of a report."""
    inputs: dict[str, Any] = {"kernel": kernel.name, "alpha": alpha}
    if f is not None:
        inputs["f"] = expression_text(f)
    if g is not None:
        inputs["g"] = expression_text(g)
    if points is not None:
        inputs["points"] = [float(t) for t in points]
    inputs.update(extra)
    return inputs


def _each_point(
    record: ReportRecord,
    points: Iterable[float],
    residual: Callable[[float], Optional[float]],
) -> None:
    """Record ``residual(t)`` for every point; ``None`` means the point is skipped."""
    for t in points:
        try:
            value = residual(t)
        except GenFracError as exc:
            logger.debug("theorem=%s t=%.17g error=%s", record.theorem, t, exc)
            record.add_error(t, exc)
            continue
        if value is not None:
            record.add_residual(t, value)


def _relative(value: float, reference: float) -> float:
    difference = abs(value - reference)
    return difference / abs(reference) if reference != 0 else difference


def check_linearity(
    f: ExprTree,
    g: ExprTree,
    kernel: Kernel,
    alpha: Order,
    weights: tuple[float, float],
    points: Sequence[float],
    tolerance: float = 1e-8,
) -> TheoremReport:
    """``D^alpha(a f + b g) = a D^alpha f + b D^alpha g``."""
    order = order_value(alpha)
    weight_f, weight_g = weights
    combination = combine(
        BinaryOp.ADD,
        combine(BinaryOp.MUL, constant(weight_f, f.variable), f),
        combine(BinaryOp.MUL, constant(weight_g, f.variable), g),
    )
    record = ReportRecord(
        Theorem.LINEARITY,
        tolerance,
        summarize(kernel, order, f, g, points, weights=list(weights)),
    )

    def residual(t: float) -> float:
        left = d_alpha_closed(combination, kernel, order, t)
        right = weight_f * d_alpha_closed(f, kernel, order, t)
        right += weight_g * d_alpha_closed(g, kernel, order, t)
        return abs(left - right)

    _each_point(record, points, residual)
    return record.build()


def check_product_rule(
    f: ExprTree,
    g: ExprTree,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    tolerance: float = 1e-8,
) -> TheoremReport:
    """``D^alpha(f g) = f D^alpha g + g D^alpha f``."""
    order = order_value(alpha)
    product = combine(BinaryOp.MUL, f, g)
    record = ReportRecord(
        Theorem.PRODUCT, tolerance, summarize(kernel, order, f, g, points)
    )

    def residual(t: float) -> float:
        left = d_alpha_closed(product, kernel, order, t)
        right = f(t) * d_alpha_closed(g, kernel, order, t)
        right += g(t) * d_alpha_closed(f, kernel, order, t)
        return abs(left - right)

    _each_point(record, points, residual)
    return record.build()


def check_quotient_rule(
    f: ExprTree,
    g: ExprTree,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    tolerance: float = 1e-8,
    orientation: str = Orientation.CONSISTENT,
) -> TheoremReport:
    """``D^alpha(f / g) = (g D^alpha f - f D^alpha g) / g^2``.

    The transposed numerator ``f D^alpha g - g D^alpha f`` is evaluated as well; the
    *orientation* decides which of the two residuals the verdict is based on, the
    other one is kept in the report details. Points with ``|g| < 1e-8`` are skipped.
    """
    order = order_value(alpha)
    if orientation not in (Orientation.CONSISTENT, Orientation.PAPER):
        msg = f"unknown quotient orientation: {orientation!r}"
        raise InvalidArgumentError(msg)
    quotient = combine(BinaryOp.DIV, f, g)
    record = ReportRecord(
        Theorem.QUOTIENT,
        tolerance,
        summarize(kernel, order, f, g, points, orientation=orientation),
    )
    other_residuals: list[float] = []

    def residual(t: float) -> Optional[float]:
        denominator = g(t)
        if abs(denominator) < QUOTIENT_DENOMINATOR_FLOOR:
            record.add_note(f"t={t!r}: skipped, |g(t)| = {abs(denominator):.3e}")
            return None
        left = d_alpha_closed(quotient, kernel, order, t)
        df = d_alpha_closed(f, kernel, order, t)
        dg = d_alpha_closed(g, kernel, order, t)
        consistent = (denominator * df - f(t) * dg) / denominator**2
        printed = (f(t) * dg - denominator * df) / denominator**2
        if orientation == Orientation.CONSISTENT:
            other_residuals.append(abs(left - printed))
            return abs(left - consistent)
        other_residuals.append(abs(left - consistent))
        return abs(left - printed)

    _each_point(record, points, residual)
    record.set_detail(OTHER_ORIENTATION_KEY, max(other_residuals, default=0.0))
    return record.build()


def check_chain_rule(
    f: ExprTree,
    g: ExprTree,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    tolerance: float = 1e-8,
) -> TheoremReport:
    """``D^alpha(f o g)(t) = k(t)^(1-alpha) / k'(t) f'(g(t)) g'(t)``."""
    order = order_value(alpha)
    composition = compose(f, g)
    f_prime = differentiate(f)
    g_prime = differentiate(g)
    record = ReportRecord(
        Theorem.CHAIN, tolerance, summarize(kernel, order, f, g, points)
    )

    def residual(t: float) -> float:
        left = d_alpha_closed(composition, kernel, order, t)
        right = kernel.scale(order, t) * f_prime(g(t)) * g_prime(t)
        return abs(left - right)

    _each_point(record, points, residual)
    return record.build()


def check_power_rule(
    n: float,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    tolerance: float = 1e-9,
) -> TheoremReport:
    """``D^alpha(t^n) = k(t)^(1-alpha) / k'(t) n t^(n-1)``, relative residual."""
    order = order_value(alpha)
    power = combine(BinaryOp.POW, parse("x"), constant(n))
    record = ReportRecord(
        Theorem.POWER, tolerance, summarize(kernel, order, points=points, n=n)
    )

    def residual(t: float) -> float:
        expected = kernel.scale(order, t) * n * t ** (n - 1)
        return _relative(d_alpha_closed(power, kernel, order, t), expected)

    _each_point(record, points, residual)
    return record.build()


def check_constant_rule(
    c: float,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    tolerance: float = 1e-8,
) -> TheoremReport:
    """``D^alpha(c) = 0``."""
    order = order_value(alpha)
    tree = constant(c)
    record = ReportRecord(
        Theorem.CONSTANT, tolerance, summarize(kernel, order, points=points, c=c)
    )
    _each_point(
        record, points, lambda t: abs(d_alpha_closed(tree, kernel, order, t))
    )
    return record.build()


def check_antiderivative_identity(
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    tolerance: float = 1e-8,
) -> TheoremReport:
    """``D^alpha(k^alpha / alpha) = 1``: the kernel order antiderivative is the
    function whose derivative is identically one."""
    order = order_value(alpha)
    antiderivative = combine(
        BinaryOp.DIV,
        combine(BinaryOp.POW, kernel.k, constant(order)),
        constant(order),
    )
    record = ReportRecord(
        Theorem.ANTIDERIVATIVE, tolerance, summarize(kernel, order, points=points)
    )
    _each_point(
        record,
        points,
        lambda t: abs(d_alpha_closed(antiderivative, kernel, order, t) - 1.0),
    )
    return record.build()


def _limit_residual(
    record: ReportRecord,
    t: float,
    evaluate: Callable[[], LimitEstimate],
    reference: float,
    label: str = "",
) -> None:
    """Record ``|limit - reference| / (1 + |reference|)``; a limit which did not
    converge is flagged in the notes instead of failing the check."""
    try:
        estimate = evaluate()
    except ConvergenceError as exc:
        record.add_note(f"t={t!r}{' ' + label if label else ''}: not converged, {exc}")
        return
    if not estimate.converged:
        record.add_note(
            f"t={t!r}{' ' + label if label else ''}: not converged "
            f"(value {estimate.value:.17g}, error {estimate.error_estimate:.3e})"
        )
        return
    residual = abs(estimate.value - reference) / (1.0 + abs(reference))
    record.add_residual(t, residual, label)


def check_equivalence(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    cfg: NumericConfig,
    tolerance: float = 1e-6,
) -> TheoremReport:
    """The limit definition agrees with the closed form."""
    order = order_value(alpha)
    f_prime = differentiate(f)
    record = ReportRecord(
        Theorem.EQUIVALENCE, tolerance, summarize(kernel, order, f, points=points)
    )
    for t in points:
        try:
            closed = d_alpha_closed(f, kernel, order, t, f_prime)
        except GenFracError as exc:
            record.add_error(t, exc)
            continue
        _limit_residual(
            record, t, lambda t=t: d_alpha_limit(f, kernel, order, t, cfg), closed
        )
    return record.build()


def check_prior_reduction(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    points: Sequence[float],
    cfg: NumericConfig,
    tolerance: float = 1e-6,
) -> TheoremReport:
    """The earlier definitions are special cases.

    For every kernel the Almeida limit equals ``k'(t) D^alpha f(t)``. For the
    identity kernel the Khalil and Katugampola limits equal ``D^alpha f(t)`` and the
    displaced points of the Katugampola and the generalized definitions coincide.
    """
    order = order_value(alpha)
    f_prime = differentiate(f)
    record = ReportRecord(
        Theorem.REDUCTION, tolerance, summarize(kernel, order, f, points=points)
    )
    identity = kernel.preset == Preset.IDENTITY
    for t in points:
        try:
            closed = d_alpha_closed(f, kernel, order, t, f_prime)
            almeida_reference = kernel.derivative(t) * closed
        except GenFracError as exc:
            record.add_error(t, exc)
            continue
        _limit_residual(
            record,
            t,
            lambda t=t: prior_limit(
                f, PriorDefinition.ALMEIDA, order, t, cfg, kernel
            ),
            almeida_reference,
            PriorDefinition.ALMEIDA,
        )
        if not identity:
            continue
        for definition in (PriorDefinition.KHALIL, PriorDefinition.KATUGAMPOLA):
            _limit_residual(
                record,
                t,
                lambda t=t, definition=definition: prior_limit(
                    f, definition, order, t, cfg
                ),
                closed,
                definition,
            )
        gap = max(
            katugampola_displacement_gap(kernel, order, t, eps)
            for eps in DISPLACEMENT_STEPS
        )
        record.add_residual(t, gap, "displacement")
    return record.build()


def check_boundary_limit(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    cfg: NumericConfig,
    tolerance: float = 1e-6,
    expected: Optional[float] = None,
) -> TheoremReport:
    """The derivative at the kernel validity start ``a`` as the right limit of the
    closed form.

    Without *expected* the residual is the scaled error estimate of the limit; a
    limit detected to diverge is a valid outcome (the derivative does not exist at
    ``a``) and is reported in the notes. The value of ``k'(a) k(a)^(1-alpha) f'(a)``
    is recorded in the notes for comparison, it never enters the verdict.
    """
    order = order_value(alpha)
    start = kernel.validity_start
    record = ReportRecord(
        Theorem.BOUNDARY, tolerance, summarize(kernel, order, f, start=start)
    )
    estimate = d_alpha_at_start(f, kernel, order, cfg)
    record.set_detail("value", estimate.value)
    record.set_detail("error_estimate", estimate.error_estimate)
    try:
        k_start = kernel.value(start)
        printed = kernel.derivative(start) * k_start ** (1 - order)
        printed *= differentiate(f)(start)
        record.add_note(f"k'(a) k(a)^(1-alpha) f'(a) = {printed:.17g}")
    except (GenFracError, ZeroDivisionError) as exc:
        record.add_note(f"k'(a) k(a)^(1-alpha) f'(a) is undefined: {exc}")
    if not estimate.steps_used:
        record.add_note("f is not differentiable right of a")
    elif expected is not None:
        record.add_residual(start, abs(estimate.value - expected))
    elif estimate.converged:
        scale = 1.0 + abs(estimate.value)
        record.add_residual(start, estimate.error_estimate / scale)
    elif estimate.diverged:
        record.add_note("the limit does not exist, the closed form diverges at a")
    else:
        record.add_note("the limit did not converge")
        record.add_residual(start, math.inf)
    return record.build()
