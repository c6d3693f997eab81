"""The generalized fractional derivative.

For a kernel ``k`` and an order ``0 < alpha <= 1`` the derivative is the limit

    D^alpha f(t) = lim_{eps -> 0} (f(t + d(eps)) - f(t)) / eps,
    d(eps) = k(t) e^(eps k(t)^-alpha / k'(t)) - k(t)

which, for differentiable ``f``, equals the closed form
``k(t)^(1-alpha) / k'(t) f'(t)``.
Both are implemented here: the closed form is the fast path used by every check, the
limit is extrapolated from a geometric sweep of ``eps`` and certifies it.
"""
import logging
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Optional, Union

from genfrac.config import NumericConfig
from genfrac.errors import (
    DomainError,
    DomainEscapeError,
    GenFracError,
    InvalidArgumentError,
    KernelDegenerateError,
)
from genfrac.expr import ExprTree, ScalarFunction, differentiate
from genfrac.extrapolation import aitken, richardson
from genfrac.kernel import Kernel

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class FracOrder:
    alpha: float

    def __post_init__(self) -> None:
        if not 0 < self.alpha <= 1:
            msg = f"the order must lie in (0, 1], got {self.alpha!r}"
            raise InvalidArgumentError(msg)

    def __float__(self) -> float:
        return float(self.alpha)


Order = Union[FracOrder, float]


def order_value(alpha: Order) -> float:
    """Validate *alpha* and return it as a float."""
    return FracOrder(float(alpha)).alpha


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    error_estimate: float

    # Step sizes (epsilon, or the offset from the left end) actually evaluated.
    steps_used: tuple[float, ...]

    converged: bool

    # The sequence was seen moving away: the limit does not exist.
    diverged: bool = False


def _check_point(kernel: Kernel, t: float) -> float:
    if not t > kernel.validity_start:
        start = kernel.validity_start
        msg = f"t={t!r} is not right of the kernel validity start {start!r}"
        raise DomainError(msg)
    k_value = kernel.value(t)
    if not k_value > 0:
        msg = f"kernel {kernel.name} is not positive at t={t!r}"
        raise KernelDegenerateError(msg)
    return k_value


def d_alpha_closed(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    t: float,
    f_prime: Optional[ScalarFunction] = None,
) -> float:
    """Return ``k(t)^(1 - alpha) / k'(t) * f'(t)``.

    *f_prime* defaults to the symbolic derivative of *f*.
    """
    order = order_value(alpha)
    _check_point(kernel, t)
    derivative = f_prime if f_prime is not None else differentiate(f)
    return kernel.scale(order, t) * derivative(t)


def generalized_displacement(
    kernel: Kernel, alpha: float, t: float, eps: float
) -> float:
    """Return ``t - k(t) + k(t) e^(eps k(t)^-alpha / k'(t))``.

    The form ``t + k(t) expm1(...)`` is used, which is the same number without the
    cancellation of ``k(t) e^(...) - k(t)``.
    """
    k_value = _check_point(kernel, t)
    k_slope = kernel.derivative(t)
    if k_slope == 0:
        msg = f"kernel {kernel.name} has a zero derivative at t={t!r}"
        raise KernelDegenerateError(msg)
    try:
        return t + k_value * math.expm1(eps * k_value**-alpha / k_slope)
    except OverflowError:
        msg = f"displacement overflows for eps={eps!r}"
        raise DomainError(msg) from None


def limit_quotient(
    f: ScalarFunction,
    t: float,
    displacement: Callable[[float], float],
    cfg: NumericConfig,
) -> LimitEstimate:
    """Extrapolate ``(f(displacement(eps)) - f(t)) / eps`` to ``eps -> 0``.

    Steps whose displaced point leaves the domain of *f* are skipped as long as no
    quotient has been computed yet; ``DomainEscapeError`` is raised when every step
    of the schedule escapes.
    """
    base = f(t)
    steps: list[float] = []

    def quotients() -> Iterator[float]:
        for step in range(cfg.max_steps):
            eps = cfg.eps0 * cfg.step_ratio**step
            try:
                displaced = f(displacement(eps))
            except (GenFracError, OverflowError) as exc:
                if steps:
                    logger.debug("sweep stopped at eps=%.3e: %s", eps, exc)
                    return
                logger.debug("skipped eps=%.3e: %s", eps, exc)
                continue
            steps.append(eps)
            yield (displaced - base) / eps

    result = richardson(
        quotients(), cfg.step_ratio, cfg.richardson_depth, cfg.tol_rel
    )
    if not steps:
        msg = f"the displaced point leaves the domain for every step at t={t!r}"
        raise DomainEscapeError(msg)
    if not result.converged:
        logger.warning(
            "limit at t=%.17g did not converge: value=%.17g error=%.3e",
            t,
            result.value,
            result.error,
        )
    return LimitEstimate(result.value, result.error, tuple(steps), result.converged)


def d_alpha_limit(
    f: ScalarFunction,
    kernel: Kernel,
    alpha: Order,
    t: float,
    cfg: NumericConfig,
) -> LimitEstimate:
    """Evaluate the derivative from its limit definition."""
    order = order_value(alpha)
    _check_point(kernel, t)
    return limit_quotient(
        f, t, lambda eps: generalized_displacement(kernel, order, t, eps), cfg
    )


def d_alpha_at_start(
    f: ExprTree, kernel: Kernel, alpha: Order, cfg: NumericConfig
) -> LimitEstimate:
    """Evaluate ``lim_{t -> a+} D^alpha f(t)`` at the kernel validity start ``a``.

    The closed form is evaluated at ``a + h`` for offsets shrinking geometrically
    from ``cfg.boundary_offset0`` to ``cfg.boundary_offset_min`` and the sequence is
    accelerated with Aitken's process. A sequence which moves away (the limit does
    not exist) is returned with ``converged=False``.
    """
    order = order_value(alpha)
    start = kernel.validity_start
    f_prime = differentiate(f)
    offsets: list[float] = []
    values: list[float] = []
    offset = cfg.boundary_offset0
    while offset >= cfg.boundary_offset_min:
        try:
            values.append(d_alpha_closed(f, kernel, order, start + offset, f_prime))
            offsets.append(offset)
        except GenFracError as exc:
            logger.debug("skipped offset=%.3e: %s", offset, exc)
        offset *= cfg.step_ratio
    result = aitken(values, cfg.tol_rel)
    logger.info(
        "boundary limit at a=%g value=%.17g converged=%s",
        start,
        result.value,
        result.converged,
    )
    return LimitEstimate(
        result.value,
        result.error,
        tuple(offsets),
        result.converged,
        result.diverged,
    )


@dataclass(frozen=True)
class SpecialRow:
    label: str

    # The function the row differentiates, in the expression language.
    expression: str

    # ``None`` when the row could not be evaluated, ``error`` then says why.
    closed_value: Optional[float]
    error: Optional[str] = None


def _special_rows(
    scale: Callable[[], float], x: float, a: float, b: float
) -> list[tuple[str, str, Callable[[], float]]]:
    def log_row() -> float:
        if not a > 0 or a == 1:
            msg = f"logarithm base must be positive and not 1, got {a!r}"
            raise DomainError(msg)
        if not b * x > 0:
            msg = f"logarithm of nonpositive value b*x={b * x!r}"
            raise DomainError(msg)
        return scale() / (x * math.log(a))

    def power_row() -> float:
        if not a > 0:
            msg = f"power base must be positive, got {a!r}"
            raise DomainError(msg)
        return scale() * b * math.log(a) * a ** (b * x)

    return [
        ("constant", "1", lambda: 0.0),
        ("exp", f"exp({a!r} * x)", lambda: a * scale() * math.exp(a * x)),
        ("sin", f"sin({a!r} * x)", lambda: a * scale() * math.cos(a * x)),
        ("cos", f"cos({a!r} * x)", lambda: -a * scale() * math.sin(a * x)),
        ("log", f"ln({b!r} * x) / ln({a!r})", log_row),
        ("power", f"{a!r} ^ ({b!r} * x)", power_row),
    ]


def special_table(
    alpha: Order, kernel: Kernel, x: float, a: float = 1.0, b: float = 1.0
) -> list[SpecialRow]:
    """Derivatives of the special functions ``1``, ``e^(ax)``, ``sin(ax)``,
    ``cos(ax)``, ``log_a(bx)`` and ``a^(bx)`` at *x*.

    The scale ``k(x)^(1-alpha) / k'(x)`` is evaluated directly, so *x* may be the
    kernel validity start. A failing row carries its error and leaves the other
    rows intact.
    """
    order = order_value(alpha)

    def scale() -> float:
        if x < kernel.validity_start:
            msg = f"x={x!r} is left of the kernel validity start"
            raise DomainError(msg)
        return kernel.scale(order, x)

    rows = []
    for label, expression, evaluate in _special_rows(scale, x, a, b):
        try:
            rows.append(SpecialRow(label, expression, evaluate()))
        except (GenFracError, OverflowError, ZeroDivisionError) as exc:
            rows.append(SpecialRow(label, expression, None, str(exc)))
    return rows
