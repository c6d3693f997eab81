"""The generalized fractional integral and its theorems.

    I^alpha f(t) = integral from a to t of f(x) k'(x) k(x)^(alpha - 1) dx

The weight is the exact differential of ``u(x) = k(x)^alpha / alpha``. When ``k(a) = 0``
and ``alpha < 1`` the weight is singular at ``a`` and the integral is computed in the
variable ``u`` instead, where it reads ``integral of f(x(u)) du`` and has no
singularity left; ``x(u)`` is recovered by inverting ``u`` with a bracketed solver.
"""
import logging
import math
from collections.abc import Callable
from dataclasses import astuple, dataclass, fields
from typing import Optional

import numpy as np

from genfrac.config import QuadConfig, SuiteConfig
from genfrac.derivative import Order, d_alpha_closed, order_value
from genfrac.errors import (
    DomainError,
    GenFracError,
    HypothesisError,
    InvalidArgumentError,
    QuadratureError,
)
from genfrac.expr import ExprTree, ScalarFunction, differentiate
from genfrac.kernel import Kernel, kernel_order_antiderivative
from genfrac.quadrature import QuadratureResult, adaptive_quadrature
from genfrac.solvers import find_leftmost_root, invert_monotone

logger = logging.getLogger(__package__)


def _negated(result: QuadratureResult) -> QuadratureResult:
    return QuadratureResult(
        -result.value,
        result.error_estimate,
        result.subdivisions,
        result.converged,
        result.diverged,
        result.substituted,
    )


def _substituted(
    f: ScalarFunction,
    kernel: Kernel,
    alpha: float,
    lower: float,
    upper: float,
    cfg: QuadConfig,
) -> QuadratureResult:
    def u(x: float) -> float:
        return kernel_order_antiderivative(kernel, alpha, x)

    u_lower = u(lower)
    u_upper = u(upper)

    def integrand(target: float) -> float:
        return f(invert_monotone(u, target, lower, upper))

    logger.debug("substitution u in [%.17g, %.17g]", u_lower, u_upper)
    if u_lower <= u_upper:
        result = adaptive_quadrature(integrand, u_lower, u_upper, cfg)
    else:
        result = _negated(adaptive_quadrature(integrand, u_upper, u_lower, cfg))
    return QuadratureResult(
        result.value,
        result.error_estimate,
        result.subdivisions,
        result.converged,
        result.diverged,
        substituted=True,
    )


def weighted_integral(
    f: ScalarFunction,
    kernel: Kernel,
    alpha: Order,
    lower: float,
    upper: float,
    cfg: QuadConfig,
    substitution: Optional[bool] = None,
) -> QuadratureResult:
    """Integrate ``f(x) k'(x) k(x)^(alpha - 1)`` from *lower* to *upper*.

    The bounds may come in any order; swapping them flips the sign. *substitution*
    forces (``True``) or forbids (``False``) the ``u = k^alpha / alpha`` variable,
    by default it is used when ``cfg.endpoint_singularity`` is set or when k vanishes
    at the lower end of the interval and ``alpha < 1``.
    """
    order = order_value(alpha)
    if lower == upper:
        return QuadratureResult(0.0, 0.0, 0, converged=True)
    if lower > upper:
        return _negated(
            weighted_integral(f, kernel, order, upper, lower, cfg, substitution)
        )
    if substitution is None:
        substitution = cfg.endpoint_singularity or (
            order < 1 and kernel.value(lower) == 0
        )
    if substitution:
        return _substituted(f, kernel, order, lower, upper, cfg)

    def integrand(x: float) -> float:
        return f(x) * kernel.weight(order, x)

    return adaptive_quadrature(integrand, lower, upper, cfg)


def i_alpha(
    f: ScalarFunction,
    kernel: Kernel,
    alpha: Order,
    a: float,
    t: float,
    cfg: QuadConfig,
    substitution: Optional[bool] = None,
) -> QuadratureResult:
    """Return the generalized fractional integral of *f* from *a* to *t*.

    The result carries ``converged=False`` when the panel budget was exhausted and
    ``diverged=True`` when the integral does not exist; it is never silently wrong.
    """
    if a < kernel.validity_start:
        start = kernel.validity_start
        msg = f"a={a!r} is left of the kernel validity start {start!r}"
        raise DomainError(msg)
    if a > t:
        msg = f"the interval [{a!r}, {t!r}] is out of order"
        raise InvalidArgumentError(msg)
    result = weighted_integral(f, kernel, alpha, a, t, cfg, substitution)
    logger.info(
        "integral on [%g, %g] value=%.17g error=%.3e panels=%d substituted=%s",
        a,
        t,
        result.value,
        result.error_estimate,
        result.subdivisions,
        result.substituted,
    )
    return result


def require_converged(result: QuadratureResult, what: str) -> float:
    """Return the value of *result*, raising ``QuadratureError`` if it is unreliable."""
    if result.diverged:
        msg = f"{what}: the integral diverges"
        raise QuadratureError(msg)
    if not result.converged:
        msg = (
            f"{what}: no convergence within {result.subdivisions} panels "
            f"(error estimate {result.error_estimate:.3e})"
        )
        raise QuadratureError(msg)
    return result.value


def _integral(
    f: ScalarFunction,
    kernel: Kernel,
    alpha: float,
    lower: float,
    upper: float,
    cfg: QuadConfig,
    what: str,
) -> float:
    return require_converged(
        weighted_integral(f, kernel, alpha, lower, upper, cfg), what
    )


def check_D_of_I(
    f: ScalarFunction,
    kernel: Kernel,
    alpha: Order,
    a: float,
    t: float,
    cfg: SuiteConfig,
) -> float:
    """Return ``|D^alpha (I^alpha f)(t) - f(t)|``.

    The integral from *a* to *t* is computed first, so that a divergent or
    unreliable quadrature is reported. Its derivative in ``t`` is the integrand
    ``f(t) k'(t) k(t)^(alpha - 1)``, which is then scaled by
    ``k(t)^(1 - alpha) / k'(t)``. Only ``[a, t]`` is ever sampled.
    """
    order = order_value(alpha)
    if not t > a:
        msg = f"the inverse property needs t > a, got a={a!r}, t={t!r}"
        raise InvalidArgumentError(msg)
    _integral(f, kernel, order, a, t, cfg.quad, "D(I f)")
    slope = f(t) * kernel.weight(order, t)
    value = kernel.scale(order, t) * slope
    residual = abs(value - f(t))
    logger.debug("D(I f)(%.17g)=%.17g residual=%.3e", t, value, residual)
    return residual


def check_I_of_D(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    a: float,
    t: float,
    cfg: SuiteConfig,
) -> float:
    """Return ``|I^alpha (D^alpha f)(t) - (f(t) - f(a))|``."""
    order = order_value(alpha)
    f_prime = differentiate(f)

    def derivative(x: float) -> float:
        return d_alpha_closed(f, kernel, order, x, f_prime)

    value = require_converged(
        i_alpha(derivative, kernel, order, a, t, cfg.quad), "I(D f)"
    )
    residual = abs(value - (f(t) - f(a)))
    logger.debug("I(D f)(%.17g)=%.17g residual=%.3e", t, value, residual)
    return residual


def integration_by_parts_residual(
    f: ExprTree,
    g: ExprTree,
    kernel: Kernel,
    alpha: Order,
    a: float,
    b: float,
    cfg: SuiteConfig,
) -> float:
    """Return ``|int f D^alpha g + int g D^alpha f - [f g]_a^b|``, both integrals
    taken against the weight of the generalized integral."""
    order = order_value(alpha)
    f_prime = differentiate(f)
    g_prime = differentiate(g)

    def f_times_dg(x: float) -> float:
        return f(x) * d_alpha_closed(g, kernel, order, x, g_prime)

    def g_times_df(x: float) -> float:
        return g(x) * d_alpha_closed(f, kernel, order, x, f_prime)

    left = _integral(f_times_dg, kernel, order, a, b, cfg.quad, "int f D g")
    right = _integral(g_times_df, kernel, order, a, b, cfg.quad, "int g D f")
    boundary = f(b) * g(b) - f(a) * g(a)
    return abs(left + right - boundary)


@dataclass(frozen=True)
class MeanValueWitness:
    # The weighted mean of f, the number whose existence the theorem states.
    xi_value: float

    # A point of [a, b] where f takes the value ``xi_value`` (the leftmost one).
    x0: float

    # |f(x0) - xi_value|
    residual: float

    # Sampled inf and sup of f on [a, b].
    lower_bound: float
    upper_bound: float

    # ``False`` when f - xi has no sign change on the scan grid.
    bracketed: bool = True


def _sample(
    f: ScalarFunction, a: float, b: float, samples: int
) -> list[tuple[float, float]]:
    values = []
    for x in np.linspace(a, b, samples).tolist():
        try:
            values.append((x, f(x)))
        except GenFracError as exc:
            logger.debug("skipped sample x=%.17g: %s", x, exc)
    return values


def check_one_sign(g: ScalarFunction, a: float, b: float, samples: int) -> int:
    """Return the sign of *g* on [a, b], raising ``HypothesisError`` when the sampled
    values take both signs or all vanish."""
    values = [value for _, value in _sample(g, a, b, samples)]
    positive = any(value > 0 for value in values)
    negative = any(value < 0 for value in values)
    if positive and negative:
        msg = f"g changes sign on [{a!r}, {b!r}]"
        raise HypothesisError(msg)
    if not (positive or negative):
        msg = f"g vanishes on [{a!r}, {b!r}]"
        raise HypothesisError(msg)
    return 1 if positive else -1


def integral_mean_value(
    f: ScalarFunction,
    g: ScalarFunction,
    kernel: Kernel,
    alpha: Order,
    a: float,
    b: float,
    cfg: SuiteConfig,
) -> MeanValueWitness:
    """Find the weighted mean ``xi = int f g w / int g w`` of *f* on [a, b] and the
    leftmost point ``x0`` with ``f(x0) = xi``.

    With ``g = 1`` the mean is the mean value of f with respect to the weight.
    """
    order = order_value(alpha)
    if not a < b:
        msg = f"the interval [{a!r}, {b!r}] is empty or out of order"
        raise InvalidArgumentError(msg)
    check_one_sign(g, a, b, cfg.root.sign_samples)
    numerator = _integral(
        lambda x: f(x) * g(x), kernel, order, a, b, cfg.quad, "int f g"
    )
    denominator = _integral(g, kernel, order, a, b, cfg.quad, "int g")
    if denominator == 0:
        msg = "the weighted integral of g vanishes"
        raise HypothesisError(msg)
    xi = numerator / denominator
    samples = [value for _, value in _sample(f, a, b, cfg.root.sign_samples)]
    root = find_leftmost_root(
        lambda x: f(x) - xi, a, b, cfg.root.mean_scan_intervals, cfg.root.mean_xtol
    )
    witness = MeanValueWitness(
        xi,
        root.x,
        abs(f(root.x) - xi),
        min(samples),
        max(samples),
        root.bracketed,
    )
    logger.info(
        "integral mean value xi=%.17g x0=%.17g residual=%.3e",
        witness.xi_value,
        witness.x0,
        witness.residual,
    )
    return witness


@dataclass(frozen=True)
class PropertyResiduals:
    additivity: float
    homogeneity: float
    orientation: float
    interval_additivity: float
    zero_width: float
    nonnegativity: float
    triangle: float

    # The integral from b to a, for reference.
    reversed_value: float = math.nan

    def items(self) -> list[tuple[str, float]]:
        names = [field.name for field in fields(self)][:7]
        return list(zip(names, astuple(self)[:7]))

    @property
    def max_residual(self) -> float:
        return max(value for _, value in self.items())


def check_linearity_properties(
    f: ScalarFunction,
    g: ScalarFunction,
    kernel: Kernel,
    alpha: Order,
    a: float,
    b: float,
    c_mid: float,
    lam: float,
    cfg: SuiteConfig,
) -> PropertyResiduals:
    """Residuals of the seven elementary properties of the integral on [a, b].

    The nonnegativity residual is ``max(0, -int f)`` when f is sampled nonnegative
    and 0 otherwise; the triangle residual is ``max(0, |int f| - int |f|)``.
    """
    order = order_value(alpha)
    if not a < c_mid < b:
        msg = f"c={c_mid!r} must lie inside ({a!r}, {b!r})"
        raise InvalidArgumentError(msg)
    quad = cfg.quad

    def integral(h: Callable[[float], float], lower: float, upper: float) -> float:
        return _integral(h, kernel, order, lower, upper, quad, "property")

    int_f = integral(f, a, b)
    int_g = integral(g, a, b)
    additivity = abs(integral(lambda x: f(x) + g(x), a, b) - int_f - int_g)
    homogeneity = abs(integral(lambda x: lam * f(x), a, b) - lam * int_f)
    reversed_value = integral(f, b, a)
    orientation = abs(reversed_value + int_f)
    interval_additivity = abs(int_f - integral(f, a, c_mid) - integral(f, c_mid, b))
    zero_width = abs(integral(f, a, a))
    sampled = [value for _, value in _sample(f, a, b, cfg.root.sign_samples)]
    nonnegative = all(value >= 0 for value in sampled)
    nonnegativity = max(0.0, -int_f) if nonnegative else 0.0
    triangle = max(0.0, abs(int_f) - integral(lambda x: abs(f(x)), a, b))
    return PropertyResiduals(
        additivity,
        homogeneity,
        orientation,
        interval_additivity,
        zero_width,
        nonnegativity,
        triangle,
        reversed_value,
    )
