"""Kernels of the generalized fractional derivative.

A kernel is a map ``k`` with ``k(t) > 0`` and ``k'(t) != 0`` for ``t > a``; it sets
both the displacement of the limit definition and the weight ``k'(x) k(x)^(alpha-1)``
of the integral. Kernels are built either from a preset name or from an arbitrary
expression, and in both cases ``k'`` is the exact symbolic derivative of ``k``.

Preset names, as accepted on the command line:

- ``identity``: k(t) = t, valid from 0
- ``power:p``: k(t) = t^p with p > 0, valid from 0
- ``exp``: k(t) = e^t, valid on the whole line, capped at ``EXPONENTIAL_VALIDITY_FLOOR``
- ``log1p``: k(t) = ln(1 + t), valid from 0
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from genfrac.constants import (
    EXPONENTIAL_VALIDITY_FLOOR,
    KERNEL_DERIVATIVE_FLOOR,
    KERNEL_INVALID_MESSAGE,
    Preset,
)
from genfrac.errors import (
    DomainError,
    ExpressionSyntaxError,
    InvalidArgumentError,
    KernelDegenerateError,
    KernelValidationError,
)
from genfrac.expr import ExprTree, differentiate, parse

MIN_VALIDATION_SAMPLES: int = 16

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class Kernel:
    k: ExprTree
    k_prime: ExprTree

    # Left end ``a`` of the validity interval. k(a) == 0 is allowed.
    validity_start: float

    # Preset tag (see ``Preset``), ``None`` for kernels given as an expression.
    preset: Optional[str] = None
    params: tuple[float, ...] = ()

    @property
    def name(self) -> str:
        if self.preset == Preset.POWER:
            return f"{Preset.POWER}:{self.params[0]:g}"
        return self.preset if self.preset is not None else str(self.k)

    def value(self, t: float) -> float:
        return self.k(t)

    def derivative(self, t: float) -> float:
        return self.k_prime(t)

    def scale(self, alpha: float, t: float) -> float:
        """Return ``k(t)^(1 - alpha) / k'(t)``, the factor of the closed form.

        Raises ``KernelDegenerateError`` where k is negative or k' vanishes.
        """
        k_value = self.k(t)
        k_slope = self.k_prime(t)
        if k_value < 0:
            msg = f"kernel {self.name} is negative at t={t!r}"
            raise KernelDegenerateError(msg)
        if abs(k_slope) < KERNEL_DERIVATIVE_FLOOR:
            msg = f"kernel {self.name} has a vanishing derivative at t={t!r}"
            raise KernelDegenerateError(msg)
        return float(k_value ** (1.0 - alpha)) / k_slope

    def weight(self, alpha: float, x: float) -> float:
        """Return ``k'(x) / k(x)^(1 - alpha)``, the integrand weight."""
        k_value = self.k(x)
        if k_value < 0 or (k_value == 0 and alpha < 1):
            msg = f"kernel weight undefined at x={x!r} (k={k_value!r})"
            raise KernelDegenerateError(msg)
        return self.k_prime(x) * float(k_value ** (alpha - 1.0))


@dataclass(frozen=True)
class KernelViolation:
    t: float
    reason: str


@dataclass(frozen=True)
class KernelValidationReport:
    interval: tuple[float, float]
    samples: int
    violations: tuple[KernelViolation, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations


def _from_text(
    text: str, start: float, preset: Optional[str], params: tuple[float, ...] = ()
) -> Kernel:
    k = parse(text)
    return Kernel(k, differentiate(k), start, preset, params)


def make_preset_kernel(
    preset_id: str,
    p: Optional[float] = None,
    exp_floor: float = EXPONENTIAL_VALIDITY_FLOOR,
) -> Kernel:
    """Build one of the preset kernels which reduce the definition to earlier ones.

    The identity kernel gives back the Katugampola derivative, and with order one
    the classical derivative.
    """
    if preset_id == Preset.IDENTITY:
        return _from_text("x", 0.0, Preset.IDENTITY)
    if preset_id == Preset.POWER:
        if p is None or not p > 0 or not math.isfinite(p):
            msg = f"power kernel needs a positive exponent, got {p!r}"
            raise InvalidArgumentError(msg)
        return _from_text(f"x^{float(p)!r}", 0.0, Preset.POWER, (float(p),))
    if preset_id == Preset.EXPONENTIAL:
        return _from_text("exp(x)", exp_floor, Preset.EXPONENTIAL)
    if preset_id == Preset.LOG_SHIFT:
        return _from_text("ln(1 + x)", 0.0, Preset.LOG_SHIFT)
    msg = f"unknown kernel preset: {preset_id!r}"
    raise InvalidArgumentError(msg)


def parse_kernel(
    spec: str, start: float = 0.0, exp_floor: float = EXPONENTIAL_VALIDITY_FLOOR
) -> Kernel:
    """Turn a command line kernel spec into a kernel.

    *spec* is either a preset name (``identity``, ``power:p``, ``exp``, ``log1p``) or
    an expression, which starts its validity interval at *start*. The ``exp`` preset
    starts at *exp_floor*.
    """
    name, _, raw_param = spec.strip().partition(":")
    if name == Preset.POWER:
        try:
            p = float(raw_param)
        except ValueError:
            msg = f"invalid power kernel exponent: {raw_param!r}"
            raise InvalidArgumentError(msg) from None
        return make_preset_kernel(Preset.POWER, p)
    simple_presets = (Preset.IDENTITY, Preset.EXPONENTIAL, Preset.LOG_SHIFT)
    if name in simple_presets and not raw_param:
        return make_preset_kernel(name, exp_floor=exp_floor)
    try:
        return _from_text(spec, start, None)
    except ExpressionSyntaxError:
        logger.info("kernel spec %r is neither a preset nor an expression", spec)
        raise


def chebyshev_nodes(start: float, end: float, count: int) -> np.ndarray:
    """Chebyshev points of the first kind on [start, end], in increasing order.

    They all lie strictly inside the interval."""
    j = np.arange(count)
    nodes = np.cos((2 * j + 1) * np.pi / (2 * count))[::-1]
    return 0.5 * (start + end) + 0.5 * (end - start) * nodes


def validate_kernel(
    kernel: Kernel,
    interval: tuple[float, float],
    samples: int = 64,
    floor: float = KERNEL_DERIVATIVE_FLOOR,
) -> KernelValidationReport:
    """Check ``k > 0`` and ``|k'| >= floor`` at Chebyshev points of the interval and
    at its right end.

    The left end is never sampled, so ``k(a) == 0`` is accepted. Evaluation errors
    are reported as violations instead of being raised.
    """
    start, end = interval
    if not start < end:
        msg = f"empty validation interval [{start!r}, {end!r}]"
        raise InvalidArgumentError(msg)
    if samples < MIN_VALIDATION_SAMPLES:
        msg = f"at least {MIN_VALIDATION_SAMPLES} samples are needed, got {samples}"
        raise InvalidArgumentError(msg)
    points = [*chebyshev_nodes(start, end, samples).tolist(), end]
    violations = []
    for t in points:
        try:
            k_value = kernel.value(t)
            k_slope = kernel.derivative(t)
        except DomainError as exc:
            violations.append(KernelViolation(t, f"evaluation error: {exc}"))
            continue
        if k_value <= 0:
            violations.append(KernelViolation(t, f"k(t) = {k_value:.6g} <= 0"))
        elif abs(k_slope) < floor:
            reason = f"|k'(t)| = {abs(k_slope):.3g} < floor"
            violations.append(KernelViolation(t, reason))
    if violations:
        logger.info(
            "kernel=%s interval=[%g, %g] violations=%d",
            kernel.name,
            start,
            end,
            len(violations),
        )
    return KernelValidationReport((start, end), len(points), tuple(violations))


def kernel_order_antiderivative(kernel: Kernel, alpha: float, t: float) -> float:
    """Return ``u(t) = k(t)^alpha / alpha``; its derivative is the integral weight."""
    k_value = kernel.value(t)
    if k_value < 0:
        msg = f"k({t!r}) = {k_value!r} is negative"
        raise DomainError(msg)
    return float(k_value**alpha) / alpha


def ensure_admissible(kernel: Kernel, start: float, end: float) -> None:
    """Raise ``KernelValidationError`` unless *kernel* passes ``validate_kernel`` on
    [start, end]. A degenerate interval is not checked."""
    if not start < end:
        return
    report = validate_kernel(kernel, (start, end))
    if report.passed:
        return
    first = report.violations[0]
    msg = KERNEL_INVALID_MESSAGE.format(
        kernel=kernel.name,
        start=start,
        end=end,
        count=len(report.violations),
        first_t=first.t,
        first_reason=first.reason,
    ).strip()
    raise KernelValidationError(msg)
