"""Earlier conformable derivatives, kept for the reduction checks.

Each of them is a limit quotient ``(f(t + d(eps)) - f(t)) / eps`` that only differs
from the generalized one in the displacement ``d``:

- ``khalil``: ``d = eps t^(1-alpha)``
- ``almeida``: ``d = eps k(t)^(1-alpha)``, its value is ``k'(t) D^alpha f(t)``
- ``katugampola``: ``t + d = t e^(eps t^-alpha)``

With the identity kernel the generalized displacement is the Katugampola one,
term by term.
"""
import math
from collections.abc import Callable
from typing import Optional

from genfrac.config import NumericConfig
from genfrac.derivative import LimitEstimate, Order, limit_quotient, order_value
from genfrac.errors import DomainError, InvalidArgumentError
from genfrac.expr import ScalarFunction
from genfrac.kernel import Kernel


class PriorDefinition:
    KHALIL = "khalil"
    ALMEIDA = "almeida"
    KATUGAMPOLA = "katugampola"


def _require_positive(t: float) -> None:
    if not t > 0:
        msg = f"the earlier definitions need t > 0, got {t!r}"
        raise DomainError(msg)


def prior_displacement(
    definition: str,
    alpha: float,
    t: float,
    kernel: Optional[Kernel] = None,
) -> Callable[[float], float]:
    """Return ``eps -> t + d(eps)`` for one of the earlier definitions."""
    _require_positive(t)
    if definition == PriorDefinition.KHALIL:
        step = t ** (1.0 - alpha)
        return lambda eps: t + eps * step
    if definition == PriorDefinition.ALMEIDA:
        if kernel is None:
            msg = "the Almeida derivative needs a kernel"
            raise InvalidArgumentError(msg)
        k_value = kernel.value(t)
        if not k_value > 0:
            msg = f"kernel {kernel.name} is not positive at t={t!r}"
            raise DomainError(msg)
        step = k_value ** (1.0 - alpha)
        return lambda eps: t + eps * step
    if definition == PriorDefinition.KATUGAMPOLA:
        rate = t**-alpha
        return lambda eps: t + t * math.expm1(eps * rate)
    msg = f"unknown definition: {definition!r}"
    raise InvalidArgumentError(msg)


def prior_limit(
    f: ScalarFunction,
    definition: str,
    alpha: Order,
    t: float,
    cfg: NumericConfig,
    kernel: Optional[Kernel] = None,
) -> LimitEstimate:
    """Evaluate one of the earlier derivatives by its limit quotient."""
    order = order_value(alpha)
    return limit_quotient(f, t, prior_displacement(definition, order, t, kernel), cfg)


def literal_displacement(kernel: Kernel, alpha: float, t: float, eps: float) -> float:
    """The generalized displaced point exactly as written, ``t - k + k e^(...)``."""
    k_value = kernel.value(t)
    exponent = eps * k_value**-alpha / kernel.derivative(t)
    return t - k_value + k_value * math.exp(exponent)


def katugampola_displacement(alpha: float, t: float, eps: float) -> float:
    return t * math.exp(eps * t**-alpha)


def katugampola_displacement_gap(
    identity: Kernel, alpha: Order, t: float, eps: float
) -> float:
    """Return ``|literal_displacement - katugampola_displacement|`` for the identity
    kernel. With ``k(t) = t`` and ``k'(t) = 1`` both sides are the same floating
    point operations, so the gap is exactly zero."""
    order = order_value(alpha)
    _require_positive(t)
    generalized = literal_displacement(identity, order, t, eps)
    return abs(generalized - katugampola_displacement(order, t, eps))
