"""Package level constants

Only the constants which are accessed throughout the package are defined here.
Constants related to a specific computation are defined in their own module. So the
Gauss-Kronrod nodes are defined in the `quadrature` module.
"""
from enum import IntEnum

from genfrac.errors import (
    ConvergenceError,
    DomainError,
    ExpressionSyntaxError,
    GenFracError,
    HypothesisError,
    InvalidArgumentError,
    KernelDegenerateError,
    KernelValidationError,
    QuadratureError,
)

# |k'(t)| below this value is treated as ``k'(t) == 0``.
KERNEL_DERIVATIVE_FLOOR: float = 1e-12

# The exponential kernel is valid on the whole real line; its validity interval
# starts here by default (``numeric.exp_floor`` overrides it) so that k' = e^t stays
# above ``KERNEL_DERIVATIVE_FLOOR``.
EXPONENTIAL_VALIDITY_FLOOR: float = -25.0


class Preset:
    IDENTITY = "identity"
    POWER = "power"
    EXPONENTIAL = "exp"
    LOG_SHIFT = "log1p"


class Theorem:
    LINEARITY = "linearity"
    POWER = "power"
    CONSTANT = "constant"
    PRODUCT = "product"
    QUOTIENT = "quotient"
    CHAIN = "chain"
    EQUIVALENCE = "equivalence"
    ANTIDERIVATIVE = "antiderivative"
    REDUCTION = "reduction"
    BOUNDARY = "boundary"
    ROLLE = "rolle"
    MVT = "mvt"
    D_OF_I = "d_of_i"
    I_OF_D = "i_of_d"
    PARTS = "parts"
    INTEGRAL_MEAN = "integral_mean"
    INTEGRAL_PROPERTIES = "integral_properties"


class Orientation:
    CONSISTENT = "consistent"
    PAPER = "paper"


class ExitCode(IntEnum):
    SUCCESS = 0
    VERIFICATION_FAILED = 1
    PARSE_ERROR = 2
    DOMAIN_ERROR = 3
    NOT_CONVERGED = 4
    QUADRATURE_FAILED = 5
    HYPOTHESIS_VIOLATED = 6


# Order matters: the first matching class wins, so subclasses come first.
EXIT_CODES: tuple[tuple[type[GenFracError], ExitCode], ...] = (
    (ExpressionSyntaxError, ExitCode.PARSE_ERROR),
    (DomainError, ExitCode.DOMAIN_ERROR),
    (KernelDegenerateError, ExitCode.DOMAIN_ERROR),
    (KernelValidationError, ExitCode.DOMAIN_ERROR),
    (InvalidArgumentError, ExitCode.DOMAIN_ERROR),
    (ConvergenceError, ExitCode.NOT_CONVERGED),
    (QuadratureError, ExitCode.QUADRATURE_FAILED),
    (HypothesisError, ExitCode.HYPOTHESIS_VIOLATED),
)


def exit_code_for(exc: GenFracError) -> ExitCode:
    for error_class, code in EXIT_CODES:
        if isinstance(exc, error_class):
            return code
    return ExitCode.DOMAIN_ERROR


# All the messages printed by the command line front end

KERNEL_INVALID_MESSAGE = """\
kernel `{kernel}` is not admissible on [{start}, {end}]: {count} violation(s), \
first at t={first_t:.17g} ({first_reason})
"""

HYPOTHESIS_MESSAGE = """\
hypothesis of {theorem} violated: {detail}
"""

SUMMARY_LINE = "{theorem:<20} max residual {residual:.3e}  {passed}/{total} passed"
