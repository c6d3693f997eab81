"""Exception hierarchy for the package.

Every failure the numerical engine can report has its own class so that the
command line front end can map outcome classes to exit codes with a single table
(see ``genfrac.constants.EXIT_CODES``). Library callers may catch ``GenFracError``
to handle everything at once.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class ParseDiagnostic:
    # Byte offset into the UTF-8 encoded source text. It is always within
    # ``0 <= offset <= len(source)`` so that an offset equal to the length points
    # just past the last character ("unexpected end of input").
    offset: int

    # Human readable description of what went wrong.
    message: str

    # What the parser would have accepted at this position, empty if there is no
    # meaningful hint (e.g. for an unknown character).
    expected: str = ""

    def render(self, source: str) -> str:
        """Render the diagnostic with a caret under the offending position."""
        prefix = source.encode("utf-8")[: self.offset].decode("utf-8", "replace")
        caret = " " * len(prefix) + "^"
        hint = f" (expected {self.expected})" if self.expected else ""
        return f"{source}\n{caret}\n{self.message}{hint} at offset {self.offset}"


class GenFracError(Exception):
    """Base class for all the errors raised by the package."""


class ExpressionSyntaxError(GenFracError):
    def __init__(self, diagnostic: ParseDiagnostic, source: str) -> None:
        self.diagnostic = diagnostic
        self.source = source
        super().__init__(f"{diagnostic.message} at offset {diagnostic.offset}")


class DomainError(GenFracError, ArithmeticError):
    """Evaluation left the natural domain of an expression."""


class KernelDegenerateError(GenFracError):
    """The kernel vanishes, is negative, or has a vanishing derivative at a point."""


class KernelValidationError(GenFracError):
    """Sample based validation of a kernel on an interval failed."""


class InvalidArgumentError(GenFracError, ValueError):
    """A precondition on orders, intervals or configuration values is violated."""


class HypothesisError(GenFracError):
    """The hypothesis of a theorem does not hold for the given inputs."""


class ConvergenceError(GenFracError):
    """A limit or a root search did not converge."""


class DomainEscapeError(ConvergenceError):
    """The displaced point left the domain of f for every step of the schedule."""


class QuadratureError(GenFracError):
    """Adaptive quadrature exhausted its budget or detected a divergent integral."""
