from collections.abc import Callable
from typing import Optional

from genfrac.config import SuiteConfig
from genfrac.expr import ExprTree, parse
from genfrac.kernel import Kernel, parse_kernel

# Shared configuration, every test uses the defaults unless it says otherwise.
cfg = SuiteConfig()

identity = parse_kernel("identity")
square = parse_kernel("power:2")
exponential = parse_kernel("exp")
log_shift = parse_kernel("log1p")

PRESETS: tuple[Kernel, ...] = (identity, square, exponential, log_shift)

FIXTURES: tuple[str, ...] = (
    "x^2",
    "sin(x)",
    "exp(2*x)",
    "ln(1+x)",
    "1/(1+x^2)",
    "x*sin(x)",
)


def tree(text: str) -> ExprTree:
    return parse(text)


def parametrize_id(obj: object) -> Optional[str]:
    """Short test ids for kernels and expression trees."""
    if isinstance(obj, Kernel):
        return obj.name
    if isinstance(obj, ExprTree):
        return obj.source or str(obj)
    return None


def central_difference(f: Callable[[float], float], x: float, h: float = 1e-4) -> float:
    """Central difference improved by one Richardson step (error O(h^4))."""

    def quotient(step: float) -> float:
        return (f(x + step) - f(x - step)) / (2 * step)

    return (4 * quotient(h / 2) - quotient(h)) / 3
