from typing import Callable

from genfrac.expr.derivative import differentiate
from genfrac.expr.nodes import (
    BinaryOp,
    ExprTree,
    UnaryOp,
    combine,
    compose,
    constant,
    evaluate,
    to_text,
)
from genfrac.expr.parser import parse

# Anything that maps a real number to a real number; ``ExprTree`` is one.
ScalarFunction = Callable[[float], float]

__all__ = [
    "BinaryOp",
    "ExprTree",
    "ScalarFunction",
    "UnaryOp",
    "combine",
    "compose",
    "constant",
    "differentiate",
    "evaluate",
    "parse",
    "to_text",
]
