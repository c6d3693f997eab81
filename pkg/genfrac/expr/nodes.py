"""Expression tree nodes, evaluation and printing.

Trees are immutable: every node is a frozen dataclass and all the tree builders
return new nodes. The smart constructors ``make_unary`` and ``make_binary`` are the
only place where folding happens: constant subtrees are evaluated and neutral
elements (``u + 0``, ``u * 1``, ``u ^ 1``, ...) are dropped. Nothing else is
simplified, in particular ``0 * u`` is kept so that the domain of ``u`` survives.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

from genfrac.errors import DomainError


class UnaryOp(Enum):
    NEG = "neg"
    SIN = "sin"
    COS = "cos"
    EXP = "exp"
    LN = "ln"
    SQRT = "sqrt"
    ABS = "abs"


class BinaryOp(Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    POW = "^"


# Function call syntax ``name(...)`` accepted by the parser.
FUNCTIONS: dict[str, UnaryOp] = {
    op.value: op for op in UnaryOp if op is not UnaryOp.NEG
}


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: "Node"
    right: "Node"


Node = Union[Const, Var, Unary, Binary]


@dataclass(frozen=True)
class ExprTree:
    """A parsed one-variable real expression.

    The tree is callable: ``tree(x)`` is ``evaluate(tree, x)``. Two trees compare
    equal when their structure and variable name are equal, the source text is kept
    for diagnostics only.
    """

    root: Node
    variable: str = "x"
    source: str = field(default="", compare=False)

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    def __str__(self) -> str:
        return to_text(self.root)

    @property
    def is_constant(self) -> bool:
        return is_constant(self.root)


def _check(value: float, what: str) -> float:
    if not math.isfinite(value):
        msg = f"{what} produced a non-finite value"
        raise DomainError(msg)
    return value


def _ln(value: float) -> float:
    if value <= 0:
        msg = f"ln of nonpositive value {value!r}"
        raise DomainError(msg)
    return math.log(value)


def _sqrt(value: float) -> float:
    if value < 0:
        msg = f"sqrt of negative value {value!r}"
        raise DomainError(msg)
    return math.sqrt(value)


def _exp(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        msg = f"exp overflow at {value!r}"
        raise DomainError(msg) from None


def _div(left: float, right: float) -> float:
    if right == 0:
        msg = "division by zero"
        raise DomainError(msg)
    return left / right


def _pow(base: float, exponent: float) -> float:
    if base < 0 and not exponent.is_integer():
        msg = f"non-integer power {exponent!r} of negative base {base!r}"
        raise DomainError(msg)
    if base == 0 and exponent < 0:
        msg = f"negative power {exponent!r} of zero"
        raise DomainError(msg)
    try:
        return float(base**exponent)
    except OverflowError:
        msg = f"overflow in {base!r}^{exponent!r}"
        raise DomainError(msg) from None


_UNARY: dict[UnaryOp, Callable[[float], float]] = {
    UnaryOp.NEG: lambda value: -value,
    UnaryOp.SIN: math.sin,
    UnaryOp.COS: math.cos,
    UnaryOp.EXP: _exp,
    UnaryOp.LN: _ln,
    UnaryOp.SQRT: _sqrt,
    UnaryOp.ABS: abs,
}

_BINARY: dict[BinaryOp, Callable[[float, float], float]] = {
    BinaryOp.ADD: lambda left, right: left + right,
    BinaryOp.SUB: lambda left, right: left - right,
    BinaryOp.MUL: lambda left, right: left * right,
    BinaryOp.DIV: _div,
    BinaryOp.POW: _pow,
}


def evaluate_node(node: Node, x: float) -> float:
    if isinstance(node, Const):
        return _check(node.value, "constant")
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        operand = evaluate_node(node.operand, x)
        return _check(_UNARY[node.op](operand), node.op.value)
    left = evaluate_node(node.left, x)
    right = evaluate_node(node.right, x)
    return _check(_BINARY[node.op](left, right), node.op.value)


def evaluate(tree: ExprTree, x: float) -> float:
    """Evaluate *tree* at the point *x*.

    Raises ``DomainError`` for ln of a nonpositive value, sqrt of a negative value,
    division by zero, a non-integer power of a negative base and any operation whose
    result is not finite. A silent NaN is never returned.
    """
    if not math.isfinite(x):
        msg = f"evaluation point {x!r} is not finite"
        raise DomainError(msg)
    return evaluate_node(tree.root, float(x))


def is_constant(node: Node) -> bool:
    if isinstance(node, Const):
        return True
    if isinstance(node, Var):
        return False
    if isinstance(node, Unary):
        return is_constant(node.operand)
    return is_constant(node.left) and is_constant(node.right)


def _try_fold(node: Node) -> Node:
    if not is_constant(node):
        return node
    try:
        return Const(evaluate_node(node, 0.0))
    except DomainError:
        # Keep the node so that evaluation reports the error at the call site.
        return node


def _is_value(node: Node, value: float) -> bool:
    return isinstance(node, Const) and node.value == value


def make_unary(op: UnaryOp, operand: Node) -> Node:
    return _try_fold(Unary(op, operand))


def make_binary(op: BinaryOp, left: Node, right: Node) -> Node:
    if op is BinaryOp.ADD:
        if _is_value(left, 0.0):
            return right
        if _is_value(right, 0.0):
            return left
    elif op is BinaryOp.SUB:
        if _is_value(right, 0.0):
            return left
        if _is_value(left, 0.0):
            return make_unary(UnaryOp.NEG, right)
    elif op is BinaryOp.MUL:
        if _is_value(left, 1.0):
            return right
        if _is_value(right, 1.0):
            return left
    elif op in (BinaryOp.DIV, BinaryOp.POW) and _is_value(right, 1.0):
        return left
    return _try_fold(Binary(op, left, right))


def rename(node: Node, name: str) -> Node:
    """Return *node* with every variable renamed to *name*."""
    if isinstance(node, Var):
        return Var(name)
    if isinstance(node, Unary):
        return Unary(node.op, rename(node.operand, name))
    if isinstance(node, Binary):
        return Binary(node.op, rename(node.left, name), rename(node.right, name))
    return node


def substitute(node: Node, replacement: Node) -> Node:
    """Replace every variable of *node* with the *replacement* subtree."""
    if isinstance(node, Var):
        return replacement
    if isinstance(node, Unary):
        return make_unary(node.op, substitute(node.operand, replacement))
    if isinstance(node, Binary):
        return make_binary(
            node.op,
            substitute(node.left, replacement),
            substitute(node.right, replacement),
        )
    return node


def to_text(node: Node) -> str:
    """Print *node* in the expression language, fully parenthesized.

    The output parses back to an evaluation-equivalent tree; floats are printed with
    ``repr`` so no digit is lost.
    """
    if isinstance(node, Const):
        text = repr(node.value)
        return f"({text})" if node.value < 0 else text
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unary):
        inner = to_text(node.operand)
        if node.op is UnaryOp.NEG:
            return f"(-{inner})"
        return f"{node.op.value}({inner})"
    return f"({to_text(node.left)} {node.op.value} {to_text(node.right)})"


def constant(value: float, variable: str = "x") -> ExprTree:
    return ExprTree(Const(float(value)), variable, repr(float(value)))


def combine(op: BinaryOp, left: ExprTree, right: ExprTree) -> ExprTree:
    """Combine two trees with a binary operator. Variables bind positionally, so
    the right tree is renamed to the variable of the left one."""
    root = make_binary(op, left.root, rename(right.root, left.variable))
    return ExprTree(root, left.variable, to_text(root))


def compose(outer: ExprTree, inner: ExprTree) -> ExprTree:
    """Return the tree of ``outer(inner(x))``."""
    root = substitute(outer.root, inner.root)
    return ExprTree(root, inner.variable, to_text(root))
