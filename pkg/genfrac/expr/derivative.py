"""Symbolic differentiation of expression trees.

The rules are the textbook ones; the result is built with the folding constructors
of ``nodes`` so constant subtrees collapse, but no other simplification happens.
``abs`` differentiates to ``u / abs(u) * u'`` which is a domain error at ``u == 0``.
"""
from cachetools import LRUCache, cached

from genfrac.expr.nodes import (
    Binary,
    BinaryOp,
    Const,
    ExprTree,
    Node,
    Unary,
    UnaryOp,
    Var,
    is_constant,
    make_binary,
    make_unary,
    to_text,
)

ZERO = Const(0.0)
ONE = Const(1.0)
TWO = Const(2.0)


def _add(left: Node, right: Node) -> Node:
    return make_binary(BinaryOp.ADD, left, right)


def _sub(left: Node, right: Node) -> Node:
    return make_binary(BinaryOp.SUB, left, right)


def _mul(left: Node, right: Node) -> Node:
    return make_binary(BinaryOp.MUL, left, right)


def _div(left: Node, right: Node) -> Node:
    return make_binary(BinaryOp.DIV, left, right)


def _pow(base: Node, exponent: Node) -> Node:
    return make_binary(BinaryOp.POW, base, exponent)


def _derive_unary(node: Unary) -> Node:
    u = node.operand
    du = derive(u)
    op = node.op
    if op is UnaryOp.NEG:
        return make_unary(UnaryOp.NEG, du)
    if op is UnaryOp.SIN:
        return _mul(make_unary(UnaryOp.COS, u), du)
    if op is UnaryOp.COS:
        return _mul(make_unary(UnaryOp.NEG, make_unary(UnaryOp.SIN, u)), du)
    if op is UnaryOp.EXP:
        return _mul(node, du)
    if op is UnaryOp.LN:
        return _div(du, u)
    if op is UnaryOp.SQRT:
        return _div(du, _mul(TWO, node))
    # abs: the sign of u, undefined where u vanishes.
    return _mul(_div(u, node), du)


def _derive_power(node: Binary) -> Node:
    base, exponent = node.left, node.right
    if is_constant(exponent):
        # c * u^(c - 1) * u'
        lowered = _pow(base, _sub(exponent, ONE))
        return _mul(_mul(exponent, lowered), derive(base))
    if is_constant(base):
        # b^v * ln(b) * v'
        return _mul(_mul(node, make_unary(UnaryOp.LN, base)), derive(exponent))
    # u^v * (v' ln(u) + v u' / u)
    inner = _add(
        _mul(derive(exponent), make_unary(UnaryOp.LN, base)),
        _div(_mul(exponent, derive(base)), base),
    )
    return _mul(node, inner)


def derive(node: Node) -> Node:
    """Return the derivative of *node* with respect to its (only) variable."""
    if isinstance(node, Const):
        return ZERO
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Unary):
        return _derive_unary(node)
    left, right = node.left, node.right
    if node.op is BinaryOp.ADD:
        return _add(derive(left), derive(right))
    if node.op is BinaryOp.SUB:
        return _sub(derive(left), derive(right))
    if node.op is BinaryOp.MUL:
        return _add(_mul(derive(left), right), _mul(left, derive(right)))
    if node.op is BinaryOp.DIV:
        numerator = _sub(_mul(derive(left), right), _mul(left, derive(right)))
        return _div(numerator, _pow(right, TWO))
    return _derive_power(node)


@cached(cache=LRUCache(maxsize=512))
def differentiate(tree: ExprTree) -> ExprTree:
    """Return the exact symbolic derivative of *tree* as a new tree."""
    root = derive(tree.root)
    return ExprTree(root, tree.variable, to_text(root))
