"""Witnesses of Rolle's theorem and of the mean value theorem.

Both search the leftmost ``c`` in (a, b) where the closed form of the derivative
takes a prescribed value: 0 for Rolle, the slope of f against ``k^alpha / alpha`` for
the mean value theorem.
"""
import logging

from genfrac.config import SuiteConfig
from genfrac.constants import Theorem
from genfrac.derivative import Order, d_alpha_closed, order_value
from genfrac.errors import HypothesisError, InvalidArgumentError
from genfrac.expr import ExprTree, differentiate
from genfrac.kernel import Kernel, kernel_order_antiderivative
from genfrac.solvers import find_leftmost_root
from genfrac.theorems.record import ReportRecord, TheoremReport
from genfrac.theorems.rules import summarize

logger = logging.getLogger(__package__)


def _check_interval(a: float, b: float) -> None:
    if not a < b:
        msg = f"the interval [{a!r}, {b!r}] is empty or out of order"
        raise InvalidArgumentError(msg)


def _find_c(
    theorem: str,
    f: ExprTree,
    kernel: Kernel,
    alpha: float,
    a: float,
    b: float,
    target: float,
    cfg: SuiteConfig,
) -> TheoremReport:
    f_prime = differentiate(f)

    def shifted(t: float) -> float:
        return d_alpha_closed(f, kernel, alpha, t, f_prime) - target

    root = find_leftmost_root(
        shifted, a, b, cfg.root.scan_intervals, cfg.root.xtol
    )
    record = ReportRecord(
        theorem, cfg.tolerance, summarize(kernel, alpha, f, interval=[a, b])
    )
    record.add_residual(root.x, root.residual)
    record.set_detail("lhs", d_alpha_closed(f, kernel, alpha, root.x, f_prime))
    record.set_detail("rhs", target)
    if not root.bracketed:
        record.add_note("no sign change on the scan grid, c minimizes |residual|")
    logger.info(
        "theorem=%s c=%.17g residual=%.3e bracketed=%s",
        theorem,
        root.x,
        root.residual,
        root.bracketed,
    )
    return record.build(witness=root.x)


def rolle_find_c(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    a: float,
    b: float,
    cfg: SuiteConfig,
) -> TheoremReport:
    """Find the leftmost ``c`` in (a, b) with ``D^alpha f(c) = 0``.

    Raises ``HypothesisError`` unless ``|f(a) - f(b)| <= cfg.root.match_tol``.
    """
    order = order_value(alpha)
    _check_interval(a, b)
    mismatch = abs(f(a) - f(b))
    if mismatch > cfg.root.match_tol:
        msg = f"f(a) != f(b), |f(a) - f(b)| = {mismatch:.3e}"
        raise HypothesisError(msg)
    return _find_c(Theorem.ROLLE, f, kernel, order, a, b, 0.0, cfg)


def mean_value_slope(
    f: ExprTree, kernel: Kernel, alpha: float, a: float, b: float
) -> float:
    """Return ``(f(b) - f(a)) / (k(b)^alpha / alpha - k(a)^alpha / alpha)``."""
    denominator = kernel_order_antiderivative(
        kernel, alpha, b
    ) - kernel_order_antiderivative(kernel, alpha, a)
    if denominator == 0:
        msg = "k(b)^alpha / alpha - k(a)^alpha / alpha vanishes"
        raise HypothesisError(msg)
    return (f(b) - f(a)) / denominator


def mvt_find_c(
    f: ExprTree,
    kernel: Kernel,
    alpha: Order,
    a: float,
    b: float,
    cfg: SuiteConfig,
) -> TheoremReport:
    """Find the leftmost ``c`` in (a, b) with ``D^alpha f(c)`` equal to the slope of
    f against ``k^alpha / alpha`` over [a, b]."""
    order = order_value(alpha)
    _check_interval(a, b)
    target = mean_value_slope(f, kernel, order, a, b)
    return _find_c(Theorem.MVT, f, kernel, order, a, b, target, cfg)
