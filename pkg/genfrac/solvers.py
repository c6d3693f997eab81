"""Bracketed root finding.

Every witness the package returns (Rolle's c, the mean value c, the x0 of the integral
mean value theorem) comes out of ``find_leftmost_root``: the interval is scanned on a
uniform grid for the first sign change and the bracket is refined with bisection.
Bisection only looks at signs, so a witness does not move when the function is
multiplied by a nonzero constant.
"""
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from genfrac.errors import ConvergenceError, GenFracError

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class RootWitness:
    x: float

    # |h(x)| at the returned point.
    residual: float

    # ``False`` when no sign change was found and ``x`` is the grid point where |h| is
    # smallest.
    bracketed: bool


def _safe_eval(h: Callable[[float], float], x: float) -> float:
    try:
        value = h(x)
    except GenFracError as exc:
        logger.debug("skipped scan point x=%.17g: %s", x, exc)
        return math.nan
    return value if math.isfinite(value) else math.nan


def _bisect(
    h: Callable[[float], float], left: float, right: float, xtol: float
) -> RootWitness:
    try:
        root = optimize.bisect(h, left, right, xtol=xtol)
        return RootWitness(root, abs(h(root)), bracketed=True)
    except GenFracError as exc:
        logger.warning("bisection on [%.17g, %.17g] failed: %s", left, right, exc)
    candidates = [(abs(_safe_eval(h, x)), x) for x in (left, right)]
    residual, x = min(candidates, key=lambda item: (math.isnan(item[0]), item[0]))
    return RootWitness(x, residual, bracketed=False)


def find_leftmost_root(
    h: Callable[[float], float],
    lower: float,
    upper: float,
    intervals: int,
    xtol: float,
) -> RootWitness:
    """Return the leftmost root of *h* strictly inside (lower, upper).

    The grid has ``intervals`` subintervals. Grid points where *h* cannot be
    evaluated are skipped, and a root sitting exactly on *lower* or *upper* is never
    returned. Without any sign change the grid point of smallest ``|h|`` is returned,
    flagged as not bracketed.
    """
    grid = np.linspace(lower, upper, intervals + 1).tolist()
    values = [_safe_eval(h, x) for x in grid]
    valid = [(x, value) for x, value in zip(grid, values) if not math.isnan(value)]
    interior = {index for index, x in enumerate(valid) if lower < x[0] < upper}
    for index, (left, left_value) in enumerate(valid):
        if left_value == 0 and index in interior:
            return RootWitness(left, 0.0, bracketed=True)
        if index + 1 < len(valid):
            right, right_value = valid[index + 1]
            if left_value * right_value < 0:
                return _bisect(h, left, right, xtol)
    candidates = [valid[index] for index in sorted(interior)]
    if not candidates:
        msg = f"no point of ({lower!r}, {upper!r}) could be evaluated"
        raise ConvergenceError(msg)
    x, value = min(candidates, key=lambda item: abs(item[1]))
    logger.info("no sign change on [%g, %g], best grid point x=%.17g", lower, upper, x)
    return RootWitness(x, abs(value), bracketed=False)


def invert_monotone(
    u: Callable[[float], float], target: float, lower: float, upper: float
) -> float:
    """Solve ``u(x) = target`` on [lower, upper] for a monotone *u*."""
    u_lower = u(lower)
    u_upper = u(upper)
    increasing = u_upper >= u_lower
    if (target <= u_lower) == increasing:
        return lower
    if (target >= u_upper) == increasing:
        return upper
    return optimize.brentq(
        lambda x: u(x) - target, lower, upper, xtol=1e-15, rtol=4 * np.finfo(float).eps
    )
