"""Adaptive Gauss-Kronrod quadrature.

Every panel is integrated with the 15 point Kronrod rule and its embedded 7 point
Gauss rule; ``|K15 - G7|`` is the panel error. The panel with the largest error is
bisected until the total error meets the tolerance or the panel budget is spent. The
nodes never touch the panel ends, so integrable endpoint singularities are sampled
without being evaluated.

The final value is summed over the panels from left to right, so the result does not
depend on the order in which panels were refined.
"""
import heapq
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from genfrac.config import QuadConfig
from genfrac.errors import InvalidArgumentError

# Nonnegative Kronrod abscissae on [-1, 1]. The odd entries and the centre are
# the Gauss nodes.
KRONROD_NODES = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)

KRONROD_WEIGHTS = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)

# Weights of the Gauss nodes KRONROD_NODES[1], [3], [5] and the centre.
GAUSS_WEIGHTS = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

# Full symmetric node set on [-1, 1]: the 7 positive nodes mirrored, then the centre.
_NODES = np.concatenate([-KRONROD_NODES[:-1], KRONROD_NODES[:-1], [0.0]])
_K_WEIGHTS = np.concatenate(
    [KRONROD_WEIGHTS[:-1], KRONROD_WEIGHTS[:-1], [KRONROD_WEIGHTS[-1]]]
)
_G_WEIGHTS = np.zeros_like(_K_WEIGHTS)
_G_WEIGHTS[[1, 3, 5]] = GAUSS_WEIGHTS[:3]
_G_WEIGHTS[[8, 10, 12]] = GAUSS_WEIGHTS[:3]
_G_WEIGHTS[14] = GAUSS_WEIGHTS[3]

logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float

    # Number of panels the interval ended up split into.
    subdivisions: int

    converged: bool

    # The error stopped shrinking under refinement: the integral does not exist.
    diverged: bool = False

    # The integral was computed in the variable u = k(x)^alpha / alpha.
    substituted: bool = False


@dataclass(frozen=True)
class Panel:
    left: float
    right: float
    value: float
    error: float


def gauss_kronrod_panel(
    f: Callable[[float], float], left: float, right: float
) -> Panel:
    """Integrate *f* over one panel, returning the K15 value and ``|K15 - G7|``."""
    centre = 0.5 * (left + right)
    half = 0.5 * (right - left)
    samples = np.array([f(x) for x in (centre + half * _NODES).tolist()])
    kronrod = half * float(np.dot(_K_WEIGHTS, samples))
    gauss = half * float(np.dot(_G_WEIGHTS, samples))
    return Panel(left, right, kronrod, abs(kronrod - gauss))


def _tolerance(cfg: QuadConfig, value: float) -> float:
    return max(cfg.tol_abs, cfg.tol_rel * abs(value))


def adaptive_quadrature(
    f: Callable[[float], float], lower: float, upper: float, cfg: QuadConfig
) -> QuadratureResult:
    """Integrate *f* over [lower, upper] with ``lower <= upper``.

    Evaluation errors of *f* propagate. A panel narrower than
    ``cfg.min_panel_fraction`` of the interval is never split; reaching that point
    means the error does not shrink, which is reported as ``diverged``.
    """
    if lower == upper:
        return QuadratureResult(0.0, 0.0, 0, converged=True)
    if not lower < upper:
        msg = f"quadrature bounds out of order: [{lower!r}, {upper!r}]"
        raise InvalidArgumentError(msg)
    min_width = cfg.min_panel_fraction * (upper - lower)
    first = gauss_kronrod_panel(f, lower, upper)
    # Heap on (-error, left) so the refinement order is deterministic.
    heap: list[tuple[float, float, Panel]] = [(-first.error, first.left, first)]
    # Running totals over the heap, updated on every split; the result is summed
    # again with ``math.fsum`` once the refinement stops.
    value = first.value
    total_error = first.error
    diverged = False
    while True:
        if total_error <= _tolerance(cfg, value):
            break
        if len(heap) >= cfg.max_subdivisions:
            logger.warning(
                "quadrature budget exhausted: panels=%d error=%.3e",
                len(heap),
                total_error,
            )
            break
        _, _, worst = heapq.heappop(heap)
        middle = 0.5 * (worst.left + worst.right)
        too_narrow = worst.right - worst.left < min_width
        if too_narrow or not worst.left < middle < worst.right:
            heapq.heappush(heap, (-worst.error, worst.left, worst))
            diverged = True
            logger.warning(
                "quadrature error does not shrink near x=%.17g, integral diverges",
                worst.left,
            )
            break
        halves = (
            gauss_kronrod_panel(f, worst.left, middle),
            gauss_kronrod_panel(f, middle, worst.right),
        )
        for half in halves:
            heapq.heappush(heap, (-half.error, half.left, half))
        value += halves[0].value + halves[1].value - worst.value
        total_error += halves[0].error + halves[1].error - worst.error
        total_error = max(total_error, 0.0)
    panels = sorted((panel for _, _, panel in heap), key=lambda panel: panel.left)
    value = math.fsum(panel.value for panel in panels)
    total_error = math.fsum(panel.error for panel in panels)
    converged = not diverged and total_error <= _tolerance(cfg, value)
    logger.debug(
        "quadrature [%g, %g] value=%.17g error=%.3e panels=%d",
        lower,
        upper,
        value,
        total_error,
        len(panels),
    )
    return QuadratureResult(value, total_error, len(panels), converged, diverged)
