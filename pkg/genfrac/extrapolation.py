"""Sequence acceleration shared by the derivative and integral modules.

``richardson`` consumes a lazily produced sequence of approximations ``A(h_i)`` with
``h_i = h_0 * ratio^i`` and builds a Neville tableau on top of it, in the manner of
Ridders' method: every new row costs one evaluation and the sweep stops as soon as
two successive extrapolants agree, or as soon as roundoff makes them drift apart.

``aitken`` accelerates a finished sequence whose error shrinks geometrically with an
unknown ratio, which is the case for one sided limits of fractional powers.
"""
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

logger = logging.getLogger(__package__)

# Stop the sweep when the newest extrapolant is this much worse than the best one.
SAFE: float = 2.0


@dataclass(frozen=True)
class Extrapolation:
    value: float

    # Difference between the accepted extrapolant and its predecessor.
    error: float

    # Number of sequence terms consumed.
    terms: int

    converged: bool

    # Set when the sequence was detected to move away from any limit.
    diverged: bool = False


def richardson(
    terms: Iterable[float],
    ratio: float,
    depth: int,
    tol_rel: float,
    *,
    first_order: int = 1,
    order_step: int = 1,
) -> Extrapolation:
    """Extrapolate the sequence *terms* to ``h -> 0``.

    The error of ``A(h)`` is assumed to expand in powers ``h^p`` with
    ``p = first_order, first_order + order_step, ...``; column ``j`` of the tableau
    removes the ``j``-th of them. At most *depth* columns are built.
    """
    previous_row: list[float] = []
    previous_best = math.nan
    best = Extrapolation(math.nan, math.inf, 0, converged=False)
    count = 0
    for count, term in enumerate(terms, start=1):
        row = [term]
        for j in range(1, min(len(previous_row), depth) + 1):
            factor = ratio ** -(first_order + (j - 1) * order_step)
            row.append((factor * row[j - 1] - previous_row[j - 1]) / (factor - 1.0))
        previous_row = row
        current = row[-1]
        if count == 1:
            previous_best = current
            best = Extrapolation(current, math.inf, count, converged=False)
            continue
        error = abs(current - previous_best)
        previous_best = current
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("term=%d value=%.17g error=%.3e", count, current, error)
        if error <= best.error:
            best = Extrapolation(current, error, count, converged=False)
        if error <= tol_rel * (1.0 + abs(current)):
            return Extrapolation(current, error, count, converged=True)
        if len(row) > depth and error >= SAFE * best.error:
            break
    if best.terms == 0:
        return best
    converged = best.error <= tol_rel * (1.0 + abs(best.value))
    return Extrapolation(best.value, best.error, count, converged)


def aitken(terms: Sequence[float], tol_rel: float) -> Extrapolation:
    """Accelerate a geometrically converging sequence with Aitken's delta squared.

    A sequence whose successive differences do not shrink is reported as diverged
    together with its last term, so that a geometric divergence is never mapped to a
    finite "limit".
    """
    if not terms:
        return Extrapolation(math.nan, math.inf, 0, converged=False)
    if len(terms) < 3:
        return Extrapolation(terms[-1], math.inf, len(terms), converged=False)
    differences = [right - left for left, right in zip(terms, terms[1:])]
    growing = [
        abs(later) >= abs(earlier) > 0
        for earlier, later in zip(differences[:-1], differences[1:])
    ][-2:]
    noticeable = abs(differences[-1]) > tol_rel * (1.0 + abs(terms[-1]))
    if noticeable and all(growing):
        logger.warning("sequence diverges, last differences %r", differences[-2:])
        return Extrapolation(
            terms[-1], abs(differences[-1]), len(terms), converged=False, diverged=True
        )
    accelerated = []
    for first, second, third in zip(terms, terms[1:], terms[2:]):
        curvature = third - 2.0 * second + first
        if abs(curvature) <= 1e-15 * (abs(first) + abs(second) + abs(third)):
            accelerated.append(third)
        else:
            accelerated.append(third - (third - second) ** 2 / curvature)
    if len(accelerated) == 1:
        value = accelerated[0]
        error = abs(terms[-1] - value)
    else:
        value = accelerated[-1]
        error = abs(accelerated[-1] - accelerated[-2])
    converged = error <= tol_rel * (1.0 + abs(value))
    return Extrapolation(value, error, len(terms), converged)
