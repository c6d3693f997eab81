"""Numerical configuration objects.

All the configuration objects are immutable and validate themselves on
construction, so a config that exists is a config that can be used. Overrides can be
read from a flat ``key = value`` text file where every key is prefixed by the section
it belongs to::

    # comments are allowed
    numeric.tol_rel = 1e-10
    quad.max_subdivisions = 8192
    suite.orientation = paper
"""
import dataclasses
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Union

from genfrac.constants import (
    EXPONENTIAL_VALIDITY_FLOOR,
    KERNEL_DERIVATIVE_FLOOR,
    Orientation,
)
from genfrac.errors import InvalidArgumentError

logger = logging.getLogger(__package__)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidArgumentError(message)


@dataclass(frozen=True)
class NumericConfig:
    # Largest step of the geometric epsilon schedule of the limit definition.
    eps0: float = 1e-2

    # Ratio between consecutive steps, strictly between 0 and 1.
    step_ratio: float = 0.5

    # Maximum number of steps in the schedule.
    max_steps: int = 30

    # Two successive extrapolants closer than ``tol_rel * (1 + |value|)`` converge.
    tol_rel: float = 1e-8

    # Number of Richardson columns built on top of the raw quotients.
    richardson_depth: int = 3

    # The boundary limit evaluates the closed form at ``a + offset`` for offsets
    # shrinking geometrically from ``boundary_offset0`` down to ``boundary_offset_min``.
    boundary_offset0: float = 1e-3
    boundary_offset_min: float = 1e-9

    # Left end of the validity interval of the ``exp`` kernel, which is valid on the
    # whole line. k' = e^t must stay above ``KERNEL_DERIVATIVE_FLOOR`` there.
    exp_floor: float = EXPONENTIAL_VALIDITY_FLOOR

    def __post_init__(self) -> None:
        _require(0 < self.step_ratio < 1, "step_ratio must lie in (0, 1)")
        _require(self.eps0 > 0, "eps0 must be positive")
        _require(self.tol_rel > 0, "tol_rel must be positive")
        _require(self.richardson_depth >= 1, "richardson_depth must be at least 1")
        _require(
            self.max_steps >= self.richardson_depth + 2,
            "max_steps must be at least richardson_depth + 2",
        )
        _require(
            0 < self.boundary_offset_min < self.boundary_offset0,
            "boundary offsets must satisfy 0 < boundary_offset_min < boundary_offset0",
        )
        _require(
            math.isfinite(self.exp_floor)
            and self.exp_floor >= math.log(KERNEL_DERIVATIVE_FLOOR),
            "exp_floor must be finite with e^exp_floor above the derivative floor",
        )


@dataclass(frozen=True)
class QuadConfig:
    tol_abs: float = 1e-10
    tol_rel: float = 1e-9
    max_subdivisions: int = 4096

    # Force the u = k(x)^alpha / alpha substitution even when k(a) != 0. When
    # ``False`` the substitution is still used automatically for k(a) == 0, alpha < 1.
    endpoint_singularity: bool = False

    # A panel narrower than this fraction of the whole interval is not split any
    # further; needing to split it means the error does not shrink (divergence).
    min_panel_fraction: float = 1e-13

    def __post_init__(self) -> None:
        _require(self.tol_abs > 0 and self.tol_rel > 0, "tolerances must be positive")
        _require(self.max_subdivisions >= 8, "max_subdivisions must be at least 8")
        _require(
            0 < self.min_panel_fraction < 1, "min_panel_fraction must lie in (0, 1)"
        )


@dataclass(frozen=True)
class RootConfig:
    # Number of subintervals scanned for a sign change by Rolle and MVT solvers.
    scan_intervals: int = 128

    # Number of subintervals scanned by the integral mean value solver.
    mean_scan_intervals: int = 64

    # Bisection stops once the bracket is narrower than this.
    xtol: float = 1e-13

    # Bisection tolerance of the integral mean value solver.
    mean_xtol: float = 1e-12

    # |f(a) - f(b)| above this violates the hypothesis of Rolle's theorem.
    match_tol: float = 1e-10

    # Number of samples used for the one-signedness check of g and for inf/sup of f.
    sign_samples: int = 256

    def __post_init__(self) -> None:
        _require(self.scan_intervals >= 2, "scan_intervals must be at least 2")
        _require(
            self.mean_scan_intervals >= 2, "mean_scan_intervals must be at least 2"
        )
        _require(self.xtol > 0 and self.mean_xtol > 0, "xtol must be positive")
        _require(self.match_tol >= 0, "match_tol must not be negative")
        _require(self.sign_samples >= 2, "sign_samples must be at least 2")


@dataclass(frozen=True)
class SuiteConfig:
    numeric: NumericConfig = field(default_factory=NumericConfig)
    quad: QuadConfig = field(default_factory=QuadConfig)
    root: RootConfig = field(default_factory=RootConfig)

    # Verdict tolerance of the checks evaluated through the closed form.
    tolerance: float = 1e-8

    # Verdict tolerance of the checks comparing a limit with the closed form; the
    # residual of those checks is scaled by (1 + |closed form|).
    limit_tolerance: float = 1e-6

    # Verdict tolerance of the inverse property checks (quadrature in the loop).
    inverse_tolerance: float = 1e-6

    # Which printed form of the quotient rule decides the verdict.
    orientation: str = Orientation.CONSISTENT

    # Number of evaluation points placed inside every interval of the grid.
    points_per_interval: int = 5

    def __post_init__(self) -> None:
        _require(
            self.orientation in (Orientation.CONSISTENT, Orientation.PAPER),
            f"unknown quotient orientation: {self.orientation!r}",
        )
        _require(self.points_per_interval >= 1, "points_per_interval must be >= 1")
        _require(
            min(self.tolerance, self.limit_tolerance, self.inverse_tolerance) > 0,
            "tolerances must be positive",
        )


_SECTIONS: dict[str, type] = {
    "numeric": NumericConfig,
    "quad": QuadConfig,
    "root": RootConfig,
    "suite": SuiteConfig,
}


def _coerce(config_class: type, name: str, raw: str) -> Any:
    fields_by_name = {f.name: f for f in dataclasses.fields(config_class)}
    if name not in fields_by_name or name in _SECTIONS:
        msg = f"unknown configuration key: {config_class.__name__}.{name}"
        raise InvalidArgumentError(msg)
    default = getattr(config_class(), name)
    try:
        if isinstance(default, bool):
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return raw.lower() in ("true", "1", "yes")
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
    except ValueError:
        msg = f"invalid value for {name}: {raw!r}"
        raise InvalidArgumentError(msg) from None
    return raw


def parse_overrides(text: str) -> dict[str, dict[str, Any]]:
    """Parse the flat ``section.key = value`` text into per-section overrides."""
    overrides: dict[str, dict[str, Any]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()  # noqa: PLW2901
        if not line:
            continue
        if "=" not in line:
            msg = f"line {lineno}: expected `key = value`"
            raise InvalidArgumentError(msg)
        key, raw = (part.strip() for part in line.split("=", 1))
        section, _, name = key.partition(".")
        if section not in _SECTIONS or not name:
            msg = f"line {lineno}: unknown configuration key {key!r}"
            raise InvalidArgumentError(msg)
        value = _coerce(_SECTIONS[section], name, raw)
        overrides.setdefault(section, {})[name] = value
    return overrides


def build_suite_config(
    overrides: Mapping[str, Mapping[str, Any]], base: Union[SuiteConfig, None] = None
) -> SuiteConfig:
    """Apply per-section overrides on top of *base* (the defaults if omitted)."""
    base = base if base is not None else SuiteConfig()
    numeric = dataclasses.replace(base.numeric, **overrides.get("numeric", {}))
    quad = dataclasses.replace(base.quad, **overrides.get("quad", {}))
    root = dataclasses.replace(base.root, **overrides.get("root", {}))
    return dataclasses.replace(
        base, numeric=numeric, quad=quad, root=root, **overrides.get("suite", {})
    )


def load_config_file(path: Path) -> SuiteConfig:
    """Read the configuration file at *path* and return the resulting config."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read configuration file {str(path)!r}: {exc.strerror}"
        raise InvalidArgumentError(msg) from None
    overrides = parse_overrides(text)
    logger.debug("config=%s overrides=%s", path, overrides)
    return build_suite_config(overrides)
