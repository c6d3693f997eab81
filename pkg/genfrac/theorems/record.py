import math
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from genfrac.errors import GenFracError

# Details key of the quotient rule report holding the residual of the transposed
# orientation, the one which did not decide the verdict.
OTHER_ORIENTATION_KEY: str = "other_orientation_max_residual"


@dataclass(frozen=True)
class PointResidual:
    # Evaluation point the residual belongs to, ``None`` for residuals which are not
    # attached to a point (the seven integral properties, a whole interval).
    point: Optional[float]

    residual: float

    # Short name of the quantity, e.g. the name of an integral property.
    label: str = ""


@dataclass(frozen=True)
class TheoremReport:
    theorem: str

    # Summary of the inputs: f, g, kernel, alpha, interval and points.
    inputs: dict[str, Any]

    residuals: tuple[PointResidual, ...]
    tolerance: float

    # The c of Rolle and of the mean value theorem or the x0 of the integral mean
    # value theorem; it always lies strictly inside the interval.
    witness: Optional[float]

    notes: tuple[str, ...]

    # Extra named numbers, e.g. both sides of an identity at the witness.
    details: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max((entry.residual for entry in self.residuals), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["max_residual"] = self.max_residual
        data["passed"] = self.passed
        return data


@dataclass(frozen=False)
class ReportRecord:
    """A record object collecting the residuals of one theorem check.

    A check creates one record, fills it point by point through the public interface
    and turns it into an immutable ``TheoremReport`` with ``build``. A point which
    raised is kept with an infinite residual, so the verdict fails and the note says
    why.
    """

    theorem: str
    tolerance: float
    inputs: dict[str, Any] = field(default_factory=dict)

    _residuals: list[PointResidual] = field(default_factory=list, init=False)
    _notes: list[str] = field(default_factory=list, init=False)
    _details: dict[str, float] = field(default_factory=dict, init=False)

    def add_residual(
        self, point: Optional[float], residual: float, label: str = ""
    ) -> None:
        if math.isnan(residual):
            residual = math.inf
        self._residuals.append(PointResidual(point, residual, label))

    def add_error(
        self, point: Optional[float], exc: GenFracError, label: str = ""
    ) -> None:
        """Record a point whose evaluation raised *exc*."""
        where = f"t={point!r}" if point is not None else label or "check"
        self._notes.append(f"{where}: {type(exc).__name__}: {exc}")
        self._residuals.append(PointResidual(point, math.inf, label))

    def add_note(self, note: str) -> None:
        self._notes.append(note)

    def set_detail(self, key: str, value: float) -> None:
        self._details[key] = value

    def build(self, witness: Optional[float] = None) -> TheoremReport:
        return TheoremReport(
            self.theorem,
            dict(self.inputs),
            tuple(self._residuals),
            self.tolerance,
            witness,
            tuple(self._notes),
            dict(self._details),
        )
