from genfrac.theorems.record import PointResidual, ReportRecord, TheoremReport
from genfrac.theorems.suite import checks, default_grid, run_full_suite
from genfrac.theorems.witness import mvt_find_c, rolle_find_c

__all__ = [
    "PointResidual",
    "ReportRecord",
    "TheoremReport",
    "checks",
    "default_grid",
    "mvt_find_c",
    "rolle_find_c",
    "run_full_suite",
]
