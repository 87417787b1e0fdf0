from .qseries import QSeries
from .schwarzian import normalized_schwarzian, verify_schwarz_eq
from .frobenius import ratio_solution, solve_log, solve_power
from .catalog import build_h, entries, verify_entry
from .classify import admissible

__all__ = [
    "QSeries",
    "normalized_schwarzian",
    "verify_schwarz_eq",
    "ratio_solution",
    "solve_log",
    "solve_power",
    "build_h",
    "entries",
    "verify_entry",
    "admissible",
]
