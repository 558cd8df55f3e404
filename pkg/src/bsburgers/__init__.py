"""Space-time B-spline collocation solver for the viscous Burgers' equation.

Quadratic B-splines integrate in time and cubic B-splines in space; see
:mod:`bsburgers.stepper` for the time step and :mod:`bsburgers.cli` for
the experiment driver.
"""

__version__ = "0.1.0"

from .basis import UniformGrid, cubic_eval, quad_eval  # noqa: E402
from .field import CoefficientVector, eval_at, eval_nodal, fit_initial  # noqa: E402
from .metrics import ErrorReport, error_report, l2_norm, linf_norm, peak  # noqa: E402
from .problems import FrontParams, ProblemSpec, make_problem  # noqa: E402
from .stepper import SolverConfig, SolverError, SolverState, advance, run  # noqa: E402

__all__ = [
    "UniformGrid", "cubic_eval", "quad_eval",
    "CoefficientVector", "eval_at", "eval_nodal", "fit_initial",
    "ErrorReport", "error_report", "l2_norm", "linf_norm", "peak",
    "FrontParams", "ProblemSpec", "make_problem",
    "SolverConfig", "SolverError", "SolverState", "advance", "run",
]
