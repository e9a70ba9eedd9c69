"""False-selection-rate labels for penalized regression solution paths."""

from .estimator import FsrLasso
from .exceptions import (
    AllCensored,
    DimensionError,
    EmptyComplement,
    FsrPathError,
    NoConvergence,
    NonFiniteInput,
    SeparationDetected,
    ZeroVarianceResponse,
)
from .fsr import FsrConfig, FsrCurve, estimate_fsr, fsr_replicate
from .linalg import (
    DesignMatrix,
    PseudoFactory,
    PseudoMatrix,
    QrFactors,
    generate_pseudo,
    haar_orthonormal,
    null_space_basis,
    permuted_copy,
    qr_pivoted,
)
from .metrics import SelectionOutcome, fsr_of, tsr_of
from .screening import ScreenResult, screen_cv_lasso, screen_pseudo
from .simgen import Scenario, SimResult, draw_beta, draw_design, draw_response, run_scenario
from .solvers import (
    CvResult,
    LassoPath,
    Response,
    cv_select_lambda,
    fit_cox_path,
    fit_linear_path,
    fit_logistic_path,
    fit_path,
    kkt_max_violation,
    lambda_grid,
)

__version__ = "0.1.0"

__all__ = [
    "AllCensored",
    "CvResult",
    "DesignMatrix",
    "DimensionError",
    "EmptyComplement",
    "FsrConfig",
    "FsrCurve",
    "FsrLasso",
    "FsrPathError",
    "LassoPath",
    "NoConvergence",
    "NonFiniteInput",
    "PseudoFactory",
    "PseudoMatrix",
    "QrFactors",
    "Response",
    "Scenario",
    "ScreenResult",
    "SelectionOutcome",
    "SeparationDetected",
    "SimResult",
    "ZeroVarianceResponse",
    "cv_select_lambda",
    "draw_beta",
    "draw_design",
    "draw_response",
    "estimate_fsr",
    "fit_cox_path",
    "fit_linear_path",
    "fit_logistic_path",
    "fit_path",
    "fsr_of",
    "fsr_replicate",
    "generate_pseudo",
    "haar_orthonormal",
    "kkt_max_violation",
    "lambda_grid",
    "null_space_basis",
    "permuted_copy",
    "qr_pivoted",
    "run_scenario",
    "screen_cv_lasso",
    "screen_pseudo",
    "tsr_of",
]
