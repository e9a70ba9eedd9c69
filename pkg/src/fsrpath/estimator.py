"""Scikit-learn style estimator wrapping the full labeling pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .document import build_document
from .exceptions import DimensionError
from .fsr import FsrConfig, estimate_fsr
from .linalg import DesignMatrix
from .solvers import FAMILIES, Response


class FsrLasso(BaseEstimator, TransformerMixin):
    """Lasso path labeled with estimated false selection rates.

    ``fit`` screens the design, generates pseudo-variable replicates, labels
    every point of the solution path with an averaged FSR estimate, and
    records the full-data model at the smallest penalty meeting each target
    in ``alphas``.  ``transform`` keeps the columns of the model chosen for a
    target, so the estimator drops into a feature-selection pipeline.

    Parameters
    ----------
    family : {'linear', 'logistic', 'cox'}
    alphas : tuple of float
        Target false selection rates, each in (0, 1).
    b_replicates : int
        Pseudo-variable replicates to average over.
    screen : {'cv', 'pseudo'}
        Screening procedure for the preliminary support estimate.
    use_permutation : bool
        Append a row-permuted clone of the screened block to each replicate
        design, guarding against over-selection in the screening step.
    lambda_count : int
    lambda_ratio : float or None
        Grid length and span; None picks 1e-3 (n > p) or 1e-2 (p >= n).
    fit_intercept : bool
        Ignored for the Cox family.
    random_state : int or None

    Attributes
    ----------
    lambdas_ : ndarray of shape (m,)
    coef_path_ : ndarray of shape (m, p), original-scale coefficients
    intercept_path_ : ndarray of shape (m,) or None
    fsr_mean_ : ndarray of shape (m,)
    fsr_replicates_ : ndarray of shape (b_replicates, m)
    screening_set_ : ndarray of retained column indices
    selected_ : dict alpha -> SelectedModel
    """

    def __init__(self, family="linear", alphas=(0.1, 0.2, 0.3),
                 b_replicates=100, screen="cv", use_permutation=True,
                 lambda_count=100, lambda_ratio=None, fit_intercept=True,
                 random_state=None):
        self.family = family
        self.alphas = alphas
        self.b_replicates = b_replicates
        self.screen = screen
        self.use_permutation = use_permutation
        self.lambda_count = lambda_count
        self.lambda_ratio = lambda_ratio
        self.fit_intercept = fit_intercept
        self.random_state = random_state

    def _response(self, y, status):
        if self.family == "cox":
            arr = np.asarray(y, dtype=float)
            if status is not None:
                return Response.survival(arr, np.asarray(status, dtype=float))
            if arr.ndim == 2 and arr.shape[1] == 2:
                return Response.survival(arr[:, 0], arr[:, 1])
            raise DimensionError(
                "cox family needs status= or a two-column (time, event) y"
            )
        kind = "continuous" if self.family == "linear" else "binary"
        return Response(kind, np.asarray(y, dtype=float))

    def fit(self, X, y, status=None, feature_names=None):
        """Fit the labeled path on (X, y)."""
        if self.family not in FAMILIES:
            raise DimensionError(f"unknown family {self.family!r}")
        if feature_names is None and hasattr(X, "columns"):
            feature_names = [str(c) for c in X.columns]
        arr = check_array(X, dtype=np.float64, ensure_2d=True)
        design = DesignMatrix(arr, feature_names)
        resp = self._response(y, status)
        cfg = FsrConfig(
            b_replicates=self.b_replicates,
            use_permutation=self.use_permutation,
            alpha_targets=tuple(self.alphas),
            screening=self.screen,
            lambda_count=self.lambda_count,
            lambda_ratio=self.lambda_ratio,
            fit_intercept=self.fit_intercept,
            seed=self.random_state,
        )
        curve = estimate_fsr(design, resp, self.family, cfg)
        self.curve_ = curve
        self.n_features_in_ = design.p
        self._n_rows_ = design.n
        self.feature_names_in_ = np.asarray(design.column_names, dtype=object)
        self.lambdas_ = curve.lambdas
        self.coef_path_ = curve.full_path.coefs
        self.intercept_path_ = curve.full_path.intercepts
        self.fsr_mean_ = curve.mean
        self.fsr_replicates_ = curve.per_replicate
        self.screening_set_ = curve.screening.a0_hat
        self.selected_ = curve.selected
        return self

    def _pick_alpha(self, alpha):
        if alpha is None:
            alpha = self.alphas[0]
        if alpha not in self.selected_:
            raise KeyError(f"alpha {alpha} was not among the fitted targets")
        return alpha

    def get_support(self, alpha=None, indices=True):
        """Column indices (or boolean mask) of the model for one target."""
        check_is_fitted(self, "selected_")
        model = self.selected_[self._pick_alpha(alpha)]
        idx = model.active if model.feasible else np.empty(0, dtype=np.intp)
        if indices:
            return idx
        mask = np.zeros(self.n_features_in_, dtype=bool)
        mask[idx] = True
        return mask

    def transform(self, X, alpha=None):
        """Keep the columns selected for the target (default: first alpha)."""
        check_is_fitted(self, "selected_")
        arr = check_array(X, dtype=np.float64, ensure_2d=True)
        if arr.shape[1] != self.n_features_in_:
            raise DimensionError(
                f"X has {arr.shape[1]} columns, was fitted with "
                f"{self.n_features_in_}"
            )
        return arr[:, self.get_support(alpha)]

    def to_document(self, response_name="y"):
        """Serialize the fitted path as a PathDocument."""
        check_is_fitted(self, "curve_")
        return build_document(
            self.curve_,
            column_names=list(self.feature_names_in_),
            response_name=response_name,
            family=self.family,
            n=self._n_rows_,
            seed=self.random_state,
            b_replicates=self.b_replicates,
            screening_method=self.screen,
            use_permutation=self.use_permutation,
        )
