"""Penalized regression path solvers.

Cyclic coordinate descent with warm starts down a decreasing penalty grid,
for squared-error, logistic, and Cox partial-likelihood losses.  All losses
use the 1/n convention:

    linear    (1/2n) ||y - b0 - X b||^2              + lam * ||b||_1
    logistic  -(1/n) sum { y eta - log(1 + e^eta) }  + lam * ||b||_1
    cox       -(1/n) sum_{failures} { eta_i - log sum_{risk set} e^eta_j }
                                                     + lam * ||b||_1

Designs are standardized internally (1/n variance) unless already flagged as
standardized; coefficients are mapped back to the caller's scale, preserving
exact zeros so active sets are unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from . import _descent
from .exceptions import (
    AllCensored,
    DimensionError,
    NoConvergence,
    SeparationDetected,
    ZeroVarianceResponse,
)
from .linalg import DesignMatrix
from .validation import as_float_vector, check_rng

CD_TOL = 1e-7
ZERO_TOL = 1e-10  # boundary roundoff guard; keeps inactive coordinates exactly 0
MAX_SWEEPS = 100_000
MAX_IRLS = 100
KKT_TOL = 1e-4
ETA_CLIP = 250.0  # linear predictors are clipped here before exponentiation
SEPARATION_ETA = 30.0

FAMILIES = ("linear", "logistic", "cox")
_FAMILY_KIND = {"linear": "continuous", "logistic": "binary", "cox": "survival"}


@dataclass
class Response:
    """A response vector tagged with its model family kind.

    kind is one of 'continuous', 'binary', 'survival'.  Survival responses
    carry observed times in ``y`` and failure indicators in ``delta`` (0 for
    right-censoring, 1 for failure).
    """

    kind: str
    y: np.ndarray
    delta: np.ndarray = None

    def __post_init__(self):
        self.y = as_float_vector(self.y, "response")
        if self.kind == "binary":
            if not np.all((self.y == 0.0) | (self.y == 1.0)):
                raise DimensionError("binary response must contain only 0 and 1")
        elif self.kind == "survival":
            if np.any(self.y <= 0.0):
                raise DimensionError("survival times must be positive")
            if self.delta is None:
                raise DimensionError("survival response requires delta indicators")
            self.delta = as_float_vector(self.delta, "delta")
            if self.delta.shape != self.y.shape:
                raise DimensionError("delta must match the time vector length")
            if not np.all((self.delta == 0.0) | (self.delta == 1.0)):
                raise DimensionError("delta must contain only 0 and 1")
        elif self.kind != "continuous":
            raise DimensionError(f"unknown response kind {self.kind!r}")

    @classmethod
    def continuous(cls, y):
        return cls("continuous", y)

    @classmethod
    def binary(cls, y):
        return cls("binary", y)

    @classmethod
    def survival(cls, time, event):
        return cls("survival", time, event)

    @property
    def n(self):
        return self.y.shape[0]


def _coerce_response(y, family):
    if isinstance(y, Response):
        expected = _FAMILY_KIND[family]
        if y.kind != expected:
            raise DimensionError(
                f"family {family!r} needs a {expected} response, got {y.kind!r}"
            )
        return y
    if family == "cox":
        raise DimensionError("survival responses must be passed as Response objects")
    return Response(_FAMILY_KIND[family], y)


@dataclass
class LassoPath:
    """Solution path over a decreasing penalty grid.

    coefs holds exact zeros for inactive coordinates, so
    ``active_sets[i] == nonzero(coefs[i])`` by construction.  ``truncated_at``
    records the grid index at which a logistic fit was abandoned because the
    linear predictor diverged; the stored arrays then cover only the prefix.
    """

    family: str
    lambdas: np.ndarray
    coefs: np.ndarray
    intercepts: np.ndarray = None
    active_sets: list = field(default=None, repr=False)
    truncated_at: int = None

    def __post_init__(self):
        if self.active_sets is None:
            self.active_sets = [np.flatnonzero(row) for row in self.coefs]

    @property
    def n_active(self):
        return np.array([a.size for a in self.active_sets])

    def __len__(self):
        return self.lambdas.shape[0]


def _prepare_design(x, standardize=None):
    """Standardize unless the caller already did; return transform info.

    standardize=False trusts the columns as given (used for augmented
    designs whose raw cross-products must not be disturbed); None defers to
    the DesignMatrix flag.
    """
    if not isinstance(x, DesignMatrix):
        x = DesignMatrix(np.asarray(x), None)
    if standardize is None:
        standardize = not x.standardized
    if not standardize:
        p = x.p
        return x, np.zeros(p), np.ones(p)
    xd, center, scale = x.standardize()
    return xd, center, scale


def _check_lambdas(lambdas):
    lam = as_float_vector(lambdas, "lambdas")
    if np.any(lam <= 0.0):
        raise DimensionError("all penalty values must be positive")
    if lam.size > 1 and np.any(np.diff(lam) >= 0.0):
        raise DimensionError("penalty grid must be strictly decreasing")
    return lam


def _finish_path(family, lambdas, coefs_std, intercepts_std, center, scale,
                 truncated_at=None):
    """Map standardized-scale estimates back to the caller's column scale."""
    coefs = coefs_std / scale
    intercepts = None
    if intercepts_std is not None:
        intercepts = intercepts_std - coefs @ center
    return LassoPath(
        family=family,
        lambdas=lambdas,
        coefs=coefs,
        intercepts=intercepts,
        truncated_at=truncated_at,
    )


def null_gradient(x, y, family, fit_intercept=True):
    """Score of each penalized coordinate at the family's null model.

    The null model is the unpenalized intercept-only fit (or the all-zero
    coefficient vector when fit_intercept is false).  The max-abs entry of
    this vector is the smallest penalty at which the path is identically 0.
    """
    xd, _, _ = _prepare_design(x)
    resp = _coerce_response(y, family)
    if resp.n != xd.n:
        raise DimensionError("response length does not match design rows")
    n = xd.n
    if family == "linear":
        resid = resp.y - resp.y.mean() if fit_intercept else resp.y
    elif family == "logistic":
        pbar = resp.y.mean() if fit_intercept else 0.5
        resid = resp.y - pbar
    elif family == "cox":
        if not np.any(resp.delta == 1.0):
            raise AllCensored("no observed failures")
        stats = _CoxStats(resp.y, resp.delta)
        mu, _ = stats.mu_nu(np.zeros(n))
        resid = resp.delta - mu
    else:
        raise DimensionError(f"unknown family {family!r}")
    return xd.values.T @ resid / n


def lambda_grid(x, y, family="linear", m=100, ratio=None, fit_intercept=True):
    """Log-equispaced penalty grid from lambda_max down to ratio*lambda_max.

    lambda_max is the max-abs null-model score over penalized columns, the
    smallest penalty at which every coefficient is zero.
    """
    if m < 2:
        raise DimensionError("grid needs m >= 2 points")
    xd, _, _ = _prepare_design(x)
    if ratio is None:
        ratio = 1e-3 if xd.n > xd.p else 1e-2
    if not (0.0 < ratio < 1.0):
        raise DimensionError(f"ratio must lie in (0, 1), got {ratio}")
    g = null_gradient(x, y, family, fit_intercept)
    g = np.where(xd.constant_columns, 0.0, g)
    lam_max = float(np.max(np.abs(g)))
    if lam_max <= 0.0:
        raise ZeroVarianceResponse("null-model gradient is identically zero")
    return np.geomspace(lam_max, ratio * lam_max, m)


def fit_linear_path(x, y, lambdas, fit_intercept=True, tol=CD_TOL,
                    max_sweeps=MAX_SWEEPS, standardize=None):
    """Lasso path for a continuous response by coordinate descent."""
    xd, center, scale = _prepare_design(x, standardize)
    resp = _coerce_response(y, "linear")
    if resp.n != xd.n:
        raise DimensionError("response length does not match design rows")
    lam = _check_lambdas(lambdas)
    xv = xd.values
    n, p = xv.shape
    w = np.ones(n)
    pen = np.ones(p)
    beta = np.zeros(p)
    b0 = 0.0
    r = resp.y.copy()
    m = lam.size
    coefs = np.empty((m, p))
    intercepts = np.empty(m) if fit_intercept else None
    for i in range(m):
        b0, _, ok = _descent.solve_wls(
            xv, w, r, beta, b0, lam[i], pen, fit_intercept, tol, max_sweeps
        )
        if not ok:
            raise NoConvergence(
                f"linear path did not converge at grid index {i}", lambda_index=i
            )
        tiny = (beta != 0.0) & (np.abs(beta) <= ZERO_TOL)
        if np.any(tiny):
            r += xv[:, tiny] @ beta[tiny]
            beta[tiny] = 0.0
        coefs[i] = beta
        if fit_intercept:
            intercepts[i] = b0
    return _finish_path("linear", lam, coefs, intercepts, center, scale)


def fit_logistic_path(x, y, lambdas, fit_intercept=True, tol=CD_TOL,
                      max_sweeps=MAX_SWEEPS, max_irls=MAX_IRLS,
                      standardize=None):
    """L1-penalized logistic path via IRLS with coordinate-descent inner loops.

    The intercept is unpenalized.  If the linear predictor exceeds
    SEPARATION_ETA in magnitude at some grid point, the path is truncated
    there (raised instead when it happens at the very first point).
    """
    xd, center, scale = _prepare_design(x, standardize)
    resp = _coerce_response(y, "logistic")
    if resp.n != xd.n:
        raise DimensionError("response length does not match design rows")
    yv = resp.y
    if np.all(yv == yv[0]):
        raise DimensionError("binary response is constant")
    lam = _check_lambdas(lambdas)
    xv = xd.values
    n, p = xv.shape
    pen = np.ones(p)
    beta = np.zeros(p)
    # Start at the exact null fit so rows at lam >= lam_max stay exactly zero.
    ybar = yv.mean()
    b0 = float(np.log(ybar / (1.0 - ybar))) if fit_intercept else 0.0
    m = lam.size
    coefs = np.empty((m, p))
    intercepts = np.empty(m) if fit_intercept else None
    truncated_at = None
    for i in range(m):
        for _ in range(max_irls):
            beta_prev = beta.copy()
            b0_prev = b0
            eta = b0 + xv @ beta
            prob = expit(eta)
            w = np.maximum(prob * (1.0 - prob), 1e-5)
            r = (yv - prob) / w
            b0, _, ok = _descent.solve_wls(
                xv, w, r, beta, b0, lam[i], pen, fit_intercept, tol, max_sweeps
            )
            if not ok:
                raise NoConvergence(
                    f"logistic inner solve stalled at grid index {i}",
                    lambda_index=i,
                )
            delta = max(np.max(np.abs(beta - beta_prev)), abs(b0 - b0_prev))
            if delta < tol * 10.0:
                break
        else:
            raise NoConvergence(
                f"logistic IRLS did not converge at grid index {i}", lambda_index=i
            )
        beta[np.abs(beta) <= ZERO_TOL] = 0.0
        eta = b0 + xv @ beta
        if np.max(np.abs(eta)) > SEPARATION_ETA:
            if i == 0:
                raise SeparationDetected(
                    "linear predictor diverged at the first grid point",
                    lambda_index=0,
                )
            truncated_at = i
            break
        coefs[i] = beta
        if fit_intercept:
            intercepts[i] = b0
    if truncated_at is not None:
        lam = lam[:truncated_at]
        coefs = coefs[:truncated_at]
        if intercepts is not None:
            intercepts = intercepts[:truncated_at]
    return _finish_path("logistic", lam, coefs, intercepts, center, scale,
                        truncated_at=truncated_at)


class _CoxStats:
    """Sorted-time bookkeeping for Breslow partial-likelihood quantities.

    Risk sets are defined by time value, so tied times share one risk-set
    sum; cumulative hazard increments are accumulated through the end of
    each tie group.
    """

    def __init__(self, time, delta):
        self.n = time.shape[0]
        self.order = np.argsort(time, kind="stable")
        ts = time[self.order]
        self.delta_sorted = delta[self.order]
        # first/last sorted position sharing each position's time value
        self.grp_first = np.searchsorted(ts, ts, side="left")
        self.grp_last = np.searchsorted(ts, ts, side="right") - 1
        self.inv_order = np.empty(self.n, dtype=np.intp)
        self.inv_order[self.order] = np.arange(self.n)

    def _risk_sums(self, eta):
        es = np.exp(np.clip(eta, -ETA_CLIP, ETA_CLIP))[self.order]
        suffix = np.cumsum(es[::-1])[::-1]
        risk = suffix[self.grp_first]
        return es, risk

    def mu_nu(self, eta):
        """Expected event counts and diagonal Hessian terms, original order."""
        es, risk = self._risk_sums(eta)
        h1 = np.cumsum(self.delta_sorted / risk)[self.grp_last]
        h2 = np.cumsum(self.delta_sorted / risk**2)[self.grp_last]
        mu = np.empty(self.n)
        nu = np.empty(self.n)
        mu[self.order] = es * h1
        nu[self.order] = es**2 * h2
        return mu, nu

    def loglik(self, eta):
        """Breslow log partial likelihood (a sum, not an average)."""
        es, risk = self._risk_sums(eta)
        eta_s = np.log(es)
        return float(np.sum(self.delta_sorted * (eta_s - np.log(risk))))


def fit_cox_path(x, y, lambdas, tol=CD_TOL, max_sweeps=MAX_SWEEPS,
                 max_irls=MAX_IRLS, standardize=None):
    """L1-penalized Cox path (Breslow ties), IRLS + coordinate descent.

    There is no intercept: the partial likelihood is invariant to one.
    """
    xd, center, scale = _prepare_design(x, standardize)
    resp = _coerce_response(y, "cox")
    if resp.n != xd.n:
        raise DimensionError("response length does not match design rows")
    if not np.any(resp.delta == 1.0):
        raise AllCensored("no observed failures")
    lam = _check_lambdas(lambdas)
    xv = xd.values
    n, p = xv.shape
    pen = np.ones(p)
    stats = _CoxStats(resp.y, resp.delta)
    beta = np.zeros(p)
    m = lam.size
    coefs = np.empty((m, p))
    for i in range(m):
        for _ in range(max_irls):
            beta_prev = beta.copy()
            eta = xv @ beta
            mu, nu = stats.mu_nu(eta)
            w = mu - nu
            live = w > 1e-12
            w = np.where(live, w, 0.0)
            r = np.where(live, (resp.delta - mu) / np.where(live, w, 1.0), 0.0)
            _, _, ok = _descent.solve_wls(
                xv, w, r, beta, 0.0, lam[i], pen, False, tol, max_sweeps
            )
            if not ok:
                raise NoConvergence(
                    f"cox inner solve stalled at grid index {i}", lambda_index=i
                )
            if np.max(np.abs(beta - beta_prev)) < tol * 10.0:
                break
        else:
            raise NoConvergence(
                f"cox IRLS did not converge at grid index {i}", lambda_index=i
            )
        beta[np.abs(beta) <= ZERO_TOL] = 0.0
        coefs[i] = beta
    return _finish_path("cox", lam, coefs, None, center, scale)


def fit_path(x, y, lambdas, family, fit_intercept=True, **kwargs):
    """Dispatch to the family-specific path solver."""
    if family == "linear":
        return fit_linear_path(x, y, lambdas, fit_intercept=fit_intercept, **kwargs)
    if family == "logistic":
        return fit_logistic_path(x, y, lambdas, fit_intercept=fit_intercept, **kwargs)
    if family == "cox":
        return fit_cox_path(x, y, lambdas, **kwargs)
    raise DimensionError(f"unknown family {family!r}")


def kkt_max_violation(x, y, path):
    """Per-grid-point worst violation of the subgradient optimality system.

    For active j the score must equal lam * sign(beta_j); for inactive j its
    magnitude must not exceed lam.  The unpenalized intercept score is
    included when the path carries intercepts.  Scores are computed on the
    standardized design, matching the scale the solver optimized; the linear
    predictor is scale-invariant so it uses the caller-scale parameters.
    """
    xd, center, scale = _prepare_design(x)
    resp = _coerce_response(y, path.family)
    x_orig = x.values if isinstance(x, DesignMatrix) else np.asarray(x, dtype=float)
    n = xd.n
    cox_stats = _CoxStats(resp.y, resp.delta) if path.family == "cox" else None
    out = np.empty(len(path))
    for i in range(len(path)):
        coef = path.coefs[i]
        eta = x_orig @ coef
        if path.intercepts is not None:
            eta = eta + path.intercepts[i]
        if path.family == "linear":
            resid = resp.y - eta
        elif path.family == "logistic":
            resid = resp.y - expit(eta)
        else:
            mu, _ = cox_stats.mu_nu(eta)
            resid = resp.delta - mu
        score = xd.values.T @ resid / n
        score = np.where(xd.constant_columns, 0.0, score)
        lam = path.lambdas[i]
        active = coef != 0.0
        viol = np.where(
            active,
            np.abs(score - lam * np.sign(coef)),
            np.maximum(np.abs(score) - lam, 0.0),
        )
        worst = float(viol.max()) if viol.size else 0.0
        if path.intercepts is not None:
            worst = max(worst, abs(float(resid.mean())))
        out[i] = worst
    return out


@dataclass
class CvResult:
    """K-fold cross-validation summary for one design/response pair."""

    lam: float
    lambda_index: int
    path: LassoPath
    mean_deviance: np.ndarray
    folds: np.ndarray


def _deviance(family, resp, idx, eta_all, cox_stats_all=None):
    """Mean held-out deviance given the full-length linear predictor."""
    if family == "linear":
        return float(np.mean((resp.y[idx] - eta_all[idx]) ** 2))
    if family == "logistic":
        prob = np.clip(expit(eta_all[idx]), 1e-10, 1.0 - 1e-10)
        yv = resp.y[idx]
        return float(-2.0 * np.mean(yv * np.log(prob) + (1.0 - yv) * np.log1p(-prob)))
    # Cox: cross-validated partial likelihood (full minus training), since
    # held-out rows have no self-contained risk sets.
    train = np.setdiff1d(np.arange(resp.n), idx, assume_unique=True)
    stats_train = _CoxStats(resp.y[train], resp.delta[train])
    ll_all = cox_stats_all.loglik(eta_all)
    ll_train = stats_train.loglik(eta_all[train])
    return float(-2.0 * (ll_all - ll_train) / idx.size)


def cv_select_lambda(x, y, family="linear", k=10, seed=None, lambdas=None,
                     m=100, ratio=None, fit_intercept=True):
    """Pick the penalty minimizing mean K-fold deviance (ties -> larger).

    Folds are a uniformly random partition driven by ``seed``.  The returned
    path is the full-data fit over the same grid, so the selected penalty
    indexes directly into it.
    """
    if k < 2:
        raise DimensionError("cross-validation needs k >= 2 folds")
    if not isinstance(x, DesignMatrix):
        x = DesignMatrix(np.asarray(x), None)
    resp = _coerce_response(y, family)
    n = x.n
    if n < 2 * k and k != n:
        raise DimensionError(f"n={n} too small for k={k} folds")
    if lambdas is None:
        lambdas = lambda_grid(x, resp, family, m=m, ratio=ratio,
                              fit_intercept=fit_intercept)
    lam = _check_lambdas(lambdas)
    rng = check_rng(seed)
    folds = np.empty(n, dtype=np.intp)
    perm = rng.permutation(n)
    for f, chunk in enumerate(np.array_split(perm, k)):
        folds[chunk] = f

    full_path = fit_path(x, resp, lam, family, fit_intercept=fit_intercept)
    m_eff = len(full_path)
    dev = np.zeros((k, m_eff))
    cox_stats_all = _CoxStats(resp.y, resp.delta) if family == "cox" else None
    for f in range(k):
        val = np.flatnonzero(folds == f)
        train = np.flatnonzero(folds != f)
        x_train = DesignMatrix(x.values[train], list(x.column_names))
        if family == "cox":
            y_train = Response.survival(resp.y[train], resp.delta[train])
        else:
            y_train = Response(resp.kind, resp.y[train])
        fold_path = fit_path(x_train, y_train, lam, family,
                             fit_intercept=fit_intercept)
        m_fold = min(m_eff, len(fold_path))
        for i in range(m_fold):
            coef = fold_path.coefs[i]
            eta_all = x.values @ coef
            if fold_path.intercepts is not None:
                eta_all = eta_all + fold_path.intercepts[i]
            dev[f, i] = _deviance(family, resp, val, eta_all, cox_stats_all)
        if m_fold < m_eff:
            dev[f, m_fold:] = dev[f, m_fold - 1]
    mean_dev = dev.mean(axis=0)
    best = int(np.argmin(mean_dev))  # first minimum = largest penalty on ties
    return CvResult(
        lam=float(full_path.lambdas[best]),
        lambda_index=best,
        path=full_path,
        mean_deviance=mean_dev,
        folds=folds,
    )
