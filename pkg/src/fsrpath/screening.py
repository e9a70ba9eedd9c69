"""Preliminary support estimation ahead of pseudo-variable generation.

Two procedures: the Lasso tuned by K-fold cross-validation, and the
permuted-copy procedure that augments the design with a row-permuted clone
of itself and tunes the penalty until selected clones are rare.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError
from .linalg import DesignMatrix, permuted_copy, qr_pivoted
from .solvers import _coerce_response, cv_select_lambda, fit_path, lambda_grid
from .validation import check_rng


@dataclass
class ScreenResult:
    """Outcome of a screening pass.

    a0_hat holds the retained column indices (sorted), r0_hat the numerical
    rank of the corresponding block.  For the permuted-copy procedure,
    diagnostics carries the per-penalty averaged clone-selection ratios and
    the selected penalty; no_feasible_lambda flags the fallback to an empty
    set when no grid point met the threshold.
    """

    method: str
    a0_hat: np.ndarray
    r0_hat: int
    diagnostics: dict = field(default_factory=dict)
    no_feasible_lambda: bool = False


def _rank_of_block(x, a0_hat):
    if a0_hat.size == 0:
        return 0
    return qr_pivoted(x.values[:, a0_hat]).rank


def screen_cv_lasso(x, y, family="linear", k=10, seed=None, lambdas=None,
                    fit_intercept=True):
    """Support of the full-data fit at the CV-selected penalty."""
    if not isinstance(x, DesignMatrix):
        x = DesignMatrix(np.asarray(x), None)
    cv = cv_select_lambda(x, y, family, k=k, seed=seed, lambdas=lambdas,
                          fit_intercept=fit_intercept)
    a0_hat = np.sort(cv.path.active_sets[cv.lambda_index])
    return ScreenResult(
        method="cv_lasso",
        a0_hat=a0_hat,
        r0_hat=_rank_of_block(x, a0_hat),
        diagnostics={"lambda": cv.lam, "lambda_index": cv.lambda_index},
    )


def screen_pseudo(x, y, family="linear", alpha_n=0.2, b=20, lambdas=None,
                  seed=None, fit_intercept=True):
    """Permuted-copy screening.

    Each replicate stacks the design beside a whole-row-permuted copy of
    itself, fits the path, and scores each penalty by

        #(selected clones) / max(#(selected originals), 1).

    Ratios are averaged over ``b`` replicates; the selected penalty is the
    smallest grid value whose average is at most ``alpha_n``.  The retained
    set is then the original-column active set of a final fit, at that
    penalty, on the design augmented with one further permuted copy drawn
    from a dedicated seed (the same copy fixes the shared penalty grid).
    """
    if not (0.0 < alpha_n < 1.0):
        raise DimensionError(f"alpha_n must lie in (0, 1), got {alpha_n}")
    if b < 1:
        raise DimensionError("need at least one replicate")
    if not isinstance(x, DesignMatrix):
        x = DesignMatrix(np.asarray(x), None)
    resp = _coerce_response(y, family)
    n, p = x.n, x.p
    master = np.random.SeedSequence(seed) if not isinstance(
        seed, np.random.SeedSequence) else seed
    final_seed, *rep_seeds = master.spawn(b + 1)

    def augmented(perm_seed):
        clone = permuted_copy(x, np.arange(p), perm_seed)
        names = list(x.column_names) + [f"{c}__perm" for c in x.column_names]
        return DesignMatrix(np.hstack([x.values, clone]), names)

    x_final = augmented(final_seed)
    if lambdas is None:
        lambdas = lambda_grid(x_final, resp, family, fit_intercept=fit_intercept)
    m = len(lambdas)

    ratios = np.zeros((b, m))
    for bi, child in enumerate(rep_seeds):
        path = fit_path(augmented(child), resp, lambdas, family,
                        fit_intercept=fit_intercept)
        for i in range(len(path)):
            act = path.active_sets[i]
            n_real = int(np.sum(act < p))
            n_clone = act.size - n_real
            ratios[bi, i] = n_clone / max(n_real, 1)
        for i in range(len(path), m):
            ratios[bi, i] = ratios[bi, len(path) - 1]
    mean_ratio = ratios.sum(axis=0) / b

    feasible = np.flatnonzero(mean_ratio <= alpha_n)
    diagnostics = {"mean_ratio": mean_ratio, "lambdas": np.asarray(lambdas)}
    if feasible.size == 0:
        return ScreenResult(
            method="pseudo_screen",
            a0_hat=np.empty(0, dtype=np.intp),
            r0_hat=0,
            diagnostics=diagnostics,
            no_feasible_lambda=True,
        )
    pick = int(feasible.max())  # decreasing grid: last feasible = smallest penalty
    final_path = fit_path(x_final, resp, lambdas[: pick + 1], family,
                          fit_intercept=fit_intercept)
    pick_eff = min(pick, len(final_path) - 1)
    act = final_path.active_sets[pick_eff]
    a0_hat = np.sort(act[act < p])
    diagnostics["lambda"] = float(lambdas[pick])
    diagnostics["lambda_index"] = pick
    return ScreenResult(
        method="pseudo_screen",
        a0_hat=a0_hat,
        r0_hat=_rank_of_block(x, a0_hat),
        diagnostics=diagnostics,
    )


def run_screening(method, x, y, family, seed=None, lambdas=None,
                  fit_intercept=True, **kwargs):
    """Dispatch by method name: 'cv' or 'pseudo'."""
    if method in ("cv", "cv_lasso", "pseudo2"):
        return screen_cv_lasso(x, y, family, seed=seed, lambdas=lambdas,
                               fit_intercept=fit_intercept, **kwargs)
    if method in ("pseudo", "pseudo_screen", "pseudo1"):
        return screen_pseudo(x, y, family, seed=seed, lambdas=lambdas,
                             fit_intercept=fit_intercept, **kwargs)
    raise DimensionError(f"unknown screening method {method!r}")
