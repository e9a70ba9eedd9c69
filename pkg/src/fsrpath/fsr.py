"""False-selection-rate estimation along the whole solution path.

For each replicate the design is rebuilt as (screened block, pseudo block,
optional permuted clone of the screened block), the path is refit on the
shared penalty grid, and each grid point is scored by

    p_hat = U / max(I + U, 1)

where I counts selected screened columns and U counts selected pseudo or
cloned columns.  Averaging over replicates labels every point of the
full-data path with an estimated false selection rate; the penalty chosen
for a target alpha is the smallest grid value whose label does not exceed
alpha, and the reported model is the full-data fit at that penalty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError
from .linalg import DesignMatrix, PseudoFactory, permuted_copy, qr_pivoted
from .screening import ScreenResult, run_screening
from .solvers import Response, _coerce_response, fit_path, lambda_grid


@dataclass
class FsrConfig:
    """Settings for one estimation run."""

    b_replicates: int = 20
    use_permutation: bool = True
    alpha_targets: tuple = (0.1, 0.2, 0.3)
    screening: str = "cv"
    lambdas: np.ndarray = None
    lambda_count: int = 100
    lambda_ratio: float = None
    fit_intercept: bool = True
    seed: object = None

    def __post_init__(self):
        if self.b_replicates < 1:
            raise DimensionError("b_replicates must be at least 1")
        for a in self.alpha_targets:
            if not (0.0 < a < 1.0):
                raise DimensionError(f"alpha target {a} outside (0, 1)")


@dataclass
class SelectedModel:
    """Full-data model at the penalty chosen for one alpha target."""

    alpha: float
    feasible: bool
    lambda_index: int = None
    lam: float = None
    active: np.ndarray = None
    coef: np.ndarray = None
    intercept: float = None


@dataclass
class ReplicateCounts:
    """Selected-column tallies for one augmented-design fit."""

    i_counts: np.ndarray
    u_counts: np.ndarray
    n_screened: int
    n_pseudo: int
    n_permuted: int

    def p_hat(self):
        tot = self.i_counts + self.u_counts
        return self.u_counts / np.maximum(tot, 1.0)


@dataclass
class FsrCurve:
    """The labeled path: per-replicate and averaged FSR estimates."""

    family: str
    lambdas: np.ndarray
    per_replicate: np.ndarray
    mean: np.ndarray
    selected: dict
    screening: ScreenResult
    degraded: bool
    full_path: object = field(repr=False, default=None)


def _augmented_design(x_std, a0_hat, design_rank, use_permutation, seed,
                      factory=None):
    """Build (screened | pseudo | clone) on the standardized design.

    Returns the stacked matrix and the block sizes.  With an empty screening
    set the construction degenerates to a whole-design permuted copy, which
    carries no real signal and so estimates every selection as false.
    """
    n, p = x_std.n, x_std.p
    haar_seed, perm_seed = (seed if isinstance(seed, np.random.SeedSequence)
                            else np.random.SeedSequence(seed)).spawn(2)
    if a0_hat.size == 0:
        clone = permuted_copy(x_std, np.arange(p), perm_seed)
        return clone, 0, p, 0
    if a0_hat.size == p:
        # Screening kept everything: no complement to mimic, so the permuted
        # clone is the only source of known-null columns.
        blocks = [x_std.values[:, a0_hat]]
        n_pseudo = 0
    else:
        if factory is None:
            factory = PseudoFactory(x_std, a0_hat, rank=design_rank)
        pseudo = factory.draw(haar_seed)
        blocks = [x_std.values[:, a0_hat], pseudo.values]
        n_pseudo = pseudo.values.shape[1]
    n_perm = 0
    if use_permutation:
        blocks.append(permuted_copy(x_std, a0_hat, perm_seed))
        n_perm = a0_hat.size
    return np.hstack(blocks), a0_hat.size, n_pseudo, n_perm


def replicate_counts(x_std, y_fit, family, a0_hat, lambdas, use_permutation,
                     seed, design_rank, fit_intercept, factory=None):
    """Fit one augmented design and tally screened vs added selections.

    The augmented columns are fit exactly as constructed (no re-centering or
    re-scaling): the pseudo block's raw cross-products are what make its
    selection behavior mimic the discarded columns'.
    """
    aug, n_scr, n_pse, n_prm = _augmented_design(
        x_std, a0_hat, design_rank, use_permutation, seed, factory
    )
    names = [f"c{j}" for j in range(aug.shape[1])]
    aug_design = DesignMatrix(np.asfortranarray(aug), names, standardized=True)
    path = fit_path(aug_design, y_fit, lambdas, family,
                    fit_intercept=fit_intercept, standardize=False)
    m = len(lambdas)
    i_counts = np.empty(m)
    u_counts = np.empty(m)
    m_eff = len(path)
    for i in range(m):
        act = path.active_sets[min(i, m_eff - 1)]  # carry last row if truncated
        n_i = int(np.sum(act < n_scr))
        i_counts[i] = n_i
        u_counts[i] = act.size - n_i
    return ReplicateCounts(i_counts, u_counts, n_scr, n_pse, n_prm)


def fsr_replicate(x_std, y_fit, family, screened, lambdas, use_permutation,
                  seed, design_rank=None, fit_intercept=False, factory=None):
    """Single-replicate estimated false selection rate at every grid point."""
    if design_rank is None:
        design_rank = qr_pivoted(x_std.values).rank
    counts = replicate_counts(
        x_std, y_fit, family, screened.a0_hat, lambdas, use_permutation,
        seed, design_rank, fit_intercept, factory,
    )
    return counts.p_hat()


def select_lambda_indices(lambdas, mean_curve, alpha_targets):
    """Smallest feasible penalty per target: min{lam : mean(lam) <= alpha}.

    The grid is decreasing, so this is the largest feasible grid index.
    Returns a dict alpha -> index or None.
    """
    out = {}
    for alpha in alpha_targets:
        feasible = np.flatnonzero(mean_curve <= alpha)
        out[alpha] = int(feasible.max()) if feasible.size else None
    return out


def estimate_fsr(x, y, family="linear", cfg=None):
    """Label the full solution path with estimated false selection rates.

    Orchestrates screening, B pseudo-variable replicates, averaging, and the
    per-alpha penalty selection.  The full-data path is fit on the same grid
    so labels align with the path the analyst sees, and the model reported
    for each alpha is that path's row at the chosen penalty.
    """
    cfg = cfg or FsrConfig()
    if not isinstance(x, DesignMatrix):
        x = DesignMatrix(np.asarray(x), None)
    resp = _coerce_response(y, family)
    x_std, center, scale = (x, np.zeros(x.p), np.ones(x.p)) if x.standardized \
        else x.standardize()

    # The augmented fits run intercept-free on a centered response for the
    # linear family: with standardized columns this matches the full-data
    # intercept fit while keeping the fit a function of raw cross-products,
    # which is the regime in which the pseudo block is exchangeable with the
    # block it replaces.
    if family == "linear":
        y_fit = Response.continuous(resp.y - resp.y.mean())
        aug_intercept = False
    else:
        y_fit = resp
        aug_intercept = cfg.fit_intercept and family != "cox"

    lambdas = cfg.lambdas
    if lambdas is None:
        lambdas = lambda_grid(x_std, resp, family, m=cfg.lambda_count,
                              ratio=cfg.lambda_ratio,
                              fit_intercept=cfg.fit_intercept)
    lambdas = np.asarray(lambdas, dtype=float)

    master = (cfg.seed if isinstance(cfg.seed, np.random.SeedSequence)
              else np.random.SeedSequence(cfg.seed))
    screen_seed, *rep_seeds = master.spawn(cfg.b_replicates + 1)

    screened = run_screening(cfg.screening, x_std, resp, family,
                             seed=screen_seed, fit_intercept=cfg.fit_intercept)
    degraded = screened.a0_hat.size == 0

    design_rank = qr_pivoted(x_std.values).rank
    factory = (PseudoFactory(x_std, screened.a0_hat, rank=design_rank)
               if 0 < screened.a0_hat.size < x_std.p else None)
    m = lambdas.shape[0]
    per_replicate = np.empty((cfg.b_replicates, m))
    for bi, child in enumerate(rep_seeds):
        per_replicate[bi] = fsr_replicate(
            x_std, y_fit, family, screened, lambdas, cfg.use_permutation,
            child, design_rank, aug_intercept, factory,
        )
    mean_curve = per_replicate.mean(axis=0)

    full_path = fit_path(x, resp, lambdas, family,
                         fit_intercept=cfg.fit_intercept)
    indices = select_lambda_indices(lambdas, mean_curve, cfg.alpha_targets)
    selected = {}
    for alpha, idx in indices.items():
        if idx is None or idx >= len(full_path):
            selected[alpha] = SelectedModel(alpha=alpha, feasible=False)
            continue
        selected[alpha] = SelectedModel(
            alpha=alpha,
            feasible=True,
            lambda_index=idx,
            lam=float(lambdas[idx]),
            active=full_path.active_sets[idx],
            coef=full_path.coefs[idx],
            intercept=(float(full_path.intercepts[idx])
                       if full_path.intercepts is not None else None),
        )
    return FsrCurve(
        family=family,
        lambdas=lambdas,
        per_replicate=per_replicate,
        mean=mean_curve,
        selected=selected,
        screening=screened,
        degraded=degraded,
        full_path=full_path,
    )
