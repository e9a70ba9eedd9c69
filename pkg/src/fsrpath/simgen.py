"""Simulation data generation and the scenario harness.

Designs are rows drawn from N(0, C) with the AR(1) covariance
C_ij = rho^|i-j|, built by the order-1 recursion (exact for this C, O(np)).
Coefficient vectors place ``sparsity`` entries of size ``amplitude`` at
positions sampled without replacement.  Responses follow the family model:
Gaussian noise, Bernoulli through the logit (with optional offset), or
exponential survival times with rate 0.01 * exp(x'b) under exponential
censoring with mean 1000.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from joblib import Parallel, delayed

from .exceptions import DimensionError, FsrPathError
from .fsr import FsrConfig, estimate_fsr
from .linalg import DesignMatrix
from .metrics import SelectionOutcome, fsr_of, tsr_of
from .solvers import FAMILIES, Response
from .validation import check_rng

COX_BASELINE_RATE = 0.01
CENSOR_MEAN = 1000.0


@dataclass
class Scenario:
    """One simulation configuration."""

    family: str = "linear"
    n: int = 200
    p: int = 50
    rho: float = 0.5
    amplitude: float = 1.0
    sparsity: int = 5
    alpha: float = 0.2
    intercept_c: float = 0.0
    n_beta_draws: int = 5
    n_datasets_per_beta: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DimensionError(f"unknown family {self.family!r}")
        if not (0.0 <= self.rho < 1.0):
            raise DimensionError("rho must lie in [0, 1)")
        if not (0 <= self.sparsity <= self.p):
            raise DimensionError("sparsity must lie in [0, p]")
        if self.n < 10:
            raise DimensionError("scenario needs n >= 10")

    @property
    def n_replicates(self):
        return self.n_beta_draws * self.n_datasets_per_beta


@dataclass
class SimResult:
    """Aggregated outcomes of one scenario run."""

    scenario: Scenario
    method: str
    per_replicate: list
    mean_fsr: float
    mean_tsr: float
    se_fsr: float
    se_tsr: float
    n_failed: int = 0
    failures: list = field(default_factory=list)


def draw_beta(p, s, amplitude, seed=None):
    """Coefficient vector with s entries of the given amplitude.

    Positions are sampled uniformly without replacement; s = 0 gives the
    null vector (supported for calibration runs).
    """
    if s > p:
        raise DimensionError(f"sparsity {s} exceeds dimension {p}")
    rng = check_rng(seed)
    beta = np.zeros(p)
    if s == 0:
        return beta, np.empty(0, dtype=np.intp)
    a0 = np.sort(rng.choice(p, size=s, replace=False))
    beta[a0] = amplitude
    return beta, a0


def draw_design(n, p, rho, seed=None):
    """Rows iid N(0, C) with C_ij = rho^|i-j|, via the AR(1) recursion."""
    if not (abs(rho) < 1.0):
        raise DimensionError("|rho| must be below 1")
    rng = check_rng(seed)
    z = rng.standard_normal((n, p))
    x = np.empty((n, p), order="F")
    x[:, 0] = z[:, 0]
    innov = np.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        x[:, j] = rho * x[:, j - 1] + innov * z[:, j]
    return DesignMatrix(x, None)


def draw_response(x, beta0, family, intercept_c=0.0, seed=None):
    """Response draw for the given family; see the module docstring."""
    if isinstance(x, DesignMatrix):
        xv = x.values
    else:
        xv = np.asarray(x, dtype=float)
    rng = check_rng(seed)
    eta = xv @ beta0
    n = eta.shape[0]
    if family == "linear":
        return Response.continuous(eta + rng.standard_normal(n))
    if family == "logistic":
        prob = 1.0 / (1.0 + np.exp(intercept_c - eta))
        return Response.binary((rng.random(n) < prob).astype(float))
    if family == "cox":
        rate = COX_BASELINE_RATE * np.exp(eta)
        t_fail = rng.exponential(1.0 / rate)
        t_cens = rng.exponential(CENSOR_MEAN, size=n)
        time = np.minimum(t_fail, t_cens)
        event = (t_fail <= t_cens).astype(float)
        return Response.survival(time, event)
    raise DimensionError(f"unknown family {family!r}")


def _one_replicate(sc, method, fsr_cfg, beta_seed, data_seed, rep_seed):
    beta0, a0 = draw_beta(sc.p, sc.sparsity, sc.amplitude, beta_seed)
    x = draw_design(sc.n, sc.p, sc.rho, data_seed)
    y = draw_response(x, beta0, sc.family, sc.intercept_c, data_seed.spawn(1)[0])
    cfg = replace(fsr_cfg, alpha_targets=(sc.alpha,), seed=rep_seed,
                  screening="pseudo" if method == "pseudo1" else "cv")
    curve = estimate_fsr(x, y, sc.family, cfg)
    sel = curve.selected[sc.alpha]
    active = sel.active if sel.feasible else np.empty(0, dtype=np.intp)
    outcome = SelectionOutcome(active, a0)
    censored = (float(np.mean(y.delta == 0.0)) if sc.family == "cox" else None)
    return fsr_of(outcome), tsr_of(outcome), active.size, censored


def run_scenario(sc, method="pseudo2", fsr_cfg=None, n_jobs=1):
    """Run the nested (beta draw x dataset) loop and aggregate FSR/TSR.

    Per-replicate seeds are spawned from the scenario seed by (beta index,
    dataset index), so results are identical under any execution order or
    degree of parallelism.  Replicate failures are recorded, not fatal.
    """
    if method not in ("pseudo1", "pseudo2"):
        raise DimensionError(f"unknown method {method!r}")
    fsr_cfg = fsr_cfg or FsrConfig()
    master = np.random.SeedSequence(sc.seed)
    beta_seeds = master.spawn(sc.n_beta_draws)

    jobs = []
    for bi, beta_seed_root in enumerate(beta_seeds):
        children = beta_seed_root.spawn(2 * sc.n_datasets_per_beta + 1)
        beta_seed = children[0]
        for di in range(sc.n_datasets_per_beta):
            data_seed = children[1 + 2 * di]
            rep_seed = children[2 + 2 * di]
            jobs.append((beta_seed, data_seed, rep_seed))

    def safe(args):
        try:
            return _one_replicate(sc, method, fsr_cfg, *args)
        except FsrPathError as exc:
            return ("failed", repr(exc))

    if n_jobs == 1:
        raw = [safe(a) for a in jobs]
    else:
        raw = Parallel(n_jobs=n_jobs)(delayed(safe)(a) for a in jobs)

    per_replicate = [r for r in raw if r[0] != "failed"]
    failures = [r[1] for r in raw if r[0] == "failed"]
    if not per_replicate:
        raise FsrPathError("every replicate failed; first error: "
                           + failures[0])
    fsrs = np.array([r[0] for r in per_replicate])
    tsrs = np.array([r[1] for r in per_replicate])
    nrep = len(per_replicate)
    return SimResult(
        scenario=sc,
        method=method,
        per_replicate=per_replicate,
        mean_fsr=float(fsrs.mean()),
        mean_tsr=float(tsrs.mean()),
        se_fsr=float(fsrs.std(ddof=1) / np.sqrt(nrep)) if nrep > 1 else 0.0,
        se_tsr=float(tsrs.std(ddof=1) / np.sqrt(nrep)) if nrep > 1 else 0.0,
        n_failed=len(failures),
        failures=failures,
    )
