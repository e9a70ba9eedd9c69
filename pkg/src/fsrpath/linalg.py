"""Dense linear algebra for pseudo-variable generation.

Provides rank-revealing QR, Haar-distributed orthonormal matrices, null-space
bases, and the Gram-preserving pseudo-variable constructor.  Everything here
is a pure function of its inputs plus an explicit seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .exceptions import DimensionError, EmptyComplement
from .validation import as_float_matrix, as_index_set, check_rng

DEFAULT_RANK_TOL = 1e-8


@dataclass
class DesignMatrix:
    """An n x p design with column metadata.

    Parameters
    ----------
    values : ndarray of shape (n, p)
        Column-major float matrix.
    column_names : list of str
        One label per column.
    standardized : bool
        True once columns have been centered to mean 0 and scaled so that
        (1/n) * sum(x_ij^2) = 1.  Constant columns cannot be scaled; they are
        recorded in ``constant_columns`` and excluded from penalization.
    constant_columns : ndarray of bool, shape (p,)
        Mask of columns with zero variance (only meaningful when standardized).
    """

    values: np.ndarray
    column_names: list[str]
    standardized: bool = False
    constant_columns: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.values = as_float_matrix(self.values, "design matrix")
        n, p = self.values.shape
        if n < 2:
            raise DimensionError(f"design matrix needs n >= 2 rows, got {n}")
        if p < 1:
            raise DimensionError("design matrix needs at least one column")
        if self.column_names is None:
            self.column_names = [f"x{j + 1}" for j in range(p)]
        self.column_names = [str(c) for c in self.column_names]
        if len(self.column_names) != p:
            raise DimensionError(
                f"got {len(self.column_names)} column names for {p} columns"
            )
        if self.constant_columns is None:
            self.constant_columns = np.zeros(p, dtype=bool)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def p(self):
        return self.values.shape[1]

    def standardize(self):
        """Return a standardized copy along with the centering/scaling used.

        Returns
        -------
        design : DesignMatrix
            Columns centered and scaled to unit 1/n variance.
        center : ndarray of shape (p,)
        scale : ndarray of shape (p,)
            Original-scale coefficients are ``beta_std / scale``; constant
            columns keep scale 1 and are flagged.
        """
        x = self.values
        center = x.mean(axis=0)
        xc = x - center
        scale = np.sqrt(np.mean(xc**2, axis=0))
        constant = scale <= 1e-12 * np.maximum(1.0, np.abs(center))
        safe = np.where(constant, 1.0, scale)
        out = DesignMatrix(
            np.asfortranarray(xc / safe),
            list(self.column_names),
            standardized=True,
            constant_columns=constant,
        )
        return out, center, np.where(constant, 1.0, scale)


@dataclass
class QrFactors:
    """Rank-revealing column-pivoted QR.

    ``m[:, pivot] == q @ r_mat`` up to the truncation implied by ``rank``.
    ``q_full`` holds the complete n x n orthogonal factor so null-space bases
    can be read off its trailing columns.
    """

    q: np.ndarray
    r_mat: np.ndarray
    rank: int
    pivot: np.ndarray
    q_full: np.ndarray = field(repr=False, default=None)


def qr_pivoted(m, rank_tol=DEFAULT_RANK_TOL):
    """Column-pivoted QR with numerical rank detection.

    Rank is the number of diagonal entries of R exceeding
    ``rank_tol * |R[0, 0]|`` in magnitude.

    Parameters
    ----------
    m : array-like of shape (n, p)
    rank_tol : float
        Relative tolerance in (0, 1).

    Returns
    -------
    QrFactors
    """
    m = as_float_matrix(m, "matrix")
    if not (0.0 < rank_tol < 1.0):
        raise ValueError(f"rank_tol must lie in (0, 1), got {rank_tol}")
    q_full, r_full, pivot = scipy.linalg.qr(m, mode="full", pivoting=True)
    diag = np.abs(np.diag(r_full))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.sum(diag > rank_tol * diag[0]))
    return QrFactors(
        q=q_full[:, :rank],
        r_mat=r_full[:rank, :],
        rank=rank,
        pivot=pivot,
        q_full=q_full,
    )


def haar_orthonormal(dim, cols, seed=None):
    """Draw a dim x cols matrix with orthonormal columns, Haar-distributed.

    QR of a standard Gaussian matrix, with the R-diagonal sign correction
    that makes the factorization unique and the law exactly Haar.
    """
    if cols > dim:
        raise DimensionError(f"cols={cols} exceeds dim={dim}")
    if cols < 1 or dim < 1:
        raise DimensionError("dim and cols must be positive")
    rng = check_rng(seed)
    g = rng.standard_normal((dim, cols))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0.0] = 1.0
    return q * signs


def null_space_basis(qr, n):
    """Orthonormal basis for the orthogonal complement of the factored matrix.

    Returns the trailing ``n - rank`` columns of the full Q factor, which
    annihilate the original columns: ``basis.T @ m == 0``.
    """
    if qr.q_full is None or qr.q_full.shape[0] != n:
        raise DimensionError("QrFactors does not carry a full n x n Q factor")
    return qr.q_full[:, qr.rank :]


@dataclass
class PseudoMatrix:
    """Generated pseudo-variables with their provenance.

    With X_new = (X_S, values), the blockwise (1/n) Gram of X_new matches the
    (1/n) Gram of (X_S, X_Sc) entrywise; this is the defining property.
    """

    values: np.ndarray
    source_set: np.ndarray
    seed: object


class PseudoFactory:
    """Replicate generator of pseudo-variables for one fixed kept set.

    The construction projects the complement columns onto the span of the
    kept block and re-injects the discarded cross-sectional structure through
    a Haar-random rotation of the null space:

        pseudo = P_S @ X_c + V1 @ V2 @ omega

    where omega is the leading block of the column-pivoted R factor of the
    residual (I - P_S) X_c, restored to unpivoted column order, V1 is a
    null-space basis of X_S, and V2 is Haar-random.  The sqrt(n) scale in the
    usual statement is already absorbed: omega factorizes the raw residual
    cross-product rather than its 1/n version.

    Everything except V2 is deterministic given (x, s_set), so it is
    factored once here and each ``draw`` costs one Haar QR plus two matrix
    products.
    """

    def __init__(self, x, s_set, rank=None, rank_tol=DEFAULT_RANK_TOL):
        if isinstance(x, DesignMatrix):
            values = x.values
        else:
            values = as_float_matrix(x, "design matrix")
        n, p = values.shape
        s_idx = as_index_set(s_set, p, "s_set")
        if s_idx.size == 0:
            raise DimensionError("s_set must be nonempty")
        if s_idx.size >= p:
            raise EmptyComplement("s_set covers every column; nothing to mimic")
        comp = np.setdiff1d(np.arange(p), s_idx, assume_unique=True)

        if rank is None:
            rank = qr_pivoted(values, rank_tol).rank

        xs = values[:, s_idx]
        xc = values[:, comp]
        qr_s = qr_pivoted(xs, rank_tol)
        self.rank_kept = qr_s.rank
        self.n = n
        self.source_set = s_idx
        self.proj = qr_s.q @ (qr_s.q.T @ xc)
        self.extra_dims = max(rank - self.rank_kept, 0)

        if self.extra_dims > 0:
            resid = xc - self.proj
            _, r_e, piv_e = scipy.linalg.qr(resid, mode="economic", pivoting=True)
            omega = np.zeros((self.extra_dims, comp.size))
            omega[:, piv_e] = r_e[: self.extra_dims, :]
            self.omega = omega
            self.v1 = null_space_basis(qr_s, n)
        else:
            # Complement lies in span(X_S); the projection alone is exact.
            self.omega = None
            self.v1 = None

    def draw(self, seed=None):
        if self.extra_dims == 0:
            return PseudoMatrix(values=self.proj.copy(),
                                source_set=self.source_set, seed=seed)
        v2 = haar_orthonormal(self.n - self.rank_kept, self.extra_dims, seed)
        values = self.proj + self.v1 @ (v2 @ self.omega)
        return PseudoMatrix(values=values, source_set=self.source_set, seed=seed)


def generate_pseudo(x, s_set, seed=None, rank=None, rank_tol=DEFAULT_RANK_TOL):
    """Construct pseudo-variables mimicking the columns outside ``s_set``.

    One-shot wrapper around PseudoFactory; see that class for the
    construction.

    Parameters
    ----------
    x : DesignMatrix or array-like of shape (n, p)
    s_set : collection of int
        Nonempty proper subset of column indices to keep.
    seed : int, SeedSequence, or Generator
        Drives the Haar draw only.
    rank : int, optional
        Rank of the full design; computed here when omitted.  Callers that
        generate many replicates from one design should use PseudoFactory.
    rank_tol : float

    Returns
    -------
    PseudoMatrix
    """
    return PseudoFactory(x, s_set, rank=rank, rank_tol=rank_tol).draw(seed)


def permuted_copy(x, cols, seed=None):
    """Row-permuted copy of the selected columns.

    One uniformly random permutation is applied to whole rows, so the
    multiset of rows (and every column moment) is preserved exactly.
    """
    if isinstance(x, DesignMatrix):
        values = x.values
    else:
        values = as_float_matrix(x, "design matrix")
    n, p = values.shape
    idx = as_index_set(cols, p, "cols")
    if idx.size == 0:
        raise DimensionError("cols must be nonempty")
    rng = check_rng(seed)
    perm = rng.permutation(n)
    return values[perm][:, idx]


def block_gram_gap(x, s_set, pseudo_values):
    """Max-abs deviation of the pseudo-variable Gram identity.

    Compares (1/n) * (X_S, pseudo)' (X_S, pseudo) against the same Gram with
    the true complement block in place of the pseudo block.
    """
    if isinstance(x, DesignMatrix):
        values = x.values
    else:
        values = as_float_matrix(x, "design matrix")
    n, p = values.shape
    s_idx = as_index_set(s_set, p, "s_set")
    comp = np.setdiff1d(np.arange(p), s_idx, assume_unique=True)
    new = np.hstack([values[:, s_idx], pseudo_values])
    ref = np.hstack([values[:, s_idx], values[:, comp]])
    gap = new.T @ new / n - ref.T @ ref / n
    return float(np.max(np.abs(gap)))
