"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError, NonFiniteInput


def as_float_matrix(values, name="matrix"):
    """Coerce to a 2-d float64 Fortran-ordered array, rejecting non-finite entries.

    Column-major layout keeps per-coordinate access contiguous inside the
    descent kernels.
    """
    m = np.asfortranarray(values, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteInput(f"{name} contains NaN or infinite entries")
    return m


def as_float_vector(values, name="vector"):
    v = np.ascontiguousarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionError(f"{name} must be 1-dimensional, got ndim={v.ndim}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteInput(f"{name} contains NaN or infinite entries")
    return v


def as_index_set(indices, p, name="index set"):
    """Normalize an index collection to a sorted, unique int array in [0, p)."""
    idx = np.unique(np.asarray(list(indices), dtype=np.intp))
    if idx.size and (idx[0] < 0 or idx[-1] >= p):
        raise DimensionError(f"{name} contains indices outside [0, {p})")
    return idx


def check_rng(seed):
    """Return a numpy Generator for ``seed``.

    Accepts None, an int, a SeedSequence, or an existing Generator.  Fresh
    generators are backed by SeedSequence so that spawned child streams are
    independent of execution order.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(seed))
