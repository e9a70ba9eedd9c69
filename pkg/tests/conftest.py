import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def standardized_gaussian(rng, n, p):
    """Random design with exactly centered, unit-1/n-variance columns."""
    x = rng.standard_normal((n, p))
    x -= x.mean(axis=0)
    x /= np.sqrt(np.mean(x**2, axis=0))
    return x


def orthonormal_design(rng, n, p):
    """Columns with (1/n) X'X = I exactly and zero means.

    QR of a centered Gaussian matrix: the Q columns live in the span of
    centered vectors, hence are centered themselves.
    """
    g = rng.standard_normal((n, p))
    g -= g.mean(axis=0)
    q, _ = np.linalg.qr(g)
    return np.sqrt(n) * q
