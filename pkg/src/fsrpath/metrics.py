"""False/true selection rate accounting against a known truth set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SelectionOutcome:
    """A selected index set paired with the true support."""

    selected: np.ndarray
    truth: np.ndarray

    def __post_init__(self):
        self.selected = np.unique(np.asarray(self.selected, dtype=np.intp))
        self.truth = np.unique(np.asarray(self.truth, dtype=np.intp))


def fsr_of(outcome):
    """Fraction of selections outside the truth set: |sel \\ truth| / max(|sel|, 1)."""
    n_sel = outcome.selected.size
    if n_sel == 0:
        return 0.0
    false = np.setdiff1d(outcome.selected, outcome.truth, assume_unique=True).size
    return false / n_sel


def tsr_of(outcome):
    """Recall of the truth set: |sel & truth| / max(|truth|, 1).

    When the truth set is empty the rate is 1.0 if nothing was selected and
    0.0 otherwise, so a correct null selection scores perfectly.
    """
    if outcome.truth.size == 0:
        return 1.0 if outcome.selected.size == 0 else 0.0
    hits = np.intersect1d(outcome.selected, outcome.truth, assume_unique=True).size
    return hits / outcome.truth.size
