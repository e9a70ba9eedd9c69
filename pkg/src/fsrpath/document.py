"""On-disk JSON document describing one labeled solution path.

The document is the contract between the fitting command, the HTTP API, and
the browser explorer: everything the UI displays is read from here, never
recomputed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """The document file is malformed or internally inconsistent."""


@dataclass
class PathDocument:
    """Validated in-memory form of the path document."""

    data: dict

    @property
    def m(self):
        return len(self.data["lambdas"])

    @property
    def column_names(self):
        return self.data["metadata"]["column_names"]

    def slice_at(self, index):
        """Per-penalty view used by the /api/fsr endpoint and the UI readout."""
        if not (0 <= index < self.m):
            raise IndexError(f"lambda_index {index} outside [0, {self.m})")
        coefs = self.data["coefficients"][index]
        names = self.column_names
        active = [n for n, c in zip(names, coefs) if c != 0.0]
        reps = [row[index] for row in self.data["fsr"]["per_replicate"]]
        out = {
            "lambda_index": index,
            "lambda": self.data["lambdas"][index],
            "coefficients": dict(zip(names, coefs)),
            "active": active,
            "active_size": len(active),
            "fsr_mean": self.data["fsr"]["mean"][index],
            "fsr_min": min(reps) if reps else 0.0,
            "fsr_max": max(reps) if reps else 0.0,
            "fsr_replicates": reps,
        }
        if self.data.get("intercepts") is not None:
            out["intercept"] = self.data["intercepts"][index]
        return out

    def to_json(self):
        return json.dumps(self.data, indent=2, sort_keys=False)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DocumentError(f"not valid JSON: {exc}") from exc
        return cls.validate(data)

    @classmethod
    def validate(cls, data):
        """Check structural consistency; raise DocumentError on any mismatch."""
        if not isinstance(data, dict):
            raise DocumentError("document root must be an object")
        if data.get("schema_version") != SCHEMA_VERSION:
            raise DocumentError(
                f"unsupported schema_version {data.get('schema_version')!r}"
            )
        for key in ("metadata", "lambdas", "coefficients", "active_sizes",
                    "fsr", "selected", "screening"):
            if key not in data:
                raise DocumentError(f"missing required field {key!r}")
        m = len(data["lambdas"])
        names = data["metadata"].get("column_names")
        if not isinstance(names, list) or not names:
            raise DocumentError("metadata.column_names must be a nonempty list")
        p = len(names)
        if len(data["coefficients"]) != m:
            raise DocumentError("coefficients row count != number of lambdas")
        for row in data["coefficients"]:
            if len(row) != p:
                raise DocumentError("coefficient row width != column count")
        if len(data["active_sizes"]) != m:
            raise DocumentError("active_sizes length != number of lambdas")
        fsr = data["fsr"]
        if len(fsr.get("mean", [])) != m:
            raise DocumentError("fsr.mean length != number of lambdas")
        for row in fsr.get("per_replicate", []):
            if len(row) != m:
                raise DocumentError("fsr.per_replicate row length != lambdas")
        intercepts = data.get("intercepts")
        if intercepts is not None and len(intercepts) != m:
            raise DocumentError("intercepts length != number of lambdas")
        return cls(data)


def build_document(curve, *, column_names, response_name, family, n, seed,
                   b_replicates, screening_method, use_permutation):
    """Assemble the document dict from a fitted FsrCurve."""
    path = curve.full_path
    m = len(curve.lambdas)
    coefs = path.coefs[:m] if len(path) >= m else path.coefs
    # A truncated path (diverged logistic tail) repeats its last row so the
    # document stays rectangular; the metadata records where real fits end.
    rows = [list(map(float, coefs[min(i, len(path) - 1)])) for i in range(m)]
    active_sizes = [int(np.count_nonzero(coefs[min(i, len(path) - 1)]))
                    for i in range(m)]
    intercepts = None
    if path.intercepts is not None:
        intercepts = [float(path.intercepts[min(i, len(path) - 1)])
                      for i in range(m)]
    selected = {}
    for alpha, model in curve.selected.items():
        if not model.feasible:
            selected[f"{alpha:g}"] = {"alpha": alpha, "feasible": False}
            continue
        names_active = [column_names[j] for j in model.active]
        selected[f"{alpha:g}"] = {
            "alpha": alpha,
            "feasible": True,
            "lambda": model.lam,
            "lambda_index": model.lambda_index,
            "active": names_active,
            "coefficients": {column_names[j]: float(model.coef[j])
                             for j in model.active},
            "intercept": model.intercept,
        }
    data = {
        "schema_version": SCHEMA_VERSION,
        "metadata": {
            "family": family,
            "n": int(n),
            "p": len(column_names),
            "column_names": list(column_names),
            "response_name": response_name,
            "seed": seed,
            "b_replicates": int(b_replicates),
            "screening": screening_method,
            "use_permutation": bool(use_permutation),
            "degraded_screening": bool(curve.degraded),
            "truncated_at": path.truncated_at,
        },
        "lambdas": [float(v) for v in curve.lambdas],
        "coefficients": rows,
        "intercepts": intercepts,
        "active_sizes": active_sizes,
        "fsr": {
            "mean": [float(v) for v in curve.mean],
            "per_replicate": [[float(v) for v in row]
                              for row in curve.per_replicate],
        },
        "selected": selected,
        "screening": {
            "method": curve.screening.method,
            "a0_hat": [column_names[j] for j in curve.screening.a0_hat],
            "r0_hat": int(curve.screening.r0_hat),
            "no_feasible_lambda": bool(curve.screening.no_feasible_lambda),
        },
    }
    return PathDocument.validate(data)
