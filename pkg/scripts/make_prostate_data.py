"""Generate the bundled prostate-style sample dataset.

Synthesizes n=97 records with the familiar eight-biomarker schema
(lcavol, lweight, age, lbph, svi, lcp, gleason, pgg45) and a log-PSA
response driven mainly by lcavol, lweight, and svi, with weaker pgg45 and
lbph effects.  Marginals and the correlation structure are modeled on the
published summaries of the classic study data.

Run from the repo root:  python scripts/make_prostate_data.py [gen_seed]
"""

import sys
from pathlib import Path

import numpy as np

NAMES = ["lcavol", "lweight", "age", "lbph", "svi", "lcp", "gleason", "pgg45"]

# latent Gaussian correlations (order as NAMES)
CORR = np.array([
    [1.00, 0.28, 0.22, 0.03, 0.54, 0.68, 0.43, 0.43],
    [0.28, 1.00, 0.35, 0.44, 0.16, 0.16, 0.06, 0.11],
    [0.22, 0.35, 1.00, 0.35, 0.12, 0.13, 0.27, 0.15],
    [0.03, 0.44, 0.35, 1.00, -0.09, -0.01, 0.08, 0.08],
    [0.54, 0.16, 0.12, -0.09, 1.00, 0.67, 0.32, 0.46],
    [0.68, 0.16, 0.13, -0.01, 0.67, 1.00, 0.51, 0.63],
    [0.43, 0.06, 0.27, 0.08, 0.32, 0.51, 1.00, 0.75],
    [0.43, 0.11, 0.15, 0.08, 0.46, 0.63, 0.75, 1.00],
])

# standardized-scale response coefficients and noise level
STD_BETA = {"lcavol": 0.64, "lweight": 0.34, "svi": 0.42,
            "pgg45": 0.19, "lbph": 0.14}
NOISE_SD = 0.62


def generate(gen_seed=11, n=97):
    rng = np.random.default_rng(np.random.SeedSequence(gen_seed))
    chol = np.linalg.cholesky(CORR)
    z = rng.standard_normal((n, len(NAMES))) @ chol.T

    lcavol = 1.35 + 1.18 * z[:, 0]
    lweight = 3.63 + 0.43 * z[:, 1]
    age = np.round(63.9 + 7.4 * z[:, 2])
    lbph = np.maximum(0.10 + 1.45 * z[:, 3], np.log(0.25))
    svi = (z[:, 4] > 0.81).astype(float)
    lcp = np.maximum(-0.18 + 1.40 * z[:, 5], np.log(0.25))
    g = z[:, 6]
    gleason = 6.0 + (g > -0.35) + (g > 1.50) + (g > 2.10)
    pgg45 = np.clip(5.0 * np.round((24.4 + 28.0 * z[:, 7]) / 5.0), 0.0, 100.0)

    x = np.column_stack([lcavol, lweight, age, lbph, svi, lcp, gleason, pgg45])
    sd = x.std(axis=0)
    mean = x.mean(axis=0)
    beta = np.zeros(len(NAMES))
    for name, b in STD_BETA.items():
        j = NAMES.index(name)
        beta[j] = b / sd[j]
    lpsa = 2.48 + (x - mean) @ beta + NOISE_SD * rng.standard_normal(n)
    return x, lpsa


def write_csv(path, x, lpsa):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(NAMES + ["lpsa"]) + "\n")
        for row, y in zip(x, lpsa):
            cells = []
            for name, v in zip(NAMES, row):
                if name in ("age", "svi", "gleason", "pgg45"):
                    cells.append(f"{v:.0f}")
                else:
                    cells.append(f"{v:.5f}")
            cells.append(f"{y:.5f}")
            fh.write(",".join(cells) + "\n")


if __name__ == "__main__":
    gen_seed = int(sys.argv[1]) if len(sys.argv) > 1 else 11
    x, lpsa = generate(gen_seed)
    out = Path(__file__).resolve().parents[1] / "src/fsrpath/data/prostate.csv"
    write_csv(out, x, lpsa)
    print(f"wrote {out} (gen_seed={gen_seed})")
