import inspect

import numpy as np

from fsrpath.screening import screen_cv_lasso, screen_pseudo
from fsrpath.simgen import draw_beta, draw_design, draw_response


def make_data(seed, n=500, p=10, s=2, amplitude=1.0, rho=0.0):
    root = np.random.SeedSequence(seed)
    bs, ds, rs = root.spawn(3)
    beta, a0 = draw_beta(p, s, amplitude, bs)
    x = draw_design(n, p, rho, ds)
    y = draw_response(x, beta, "linear", seed=rs)
    return x, y, a0


class TestCvScreening:
    def test_strong_signal_rarely_missed(self):
        hits = 0
        seeds = 100
        for s in range(seeds):
            x, y, a0 = make_data(s)
            res = screen_cv_lasso(x, y, "linear", seed=s)
            hits += set(a0) <= set(res.a0_hat)
        assert hits >= 0.95 * seeds

    def test_noise_keeps_models_small(self):
        ok = 0
        seeds = 60
        for s in range(seeds):
            r = np.random.default_rng(5000 + s)
            x = r.standard_normal((100, 10))
            y = r.standard_normal(100)
            res = screen_cv_lasso(x, y, "linear", seed=s)
            ok += res.a0_hat.size <= 5
        assert ok >= 0.9 * seeds

    def test_deterministic(self, rng):
        x = rng.standard_normal((80, 6))
        y = x[:, 2] + rng.standard_normal(80)
        a = screen_cv_lasso(x, y, "linear", seed=123)
        b = screen_cv_lasso(x, y, "linear", seed=123)
        assert np.array_equal(a.a0_hat, b.a0_hat)
        assert a.r0_hat == b.r0_hat

    def test_rank_matches_block(self):
        x, y, _ = make_data(3, n=100)
        res = screen_cv_lasso(x, y, "linear", seed=3)
        assert res.r0_hat <= res.a0_hat.size


class TestPseudoScreening:
    def test_defaults_match_reference_settings(self):
        sig = inspect.signature(screen_pseudo)
        assert sig.parameters["alpha_n"].default == 0.2
        assert sig.parameters["b"].default == 20

    def test_noise_selects_nothing_much(self):
        ok = 0
        seeds = 30
        for s in range(seeds):
            r = np.random.default_rng(900 + s)
            x = r.standard_normal((80, 8))
            y = r.standard_normal(80)
            res = screen_pseudo(x, y, "linear", b=10, seed=s)
            ok += res.a0_hat.size <= 2
        assert ok >= 0.9 * seeds

    def test_degenerate_single_lambda_grid(self, rng):
        x = rng.standard_normal((60, 5))
        y = x[:, 0] + rng.standard_normal(60)
        from fsrpath.solvers import lambda_grid
        lam_max = lambda_grid(x, y, "linear", m=2, ratio=0.5)[0]
        res = screen_pseudo(x, y, "linear", lambdas=np.array([10.0 * lam_max]),
                            b=5, seed=0)
        assert np.all(res.diagnostics["mean_ratio"] == 0.0)
        assert res.diagnostics["lambda"] == 10.0 * lam_max
        assert res.a0_hat.size == 0
        assert not res.no_feasible_lambda

    def test_threshold_satisfied_at_selection(self):
        x, y, _ = make_data(11, n=200, p=12, s=3)
        res = screen_pseudo(x, y, "linear", alpha_n=0.2, b=10, seed=11)
        assert not res.no_feasible_lambda
        i = res.diagnostics["lambda_index"]
        assert res.diagnostics["mean_ratio"][i] <= 0.2

    def test_strong_signal_recovered(self):
        hits = 0
        seeds = 20
        for s in range(seeds):
            x, y, a0 = make_data(s, n=300, p=10, s=2)
            res = screen_pseudo(x, y, "linear", b=10, seed=s)
            hits += set(a0) <= set(res.a0_hat)
        assert hits >= 0.9 * seeds

    def test_deterministic(self, rng):
        x = rng.standard_normal((70, 6))
        y = x[:, 1] - x[:, 4] + rng.standard_normal(70)
        a = screen_pseudo(x, y, "linear", b=5, seed=7)
        b = screen_pseudo(x, y, "linear", b=5, seed=7)
        assert np.array_equal(a.a0_hat, b.a0_hat)
        assert np.array_equal(a.diagnostics["mean_ratio"],
                              b.diagnostics["mean_ratio"])
