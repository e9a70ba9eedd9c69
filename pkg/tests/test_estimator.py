import numpy as np
import pytest
from sklearn.base import clone

from fsrpath.estimator import FsrLasso
from fsrpath.exceptions import DimensionError


def make_data(seed=0, n=100, p=8):
    r = np.random.default_rng(seed)
    x = r.standard_normal((n, p))
    beta = np.zeros(p)
    beta[:2] = 1.5
    y = x @ beta + r.standard_normal(n)
    return x, y


class TestSklearnProtocol:
    def test_get_set_params_round_trip(self):
        est = FsrLasso(b_replicates=7, alphas=(0.2,), random_state=3)
        params = est.get_params()
        assert params["b_replicates"] == 7
        est2 = FsrLasso().set_params(**params)
        assert est2.get_params() == params

    def test_clone(self):
        est = FsrLasso(family="logistic", screen="pseudo", random_state=1)
        c = clone(est)
        assert c.get_params() == est.get_params()

    def test_fit_sets_attributes(self):
        x, y = make_data()
        est = FsrLasso(b_replicates=5, lambda_count=30, random_state=0,
                       alphas=(0.1, 0.2))
        est.fit(x, y)
        assert est.n_features_in_ == 8
        assert est.lambdas_.shape == (30,)
        assert est.coef_path_.shape == (30, 8)
        assert est.fsr_replicates_.shape == (5, 30)
        assert set(est.selected_) == {0.1, 0.2}

    def test_transform_selects_columns(self):
        x, y = make_data(seed=5)
        est = FsrLasso(b_replicates=5, lambda_count=30, random_state=2,
                       alphas=(0.2,))
        out = est.fit(x, y).transform(x)
        support = est.get_support(0.2)
        assert out.shape == (x.shape[0], support.size)
        assert np.array_equal(out, x[:, support])
        mask = est.get_support(0.2, indices=False)
        assert mask.sum() == support.size

    def test_unknown_alpha_rejected(self):
        x, y = make_data()
        est = FsrLasso(b_replicates=3, lambda_count=20, alphas=(0.2,),
                       random_state=0).fit(x, y)
        with pytest.raises(KeyError):
            est.get_support(0.5)

    def test_unfitted_raises(self):
        from sklearn.exceptions import NotFittedError
        with pytest.raises(NotFittedError):
            FsrLasso().transform(np.ones((3, 2)))


class TestFamilies:
    def test_cox_two_column_y(self):
        r = np.random.default_rng(4)
        n = 90
        x = r.standard_normal((n, 5))
        t = r.exponential(1 / (0.01 * np.exp(1.2 * x[:, 0])))
        d = (r.random(n) < 0.9).astype(float)
        est = FsrLasso(family="cox", b_replicates=4, lambda_count=25,
                       alphas=(0.2,), random_state=0)
        est.fit(x, np.column_stack([t, d]))
        assert est.intercept_path_ is None
        est2 = FsrLasso(family="cox", b_replicates=4, lambda_count=25,
                        alphas=(0.2,), random_state=0)
        est2.fit(x, t, status=d)
        assert np.array_equal(est.fsr_mean_, est2.fsr_mean_)

    def test_cox_missing_status_rejected(self):
        x, y = make_data()
        with pytest.raises(DimensionError):
            FsrLasso(family="cox").fit(x, np.abs(y) + 0.1)

    def test_bad_family_rejected(self):
        x, y = make_data()
        with pytest.raises(DimensionError):
            FsrLasso(family="poisson").fit(x, y)


class TestDocumentExport:
    def test_document_consistency(self):
        x, y = make_data(seed=9)
        names = [f"v{j}" for j in range(x.shape[1])]
        est = FsrLasso(b_replicates=4, lambda_count=25, alphas=(0.2,),
                       random_state=7)
        est.fit(x, y, feature_names=names)
        doc = est.to_document(response_name="resp")
        assert doc.m == 25
        assert doc.column_names == names
        assert doc.data["metadata"]["response_name"] == "resp"
        top = doc.slice_at(0)
        assert top["active_size"] == 0
        sel = doc.data["selected"]["0.2"]
        if sel["feasible"]:
            assert set(sel["coefficients"]) == set(sel["active"])
