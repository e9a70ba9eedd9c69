import json
import threading
import time
import urllib.error
import urllib.request
from importlib import resources
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from fsrpath.cli import main, read_numeric_csv, expand_scenarios, CsvError
from fsrpath.document import PathDocument, DocumentError
from fsrpath.server import build_server


def prostate_path():
    return str(resources.files("fsrpath").joinpath("data/prostate.csv"))


@pytest.fixture(scope="module")
def fitted_doc(tmp_path_factory):
    """One small fitted document shared by the CLI/server tests."""
    out = tmp_path_factory.mktemp("doc") / "path.json"
    runner = CliRunner()
    result = runner.invoke(main, [
        "fit", prostate_path(), "--response", "lpsa", "--family", "linear",
        "-B", "10", "--alpha", "0.1", "--alpha", "0.2", "--seed", "0",
        "--lambda-count", "40", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    return out


class TestReadCsv:
    def test_reads_bundled_data(self):
        header, cols = read_numeric_csv(prostate_path())
        assert header[-1] == "lpsa"
        assert len(cols["lpsa"]) == 97
        assert len(header) == 9

    def test_bad_cell_names_row_and_column(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n3,oops\n")
        with pytest.raises(CsvError, match=r"row 3, column 'b'"):
            read_numeric_csv(str(bad))

    def test_ragged_row(self, tmp_path):
        bad = tmp_path / "ragged.csv"
        bad.write_text("a,b\n1,2\n3\n")
        with pytest.raises(CsvError, match="row 3"):
            read_numeric_csv(str(bad))


class TestFitCommand:
    def test_document_round_trips(self, fitted_doc):
        doc = PathDocument.load(fitted_doc)
        assert doc.m == 40
        again = json.loads(doc.to_json())
        assert again == doc.data
        meta = doc.data["metadata"]
        assert meta["family"] == "linear"
        assert meta["n"] == 97
        assert meta["column_names"][0] == "lcavol"
        assert len(doc.data["fsr"]["per_replicate"]) == 10

    def test_malformed_csv_exits_2(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,y\n1,2,3\n4,x,6\n")
        runner = CliRunner()
        result = runner.invoke(main, [
            "fit", str(bad), "--response", "y", "--out",
            str(tmp_path / "o.json"),
        ])
        assert result.exit_code == 2
        assert "column 'b'" in result.output

    def test_missing_response_exits_2(self, tmp_path):
        runner = CliRunner()
        result = runner.invoke(main, [
            "fit", prostate_path(), "--response", "nope",
            "--out", str(tmp_path / "o.json"),
        ])
        assert result.exit_code == 2
        assert "nope" in result.output

    def test_cox_requires_status(self, tmp_path):
        runner = CliRunner()
        result = runner.invoke(main, [
            "fit", prostate_path(), "--response", "lpsa", "--family", "cox",
            "--out", str(tmp_path / "o.json"),
        ])
        assert result.exit_code == 2
        assert "--status" in result.output


class TestSimulateCommand:
    def test_smoke_config(self, tmp_path):
        out = tmp_path / "sim.csv"
        runner = CliRunner()
        t0 = time.time()
        result = runner.invoke(main, [
            "simulate", str(Path("configs/smoke.toml").resolve()),
            "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        assert time.time() - t0 < 60.0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("family,n,p,rho")
        assert len(lines) == 2

    def test_bad_config_exits_2(self, tmp_path):
        cfg = tmp_path / "bad.toml"
        cfg.write_text("family = [unclosed\n")
        runner = CliRunner()
        result = runner.invoke(main, [
            "simulate", str(cfg), "--out", str(tmp_path / "o.csv"),
        ])
        assert result.exit_code == 2

    def test_grid_expansion(self):
        config = {
            "family": "linear", "n": 40, "sparsity": 1, "seed": 0,
            "methods": ["pseudo1", "pseudo2"],
            "scenarios": [{"p": [10, 20], "rho": [0.0, 0.5]}],
        }
        runs = expand_scenarios(config)
        assert len(runs) == 2 * 2 * 2
        combos = {(sc.p, sc.rho, meth) for sc, meth, _, _ in runs}
        assert (10, 0.5, "pseudo1") in combos

    def test_unknown_key_rejected(self):
        with pytest.raises(CsvError, match="unknown scenario keys"):
            expand_scenarios({"scenarios": [{"pp": 3}]})


class TestServer:
    @pytest.fixture()
    def server(self, fitted_doc):
        srv = build_server(fitted_doc, port=0)
        thread = threading.Thread(target=srv.serve_forever, daemon=True)
        thread.start()
        base = f"http://127.0.0.1:{srv.server_address[1]}"
        yield base, fitted_doc
        srv.shutdown()
        srv.server_close()

    def get(self, url):
        with urllib.request.urlopen(url) as resp:
            return resp.status, resp.read()

    def test_api_path_is_byte_identical(self, server):
        base, doc_path = server
        status, body = self.get(f"{base}/api/path")
        assert status == 200
        assert body == Path(doc_path).read_bytes()

    def test_fsr_slice_at_top_is_zero(self, server):
        base, _ = server
        status, body = self.get(f"{base}/api/fsr?lambda_index=0")
        assert status == 200
        payload = json.loads(body)
        assert payload["active_size"] == 0
        assert payload["fsr_mean"] == 0.0
        assert all(v == 0.0 for v in payload["coefficients"].values())

    def test_unknown_index_404(self, server):
        base, doc_path = server
        m = PathDocument.load(doc_path).m
        with pytest.raises(urllib.error.HTTPError) as err:
            self.get(f"{base}/api/fsr?lambda_index={m}")
        assert err.value.code == 404

    def test_malformed_query_400(self, server):
        base, _ = server
        for query in ("lambda_index=abc", ""):
            with pytest.raises(urllib.error.HTTPError) as err:
                self.get(f"{base}/api/fsr?{query}")
            assert err.value.code == 400

    def test_static_index_served(self, server):
        base, _ = server
        status, body = self.get(f"{base}/")
        assert status == 200

    def test_slice_matches_document(self, server):
        base, doc_path = server
        doc = PathDocument.load(doc_path)
        idx = doc.m - 1
        _, body = self.get(f"{base}/api/fsr?lambda_index={idx}")
        assert json.loads(body) == json.loads(json.dumps(doc.slice_at(idx)))


class TestDocumentValidation:
    def test_detects_length_mismatch(self, fitted_doc):
        data = json.loads(Path(fitted_doc).read_text())
        data["active_sizes"] = data["active_sizes"][:-1]
        with pytest.raises(DocumentError, match="active_sizes"):
            PathDocument.validate(data)

    def test_detects_bad_schema_version(self, fitted_doc):
        data = json.loads(Path(fitted_doc).read_text())
        data["schema_version"] = 99
        with pytest.raises(DocumentError, match="schema_version"):
            PathDocument.validate(data)
