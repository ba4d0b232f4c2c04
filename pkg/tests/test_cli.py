import json

import numpy as np
import pytest

from pthroots.cli import main

from conftest import ROOT26, printed_roots_44

B26_DOC = {"dim": 2, "data": [["1/6", 0], [-1, 0], ["1/6", 0], [1, 0]]}
J46_DOC = {
    "blocks": [
        {"lambda": ["1/2", 0], "sizes": [2]},
        {"lambda": ["1/3", 0], "sizes": [2]},
        {"lambda": ["1/4", 0], "sizes": [1]},
    ]
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def matrix_doc(arr):
    return {
        "dim": arr.shape[0],
        "data": [[float(z.real), float(z.imag)] for z in np.ravel(arr)],
    }


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def entries_from_payload(payload):
    dim = payload["dim"]
    flat = [complex(re, im) for re, im in payload["data"]]
    return np.array(flat).reshape(dim, dim)


class TestParsing:
    def test_fractions_and_decimals(self, tmp_path, capsys):
        doc = {"dim": 1, "data": [["3/4", "-1/2"]]}
        code, out = run(capsys, ["verify", write(tmp_path, "x.json", doc),
                                 write(tmp_path, "b.json", {"dim": 1, "data": [[0.3125, -0.75]]}),
                                 "--p", "2", "--tol", "1e-12"])
        assert code == 0  # (3/4 - i/2)^2 = 5/16 - 3i/4

    def test_missing_field_exit_2(self, tmp_path, capsys):
        code, out = run(capsys, ["compute", write(tmp_path, "m.json", {"dim": 2}), "--p", "2"])
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "parse"

    def test_bad_fraction_exit_2(self, tmp_path, capsys):
        doc = {"dim": 1, "data": [["one/two", 0]]}
        code, out = run(capsys, ["compute", write(tmp_path, "m.json", doc), "--p", "2"])
        assert code == 2

    def test_wrong_entry_count_exit_2(self, tmp_path, capsys):
        doc = {"dim": 2, "data": [[1, 0]]}
        code, _ = run(capsys, ["compute", write(tmp_path, "m.json", doc), "--p", "2"])
        assert code == 2

    def test_invalid_json_exit_2(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text("{not json")
        code, _ = run(capsys, ["compute", str(path), "--p", "2"])
        assert code == 2


class TestCompute:
    def test_golden_2x2(self, tmp_path, capsys):
        code, out = run(capsys, ["compute", write(tmp_path, "b.json", B26_DOC), "--p", "2"])
        assert code == 0
        doc = json.loads(out)
        root = entries_from_payload(doc["root"])
        assert np.max(np.abs(root - ROOT26)) <= 1e-10
        assert doc["residual"] <= 1e-12
        assert doc["sector_ok"] is True
        assert doc["branch"] == "principal"
        assert "spectral" in doc["oracle_deltas"]

    def test_identity_any_p(self, tmp_path, capsys):
        doc = matrix_doc(np.eye(3))
        code, out = run(capsys, ["compute", write(tmp_path, "i.json", doc), "--p", "7"])
        assert code == 0
        report = json.loads(out)
        assert report["residual"] == 0.0
        assert entries_from_payload(report["root"]) == pytest.approx(np.eye(3))

    def test_singular_exit_3(self, tmp_path, capsys):
        doc = matrix_doc(np.ones((2, 2)))
        code, out = run(capsys, ["compute", write(tmp_path, "s.json", doc), "--p", "2"])
        assert code == 3
        assert json.loads(out)["error"]["kind"] == "singular"

    def test_convergence_exit_4_and_scale_rescue(self, tmp_path, capsys):
        doc = matrix_doc(np.diag([1.0, 4.0]))
        path = write(tmp_path, "d.json", doc)
        code, out = run(capsys, ["compute", path, "--p", "2"])
        assert code == 4
        assert json.loads(out)["error"]["kind"] == "convergence"
        code, out = run(capsys, ["compute", path, "--p", "2", "--scale"])
        assert code == 0
        report = json.loads(out)
        assert report["formula_path"].startswith("scaled+")
        root = entries_from_payload(report["root"])
        assert np.allclose(np.diag(root), [1.0, 2.0], atol=1e-10)

    def test_deterministic_output(self, tmp_path, capsys):
        path = write(tmp_path, "b.json", B26_DOC)
        _, out1 = run(capsys, ["compute", path, "--p", "2"])
        _, out2 = run(capsys, ["compute", path, "--p", "2"])
        assert out1 == out2
        out_file = tmp_path / "report.json"
        code, _ = run(capsys, ["compute", path, "--p", "2", "--out", str(out_file)])
        assert code == 0
        assert out_file.read_text() == out1

    def test_digest_ignores_formatting(self, tmp_path, capsys):
        reformatted = {"dim": 2, "data": [[1 / 6, 0], [-1.0, 0], [1 / 6, 0], [1.0, 0]]}
        _, out1 = run(capsys, ["compute", write(tmp_path, "a.json", B26_DOC), "--p", "2"])
        _, out2 = run(capsys, ["compute", write(tmp_path, "b.json", reformatted), "--p", "2"])
        assert json.loads(out1)["input_digest"] == json.loads(out2)["input_digest"]

    def test_timings_flag(self, tmp_path, capsys):
        path = write(tmp_path, "b.json", B26_DOC)
        _, out = run(capsys, ["compute", path, "--p", "2", "--timings"])
        doc = json.loads(out)
        assert set(doc["timings_ms"]) == {"parse", "compute", "verify"}

    def test_oracle_none(self, tmp_path, capsys):
        path = write(tmp_path, "b.json", B26_DOC)
        _, out = run(capsys, ["compute", path, "--p", "2", "--oracle", "none"])
        assert "oracle_deltas" not in json.loads(out)

    def test_annihilator_file(self, tmp_path, capsys):
        b_single = {
            "dim": 3,
            "data": [
                ["10/6", 0], ["-2/3", 0], ["-1/3", 0],
                ["7/12", 0], ["1/6", 0], ["-1/6", 0],
                ["35/12", 0], ["-5/3", 0], ["-1/3", 0],
            ],
        }
        # annihilator of A = I - B: (z - 1/2)^2 = z^2 - z + 1/4
        poly = {"coeffs": [[1, 0], ["-1/4", 0]]}
        code, out = run(
            capsys,
            [
                "compute",
                write(tmp_path, "b.json", b_single),
                "--p", "2",
                "--annihilator", write(tmp_path, "p.json", poly),
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["residual"] <= 1e-12
        assert doc["formula_path"] == "single-root"


class TestEnumerate:
    def test_golden_5x5_count(self, tmp_path, capsys):
        code, out = run(capsys, ["enumerate", write(tmp_path, "j.json", J46_DOC), "--p", "2"])
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 8
        assert len(doc["roots"]) == 8
        assert all(r["residual"] <= 1e-10 for r in doc["roots"])

    def test_scalar_four(self, tmp_path, capsys):
        # lambda = -3 gives I - A = [4]; its square roots are 2 and -2
        doc = {"blocks": [{"lambda": [-3, 0], "sizes": [1]}]}
        code, out = run(capsys, ["enumerate", write(tmp_path, "j.json", doc), "--p", "2"])
        assert code == 0
        roots = json.loads(out)["roots"]
        values = sorted(r["root"]["data"][0][0] for r in roots)
        assert values == pytest.approx([-2.0, 2.0])

    def test_golden_4x4_matches_printed(self, tmp_path, capsys):
        doc = {
            "blocks": [
                {"lambda": ["1/3", 0], "sizes": [2]},
                {"lambda": ["2/3", 0], "sizes": [2]},
            ]
        }
        code, out = run(capsys, ["enumerate", write(tmp_path, "j.json", doc), "--p", "2"])
        assert code == 0
        reports = json.loads(out)["roots"]
        assert len(reports) == 4
        got = [entries_from_payload(r["root"]) for r in reports]
        for target in printed_roots_44():
            assert sum(np.max(np.abs(g - target)) <= 1e-10 for g in got) == 1

    def test_branch_cut_exit_4(self, tmp_path, capsys):
        doc = {"blocks": [{"lambda": [2, 0], "sizes": [2]}]}
        code, out = run(capsys, ["enumerate", write(tmp_path, "j.json", doc), "--p", "2"])
        assert code == 4


class TestVerify:
    def test_pass_and_fail(self, tmp_path, capsys):
        b_path = write(tmp_path, "b.json", B26_DOC)
        good = write(tmp_path, "x.json", matrix_doc(ROOT26))
        code, out = run(capsys, ["verify", good, b_path, "--p", "2", "--tol", "1e-9"])
        assert code == 0
        assert json.loads(out)["pass"] is True

        bad = write(tmp_path, "y.json", matrix_doc(-ROOT26 + 0.5))
        code, out = run(capsys, ["verify", bad, b_path, "--p", "2", "--tol", "1e-9"])
        assert code == 5
        assert json.loads(out)["pass"] is False

    def test_zero_tolerance_fails_on_float_data(self, tmp_path, capsys):
        b_path = write(tmp_path, "b.json", B26_DOC)
        good = write(tmp_path, "x.json", matrix_doc(ROOT26))
        code, out = run(capsys, ["verify", good, b_path, "--p", "2", "--tol", "0"])
        assert code == 5
        doc = json.loads(out)
        assert doc["residual"] > 0.0


class TestSeriesCommand:
    def test_payload(self, tmp_path, capsys):
        doc = matrix_doc(0.2 * np.eye(2))
        code, out = run(capsys, ["series", write(tmp_path, "a.json", doc), "--p", "2", "--t", "1.0"])
        assert code == 0
        payload = json.loads(out)
        result = entries_from_payload(payload["result"])
        assert np.allclose(np.diag(result), np.sqrt(0.8), atol=1e-12)
        assert payload["tail_bound"] >= 0.0

    def test_inapplicable_exits_convergence(self, tmp_path, capsys):
        doc = matrix_doc(3.0 * np.eye(2))
        code, out = run(capsys, ["series", write(tmp_path, "a.json", doc), "--p", "2"])
        assert code == 4
        assert json.loads(out)["error"]["kind"] == "convergence"
