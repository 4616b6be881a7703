import json

import numpy as np
import pytest

import journalrank as jr
from journalrank import dataio
from journalrank.cli import main

# Golden CSV for the bundled two-field dataset at display precision 3.
GOLDEN_IPP = """id,value
J1,5.500
J2,5.500
J3,0.055
J4,0.055
J5,5.500
J6,5.500
J7,0.055
J8,0.055
"""

GOLDEN_AF = """id,value
J1,44.000
J2,44.000
J3,0.440
J4,0.440
J5,44.000
J6,44.000
J7,0.440
J8,0.440
"""

GOLDEN_DROP8_IPP = """id,before,after,relative_change
J1,5.500,5.513,0.002
J2,5.500,5.513,0.002
J3,0.055,0.055,0.002
J4,0.055,0.055,0.002
J5,5.500,5.490,0.002
J6,5.500,5.490,0.002
J7,0.055,0.055,0.002
"""


@pytest.fixture()
def dataset(tmp_path):
    journals, matrix = jr.two_field_example()
    dataio.write_journals(tmp_path / "journals.csv", journals)
    dataio.write_matrix(tmp_path / "matrix.csv", journals, matrix)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def base_args(dataset):
    return ["--journals", str(dataset / "journals.csv"), "--matrix", str(dataset / "matrix.csv")]


class TestCompute:
    def test_ipp_golden_output(self, capsys, dataset):
        code, out, _ = run(
            capsys, "compute", *base_args(dataset), "--indicator", "ipp", "--precision", "3"
        )
        assert code == 0
        assert out == GOLDEN_IPP

    def test_af_golden_output(self, capsys, dataset):
        code, out, _ = run(
            capsys, "compute", *base_args(dataset), "--indicator", "af", "--precision", "3"
        )
        assert code == 0
        assert out == GOLDEN_AF

    def test_json_payload_and_total_mass(self, capsys, dataset):
        code, out, _ = run(
            capsys,
            "compute",
            *base_args(dataset),
            "--indicator",
            "ai",
            "--alpha",
            "0.85",
            "--format",
            "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["indicator"] == "ai"
        assert payload["params"] == {"alpha": 0.85}
        assert set(payload["solver"]) == {"iterations", "residual", "method_used"}
        values = payload["values"]
        assert set(values) == set(f"J{i}" for i in range(1, 9))
        # Per-article scores times articles, times 100, recover the total
        # stationary mass of 100.
        total = 100.0 * sum(values[f"J{i}"] * 100 for i in range(1, 9))
        assert total == pytest.approx(100.0, abs=1e-9)

    def test_alpha_defaults_to_085(self, capsys, dataset):
        code, out, _ = run(
            capsys, "compute", *base_args(dataset), "--indicator", "ai", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["params"]["alpha"] == 0.85

    def test_param_flag_mismatch_is_validation_failure(self, capsys, dataset):
        code, _, err = run(
            capsys, "compute", *base_args(dataset), "--indicator", "if", "--alpha", "0.5"
        )
        assert code == 1
        record = json.loads(err)
        assert record["error"] == "ValueError"

    def test_missing_file_exits_one(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "compute",
            "--journals",
            str(tmp_path / "none.csv"),
            "--matrix",
            str(tmp_path / "none2.csv"),
            "--indicator",
            "if",
        )
        assert code == 1
        assert json.loads(err)["error"] in ("FileNotFoundError", "OSError")

    def test_invalid_matrix_reports_issue_records(self, capsys, tmp_path):
        journals = jr.JournalSet((jr.Journal("a", None, 5, 5), jr.Journal("b", None, 5, 5)))
        dataio.write_journals(tmp_path / "journals.csv", journals)
        (tmp_path / "matrix.csv").write_text("citing\\cited,a,b\na,1,2\nb,3,-4\n")
        code, _, err = run(
            capsys,
            "compute",
            "--journals",
            str(tmp_path / "journals.csv"),
            "--matrix",
            str(tmp_path / "matrix.csv"),
            "--indicator",
            "if",
        )
        assert code == 1
        record = json.loads(err)
        assert record["error"] == "ValidationError"
        assert record["issues"][0]["code"] == "NegativeCount"
        assert record["issues"][0]["cell"] == [1, 1]

    def test_non_convergence_exits_two(self, capsys, dataset):
        code, _, err = run(
            capsys,
            "compute",
            *base_args(dataset),
            "--indicator",
            "ai",
            "--alpha",
            "1",
            "--method",
            "power",
            "--max-iterations",
            "2",
        )
        assert code == 2
        record = json.loads(err)
        assert record["error"] == "NoConvergence"
        assert record["iterations"] == 2

    def test_not_irreducible_lists_components(self, capsys, tmp_path):
        journals = jr.JournalSet((jr.Journal("a", None, 5, 5), jr.Journal("b", None, 5, 5)))
        matrix = jr.CitationMatrix(np.array([[1.0, 0.0], [0.0, 1.0]]))
        dataio.write_journals(tmp_path / "journals.csv", journals)
        dataio.write_matrix(tmp_path / "matrix.csv", journals, matrix)
        code, _, err = run(
            capsys,
            "compute",
            "--journals",
            str(tmp_path / "journals.csv"),
            "--matrix",
            str(tmp_path / "matrix.csv"),
            "--indicator",
            "ipp",
        )
        assert code == 1
        record = json.loads(err)
        assert record["error"] == "NotIrreducible"
        assert sorted(map(sorted, record["components"])) == [[0], [1]]

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_bad_usage_exits_one(self, capsys):
        assert run(capsys, "compute", "--indicator", "zz")[0] == 1


class TestCorrelate:
    def test_grid_layout_and_oracle(self, capsys, tmp_path):
        journals, matrix, _ = jr.block_model(jr.BlockModelSpec(journals_per_field=10, seed=21))
        dataio.write_journals(tmp_path / "journals.csv", journals)
        dataio.write_matrix(tmp_path / "matrix.csv", journals, matrix)
        code, out, _ = run(
            capsys,
            "correlate",
            "--journals",
            str(tmp_path / "journals.csv"),
            "--matrix",
            str(tmp_path / "matrix.csv"),
            "--indicators",
            "if,af,ai:0.85",
            "--precision",
            "6",
        )
        assert code == 0
        lines = [line.split(",") for line in out.strip().splitlines()]
        assert lines[0] == ["indicator", "IF", "AF", "AI(0.85)"]
        grid = np.array([[float(cell) for cell in row[1:]] for row in lines[1:]])
        np.testing.assert_array_equal(np.diag(grid), 1.0)
        vectors = [
            jr.impact_factor(journals, matrix),
            jr.audience_factor(journals, matrix),
            jr.article_influence(journals, matrix, alpha=0.85),
        ]
        table = jr.correlation_table(vectors)
        for i in range(3):
            for j in range(3):
                if i > j:
                    assert grid[i, j] == pytest.approx(table.pearson[i, j], abs=5e-7)
                elif i < j:
                    assert grid[i, j] == pytest.approx(table.spearman[i, j], abs=5e-7)

    def test_beta_gamma_tokens(self, capsys, dataset):
        code, out, _ = run(
            capsys,
            "correlate",
            *base_args(dataset),
            "--indicators",
            "if,wpr:0.9,0.05,sjr",
            "--format",
            "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["labels"] == ["IF", "WPR(0.9,0.05)", "SJR(0.9,0.0999)"]

    def test_single_indicator_rejected(self, capsys, dataset):
        code, _, err = run(capsys, "correlate", *base_args(dataset), "--indicators", "if")
        assert code == 1
        assert json.loads(err)["error"] == "ValueError"


class TestSensitivity:
    def test_drop_matches_reference_scenario(self, capsys, dataset):
        code, out, _ = run(
            capsys,
            "sensitivity",
            *base_args(dataset),
            "--indicator",
            "ipp",
            "--drop",
            "J8",
            "--precision",
            "3",
        )
        assert code == 0
        assert out == GOLDEN_DROP8_IPP

    def test_sweep_is_deterministic_and_ranked(self, capsys, dataset):
        code, first, _ = run(
            capsys, "sensitivity", *base_args(dataset), "--indicator", "af", "--sweep"
        )
        assert code == 0
        code, second, _ = run(
            capsys, "sensitivity", *base_args(dataset), "--indicator", "af", "--sweep"
        )
        assert code == 0
        assert first == second
        rows = [line.split(",") for line in first.strip().splitlines()[1:]]
        changes = [float(value) for _, value in rows]
        assert changes == sorted(changes, reverse=True)
        assert len(rows) == 8

    def test_unknown_drop_id(self, capsys, dataset):
        code, _, err = run(
            capsys, "sensitivity", *base_args(dataset), "--indicator", "ipp", "--drop", "nope"
        )
        assert code == 1
        assert json.loads(err)["error"] == "KeyError"


class TestFieldCheck:
    def test_near_decomposable_report(self, capsys, tmp_path):
        journals, matrix, partition = jr.near_decomposable_example()
        dataio.write_journals(tmp_path / "journals.csv", journals)
        dataio.write_matrix(tmp_path / "matrix.csv", journals, matrix)
        dataio.write_partition(tmp_path / "partition.csv", journals, partition)
        code, out, _ = run(
            capsys,
            "field-check",
            "--journals",
            str(tmp_path / "journals.csv"),
            "--matrix",
            str(tmp_path / "matrix.csv"),
            "--partition",
            str(tmp_path / "partition.csv"),
            "--indicator",
            "ipp",
            "--format",
            "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["delta"] == 0.003
        assert payload["bounds_hold"][0] is False
        assert payload["field_means"][0] == pytest.approx(7.5, abs=1e-9)
        assert payload["balanced"] is True


class TestDemo:
    def test_export_reingests_identically(self, capsys, tmp_path):
        code, out, _ = run(capsys, "demo", "table1", "--export", str(tmp_path / "out"))
        assert code == 0
        journals = dataio.read_journals(tmp_path / "out" / "journals.csv")
        matrix = dataio.read_matrix(tmp_path / "out" / "matrix.csv", journals)
        reference_journals, reference_matrix = jr.two_field_example()
        assert journals == reference_journals
        np.testing.assert_array_equal(matrix.counts, reference_matrix.counts)

    def test_printed_scores_match_reference(self, capsys, tmp_path):
        _, out, _ = run(capsys, "demo", "table1", "--export", str(tmp_path / "out"))
        rows = [line.split() for line in out.splitlines()[2:] if line.strip()]
        for row, expected_ipp, expected_af in zip(
            rows, jr.synth.TWO_FIELD_EXPECTED_IPP, jr.synth.TWO_FIELD_EXPECTED_AF
        ):
            assert row[1] == row[2] == f"{expected_ipp:.3f}"
            assert row[3] == row[4] == f"{expected_af:.3f}"

    def test_counterexample_reports_delta(self, capsys, tmp_path):
        code, out, _ = run(capsys, "demo", "counterexample", "--export", str(tmp_path / "ce"))
        assert code == 0
        assert "computed 0.003" in out
        assert "within (1±delta) bounds: no" in out
        journals = dataio.read_journals(tmp_path / "ce" / "journals.csv")
        matrix = dataio.read_matrix(tmp_path / "ce" / "matrix.csv", journals)
        assert jr.min_delta(matrix, jr.FieldPartition((1, 2))) == 0.003
