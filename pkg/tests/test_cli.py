import json

import pytest
from click.testing import CliRunner

from multitangent.cli import main


@pytest.fixture
def runner():
    return CliRunner()


class TestReduce:
    def test_text(self, runner):
        result = runner.invoke(main, ["reduce", "2,2"])
        assert result.exit_code == 0
        assert result.output.strip() == "Te[2,2] = 2·Ze[2]·Te^2"

    def test_json(self, runner):
        result = runner.invoke(main, ["reduce", "2,2", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["sequence"] == [2, 2]

    def test_divergent_zero(self, runner):
        result = runner.invoke(main, ["reduce", "2,1"])
        assert result.output.strip() == "Te[2,1] = 0"


def eval_row(output: str) -> list[str]:
    import csv as csvmod
    import io as iomod

    return next(csvmod.reader(iomod.StringIO(output)))


class TestEval:
    def test_direct_row(self, runner):
        result = runner.invoke(main, ["eval", "2,2", "--z", "0.3+0.7j", "--direct"])
        assert result.exit_code == 0
        fields = eval_row(result.output)
        assert fields[0] == "2,2"
        assert fields[5] == "direct"
        assert len(fields) == 7

    def test_direct_and_reduced_agree(self, runner):
        out1 = runner.invoke(main, ["eval", "2,1,3", "--z", "0.2+0.5j", "--direct"])
        out2 = runner.invoke(main, ["eval", "2,1,3", "--z", "0.2+0.5j", "--reduced"])
        v1 = complex(float(eval_row(out1.output)[3]), float(eval_row(out1.output)[4]))
        v2 = complex(float(eval_row(out2.output)[3]), float(eval_row(out2.output)[4]))
        assert v1 != 0 and abs(v1 - v2) < 1e-8

    def test_pole_guard_exit(self, runner):
        result = runner.invoke(main, ["eval", "2", "--z", "1.0000001+0j"])
        assert result.exit_code != 0

    def test_divergent_sequences_need_reduced_mode(self, runner):
        direct = runner.invoke(main, ["eval", "1,2", "--z", "0.3+0.7j", "--direct"])
        assert direct.exit_code != 0
        reduced = runner.invoke(main, ["eval", "1,1", "--z", "0.3+0.7j", "--reduced"])
        assert reduced.exit_code == 0
        value = float(eval_row(reduced.output)[3])
        assert abs(value + 4.9348022) < 1e-6  # -pi^2/2


class TestTable:
    def test_text_output(self, runner):
        result = runner.invoke(main, ["table", "--max-weight", "4"])
        assert result.exit_code == 0
        assert "Te[2,2] = 2·Ze[2]·Te^2" in result.output

    def test_write_file(self, runner, tmp_path):
        out = tmp_path / "table.csv"
        result = runner.invoke(
            main, ["table", "--max-weight", "3", "--format", "csv", "--output", str(out)]
        )
        assert result.exit_code == 0
        assert out.read_text().startswith("sequence,")


class TestLabCommands:
    def test_relations(self, runner):
        result = runner.invoke(main, ["relations", "--weight", "5"])
        assert result.exit_code == 0
        assert "kernel dimension 1" in result.output

    def test_relations_coverage_exit(self, runner):
        result = runner.invoke(main, ["relations", "--weight", "12"])
        assert result.exit_code == 3

    def test_project(self, runner):
        result = runner.invoke(main, ["project", "3"])
        assert result.exit_code == 0
        assert "1/6·Te[3,2]" in result.output

    def test_cleanse(self, runner):
        result = runner.invoke(main, ["cleanse", "2,1,3"])
        assert result.exit_code == 0
        assert "Te[3,3]" in result.output

    def test_fourier(self, runner):
        result = runner.invoke(main, ["fourier", "2", "--n", "1"])
        assert result.exit_code == 0
        assert "39.478" in result.output


class TestVerify:
    def test_trifact_suite(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "trifact"])
        assert result.exit_code == 0
        assert "[ok] suite trifact" in result.output


class TestConfig:
    def test_config_file(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"target_abs_error": 1e-6, "working_precision": 96}))
        result = runner.invoke(
            main, ["--config", str(cfg), "eval", "2", "--z", "0.5+0j"]
        )
        assert result.exit_code == 0
        assert "1.0e-06" in result.output

    def test_bad_truncation_cap_rejected(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"truncation_cap": 5}))
        result = runner.invoke(main, ["--config", str(cfg), "reduce", "2"])
        assert result.exit_code != 0

    def test_custom_basis_table(self, runner, tmp_path):
        table = tmp_path / "table.json"
        table.write_text(json.dumps({"entries": {"2": ["1"]}}))
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"basis_table": str(table)}))
        try:
            result = runner.invoke(
                main, ["--config", str(cfg), "relations", "--weight", "4"]
            )
            assert result.exit_code == 0
            assert "kernel dimension 0" in result.output
            # weight 5 now lacks weight-3 entries
            result = runner.invoke(
                main, ["--config", str(cfg), "relations", "--weight", "5"]
            )
            assert result.exit_code in (2, 3)
        finally:
            from multitangent.basis_table import MzvBasisTable, set_shared

            set_shared(MzvBasisTable.load())
