"""Command-line interface."""

import json

import pytest

from pbpoly.cli import main
from pbpoly.core import signed_hypergraph_to_json
from pbpoly.instances import mixed_sign_chain


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(signed_hypergraph_to_json(mixed_sign_chain(4)))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestAnalyze:
    def test_reports_acyclicity(self, capsys, instance_file):
        code, out = run(capsys, "analyze", instance_file)
        assert code == 0
        data = json.loads(out)
        assert data["beta_acyclic"] is True
        assert data["alpha_acyclic"] is True
        assert data["beta_cycles"] == 0
        assert data["rank"] == 3


class TestBuild:
    def test_json_payload_contains_rows(self, capsys, instance_file):
        code, out = run(capsys, "build", instance_file, "--strategy", "beta")
        assert code == 0
        data = json.loads(out)
        assert data["report"]["strategy"] == "beta"
        assert len(data["rows"]) == data["report"]["n_rows"]

    def test_strategy_choices_are_validated(self, instance_file):
        with pytest.raises(SystemExit):
            main(["build", instance_file, "--strategy", "bogus"])


class TestVerify:
    def test_passing_instance_exits_zero(self, capsys, instance_file):
        code, out = run(capsys, "verify", instance_file, "--trials", "5")
        assert code == 0
        data = json.loads(out)
        assert data["all_pass"] is True
        assert data["trials"] == 5

    def test_seed_changes_nothing_for_a_correct_build(self, capsys,
                                                      instance_file):
        code, _ = run(capsys, "verify", instance_file,
                      "--trials", "3", "--seed", "99")
        assert code == 0


class TestExport:
    def test_lp_format(self, capsys, tmp_path, instance_file):
        out_path = tmp_path / "out.lp"
        code, _ = run(capsys, "export", instance_file,
                      "--format", "lp", "--out", str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert "Subject To" in text

    def test_json_format_round_trips(self, capsys, tmp_path, instance_file):
        out_path = tmp_path / "out.json"
        code, _ = run(capsys, "export", instance_file,
                      "--format", "json", "--out", str(out_path))
        assert code == 0
        from pbpoly.formulation import ExtendedFormulation
        EF = ExtendedFormulation.from_json(out_path.read_text())
        assert EF.rows


class TestErrors:
    def test_missing_file(self):
        with pytest.raises(SystemExit):
            main(["analyze", "/nonexistent/no.json"])

    def test_invalid_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(SystemExit, match="invalid JSON"):
            main(["analyze", str(bad)])
