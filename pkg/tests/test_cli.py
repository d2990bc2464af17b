"""End-to-end tests for the ``gtoric`` command line interface."""

import json

import pytest
from click.testing import CliRunner

from gtoric.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestValidate:
    def test_model_m1_passes(self, runner):
        res = runner.invoke(main, ["validate", "--model", "m1"])
        assert res.exit_code == 0
        assert "status: pass" in res.output
        assert "terms_commute: True" in res.output
        assert "terms_projectors: True" in res.output

    def test_appendix_b_enumeration(self, runner):
        res = runner.invoke(
            main,
            ["validate", "--groupoid", "sis:3", "--appendix-b", "--format", "json"],
        )
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["axioms"] == "pass"
        corners = data["corners"]
        for corner in ("NW", "NE", "SE"):
            assert corners[corner]["violations"] == []
        assert corners["SW"]["violations"]  # SW needs the summed element
        assert corners["SW"]["pairs_checked"] == 81

    def test_boundary_model_requires_open_lattice(self, runner):
        res = runner.invoke(main, ["validate", "--model", "boundary"])
        assert res.exit_code != 0
        assert "open lattice" in res.output

    def test_boundary_model_on_open_lattice(self, runner):
        res = runner.invoke(
            main, ["validate", "--model", "boundary", "--lattice", "open:2x2"]
        )
        assert res.exit_code == 0
        assert "status: pass" in res.output

    def test_unknown_model(self, runner):
        res = runner.invoke(main, ["validate", "--model", "nope"])
        assert res.exit_code != 0


class TestGsd:
    def test_m1_4x4(self, runner):
        res = runner.invoke(main, ["gsd", "--model", "m1", "--lattice", "torus:4x4"])
        assert res.exit_code == 0
        assert "gsd: 131072" in res.output

    def test_zn3(self, runner):
        res = runner.invoke(main, ["gsd", "--model", "zn:3", "--n", "3"])
        assert res.exit_code == 0
        assert "gsd: 243" in res.output

    def test_method_both_agrees(self, runner):
        res = runner.invoke(
            main, ["gsd", "--model", "m1", "--method", "both", "--format", "json"]
        )
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["gsd"] == 32
        assert data["dense_trace"] == pytest.approx(32.0)
        assert data["agree"] is True

    def test_json_fields(self, runner):
        res = runner.invoke(
            main, ["gsd", "--model", "mnondeg", "--format", "json"]
        )
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["gsd"] == 1
        assert data["consistency"] is True
        assert data["terms"] == {"face": 4, "vertex": 4}


class TestExcite:
    def test_single_error_energy(self, runner):
        res = runner.invoke(main, ["excite", "--model", "m1", "--op", "Z@(1,1).E"])
        assert res.exit_code == 0
        assert "energy: 1" in res.output
        assert "vertex (1, 1)" in res.output

    def test_closed_loop_is_invisible(self, runner):
        op = "X@(0,0).W X@(0,1).W X@(0,2).W"
        res = runner.invoke(
            main,
            ["excite", "--model", "m1", "--op", op, "--format", "json"],
        )
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["energy"] == 0
        assert data["violated"] == []

    def test_seed_config_dense_crosscheck(self, runner):
        res = runner.invoke(
            main,
            [
                "excite",
                "--model",
                "m1",
                "--lattice",
                "torus:2x2",
                "--op",
                "Z@(1,1).E",
                "--seed-config",
                "all=1 E=2 W=2",
                "--format",
                "json",
            ],
        )
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["energy"] == 1
        assert data["dense_energy"] == 1
        assert data["dense_agrees"] is True

    def test_bad_pauli_token(self, runner):
        res = runner.invoke(main, ["excite", "--model", "m1", "--op", "Q@(1,1).E"])
        assert res.exit_code != 0
        assert "bad token" in res.output

    def test_seed_over_budget(self, runner):
        res = runner.invoke(
            main,
            ["excite", "--model", "m1", "--op", "Z@(1,1).E",
             "--seed-config", "all=1 E=2 W=2"],
        )
        assert res.exit_code != 0
        assert "budget" in res.output
