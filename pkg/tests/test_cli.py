import json
import math

import numpy as np
import pytest

from conftest import block4_pair, theta_pair
from twoproj import checks, report
from twoproj.cli import main, parse_angle, parse_angles
from twoproj.projlattice import is_generic, rank
from twoproj.matcore import Tolerance
from twoproj.pairfile import PairFile
from twoproj.report import residual_table, without_timestamp


def write_pair(path, p, q, name="pair"):
    path.write_text(PairFile.from_matrices(name, p, q).dumps())
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def sixty_file(tmp_path):
    return write_pair(tmp_path / "sixty.json", *theta_pair(), name="sixty")


@pytest.fixture
def commuting_file(tmp_path):
    return write_pair(tmp_path / "comm.json", np.diag([1.0, 1, 0, 0]), np.diag([0.0, 1, 1, 0]))


@pytest.fixture
def block4_file(tmp_path):
    return write_pair(tmp_path / "block4.json", *block4_pair())


class TestAngles:
    @pytest.mark.parametrize(
        "text, value",
        [("0.5", 0.5), ("pi/3", math.pi / 3), ("2pi/5", 2 * math.pi / 5), ("0.5*pi", math.pi / 2)],
    )
    def test_parse(self, text, value):
        assert parse_angle(text) == pytest.approx(value, abs=1e-15)

    def test_csv(self):
        assert parse_angles("pi/3, 0.2") == pytest.approx((math.pi / 3, 0.2))


class TestGenerate:
    def test_block_example(self, tmp_path, capsys):
        out = tmp_path / "g.json"
        assert main(["generate", "--n", "2", "--mode", "block", "--angles", "pi/3", "-o", str(out)]) == 0
        p, q = PairFile.load(out).decode()
        p0, q0 = theta_pair()
        assert np.array_equal(p, p0) and np.array_equal(q, q0)

    def test_commuting_seed_7(self, tmp_path, capsys):
        code, doc = run(["generate", "--n", "4", "--mode", "commuting", "--seed", "7"], capsys)
        assert code == 0 and doc["generator"]["seed"] == 7
        path = tmp_path / "c.json"
        path.write_text(json.dumps(doc))
        code, rep = run(["decompose", "-i", str(path)], capsys)
        assert rep["sixfold"]["rank_r"] == 0

    def test_generic_seed_42(self, capsys):
        code, doc = run(["generate", "--n", "8", "--mode", "generic", "--seed", "42"], capsys)
        assert code == 0
        p, q = PairFile.from_dict(doc).decode()
        assert is_generic(p, q) and rank(p) == 4

    def test_deterministic_output(self, capsys):
        argv = ["generate", "--n", "6", "--mode", "random", "--seed", "11", "--dim-p", "2"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_bad_spec_is_usage_error(self, capsys):
        assert main(["generate", "--n", "2", "--dim-p", "5"]) == 2
        assert main(["generate", "--mode", "random"]) == 2
        assert main(["generate", "--n", "2", "--mode", "block", "--angles", "pix"]) == 2


class TestDecompose:
    def test_sixty(self, sixty_file, capsys):
        code, rep = run(["decompose", "-i", sixty_file], capsys)
        assert code == 0 and rep["schema"] == 1 and rep["passed"]
        assert rep["input"]["generic"] is True
        assert rep["principal_angles"]["cosines"] == pytest.approx([0.5], abs=1e-12)
        assert rep["principal_angles"]["angles"] == pytest.approx([math.acos(0.5)], abs=1e-12)
        for c in rep["residuals"]:
            if c["bound"] == "max":
                assert c["residual"] <= 1e-10, c

    def test_commuting(self, commuting_file, capsys):
        code, rep = run(["decompose", "-i", commuting_file], capsys)
        assert code == 0
        assert rep["sixfold"]["rank_r"] == 0 and rep["compressed"]["m"] == 0
        names = {(c["suite"], c["name"]) for c in rep["residuals"]}
        assert ("general_cs", "commuting_reconstruction") in names

    def test_block4(self, block4_file, capsys):
        code, rep = run(["decompose", "-i", block4_file, "--side", "q"], capsys)
        assert code == 0
        assert rep["sixfold"]["rank_r"] == 2 and "r_q" in rep["sixfold"]["ranks"]
        assert rep["principal_angles"]["source"] == "compressed"
        assert rep["principal_angles"]["angles"] == pytest.approx([math.pi / 3], abs=1e-12)
        assert rep["meet_rank_sensitivity"]["stable"]

    def test_residuals_are_exact_numbers(self, sixty_file, capsys):
        _, rep = run(["decompose", "-i", sixty_file], capsys)
        assert all(isinstance(c["residual"], float) for c in rep["residuals"])

    def test_deterministic_apart_from_timestamp(self, block4_file, capsys):
        _, a = run(["decompose", "-i", block4_file], capsys)
        _, b = run(["decompose", "-i", block4_file], capsys)
        assert without_timestamp(a) == without_timestamp(b)


class TestVerify:
    def test_all_on_sixty(self, sixty_file, capsys):
        code, rep = run(["verify", "-i", sixty_file, "--suite", "all"], capsys)
        assert code == 0 and rep["summary"]["fail"] == 0 and rep["summary"]["error"] == 0

    def test_spectral_on_commuting_skips(self, commuting_file, capsys):
        code, rep = run(["verify", "-i", commuting_file, "--suite", "spectral"], capsys)
        assert code == 0
        found = rep["instances"][0]["checks"]
        assert found and all(c["status"] == "skipped" for c in found)
        assert all(c["note"].startswith("skipped: precondition") for c in found)

    def test_single_spec(self, capsys):
        code, rep = run(["verify", "--n", "6", "--mode", "generic", "--seed", "3"], capsys)
        assert code == 0 and len(rep["instances"]) == 1

    def test_batch_is_deterministic(self, capsys):
        argv = ["verify", "--count", "12", "--seed", "5", "--n-max", "8"]
        code1, a = run(argv, capsys)
        code2, b = run(argv, capsys)
        assert code1 == code2 == 0
        assert residual_table(a) == residual_table(b)
        assert without_timestamp(a) == without_timestamp(b)

    def test_failure_sets_exit_one(self, sixty_file, capsys, monkeypatch):
        monkeypatch.setattr(checks, "PYTHAGOREAN_N", -1.0)
        code, rep = run(["verify", "-i", sixty_file, "--suite", "cs"], capsys)
        assert code == 1 and not rep["passed"]

    def test_env_tolerance_and_flag_precedence(self, sixty_file, capsys, monkeypatch):
        monkeypatch.setenv("TWOPROJ_TOL", "1e-7")
        _, rep = run(["verify", "-i", sixty_file, "--suite", "lattice"], capsys)
        assert rep["tolerance"]["eps_rank"] == 1e-7
        _, rep = run(["verify", "-i", sixty_file, "--suite", "lattice", "--tol", "1e-11"], capsys)
        assert rep["tolerance"]["eps_rank"] == 1e-11


class TestSpectrumCommand:
    def test_sixty(self, sixty_file, capsys):
        code, rep = run(["spectrum", "-i", sixty_file], capsys)
        assert code == 0
        assert rep["spectrum"]["observed"] == pytest.approx([0.5, 1.5], abs=1e-12)

    def test_not_generic_hint(self, block4_file, capsys):
        code, rep = run(["spectrum", "-i", block4_file], capsys)
        assert code == 1
        assert rep["errors"][0]["error"] == "NotGeneric" and "--compress" in rep["errors"][0]["hint"]
        code, rep = run(["spectrum", "-i", block4_file, "--compress"], capsys)
        assert code == 0
        assert rep["spectrum"]["observed"] == pytest.approx([0.5, 1.5], abs=1e-12)


class TestCommutantCommand:
    def test_embed(self, sixty_file, tmp_path, capsys):
        b = tmp_path / "b.json"
        b.write_text(json.dumps((2.5 * theta_pair()[0]).tolist()))
        code, rep = run(["commutant", "-i", sixty_file, "--b", str(b)], capsys)
        assert code == 0
        assert np.allclose(rep["a"], 2.5 * np.eye(2), atol=1e-12)

    def test_decompose(self, sixty_file, tmp_path, capsys):
        a = tmp_path / "a.json"
        a.write_text(json.dumps({"matrix": np.eye(2).tolist()}))
        code, rep = run(["commutant", "-i", sixty_file, "--a", str(a)], capsys)
        assert code == 0
        assert np.allclose(rep["b"], theta_pair()[0], atol=1e-12)

    def test_projection(self, sixty_file, tmp_path, capsys):
        z = tmp_path / "z.json"
        z.write_text(json.dumps(np.eye(2).tolist()))
        code, rep = run(["commutant", "-i", sixty_file, "--z", str(z)], capsys)
        assert code == 0
        assert np.allclose(rep["t"], theta_pair()[0], atol=1e-12)

    def test_bad_generator_recorded(self, sixty_file, tmp_path, capsys):
        b = tmp_path / "b.json"
        b.write_text(json.dumps(np.eye(2).tolist()))
        code, rep = run(["commutant", "-i", sixty_file, "--b", str(b)], capsys)
        assert code == 1 and rep["errors"][0]["error"] == "BadGenerator"

    def test_dimension_mismatch_recorded(self, sixty_file, tmp_path, capsys):
        b = tmp_path / "b.json"
        b.write_text(json.dumps(np.eye(3).tolist()))
        code, rep = run(["commutant", "-i", sixty_file, "--b", str(b)], capsys)
        assert code == 1 and rep["errors"][0]["error"] == "DimensionMismatch"

    def test_needs_exactly_one(self, sixty_file, capsys):
        assert main(["commutant", "-i", sixty_file]) == 2


class TestUsageErrors:
    def test_malformed_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        assert main(["decompose", "-i", str(bad)]) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_not_a_projection(self, tmp_path, capsys):
        path = write_pair(tmp_path / "x.json", 0.5 * np.eye(2), np.eye(2))
        assert main(["decompose", "-i", path]) == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["decompose", "-i", str(tmp_path / "nope.json")]) == 2

    def test_missing_input_flag(self, capsys):
        assert main(["decompose"]) == 2

    def test_bad_env_tolerance(self, sixty_file, capsys, monkeypatch):
        monkeypatch.setenv("TWOPROJ_TOL", "abc")
        assert main(["decompose", "-i", sixty_file]) == 2

    def test_argparse_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


class TestReportHelpers:
    def test_jsonable(self):
        out = report.jsonable({"a": np.arange(2.0), "b": np.float64("inf"), "c": np.bool_(True)})
        assert out == {"a": [0.0, 1.0], "b": "inf", "c": True}

    def test_dumps_flattens_rows(self):
        text = report.dumps({"m": np.eye(2)})
        assert "[1.0, 0.0]" in text and json.loads(text)["m"] == [[1.0, 0.0], [0.0, 1.0]]

    def test_meet_rank_sensitivity_flags_small_angle(self):
        p, q = theta_pair(1e-4)
        sens = report.meet_rank_sensitivity(p, q, Tolerance())
        assert sens["ranks"]["p&q"] == 0 and sens["loose_ranks"]["p&q"] == 1
        assert not sens["stable"]
