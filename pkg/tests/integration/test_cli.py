"""
Integration tests for the command-line interface.

Runs ``main`` in-process on model files written to a temporary directory
and inspects exit codes and JSON reports.
"""

import json
import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

from spinpath.__main__ import EXIT_FAILED, EXIT_OK, EXIT_USAGE, UsageError, main, parse_region
from spinpath.components.checks import strip_timing
from spinpath.components.groupoid import Region
from spinpath.core.config import reset_settings

ISING = """\
# classical Ising chain on three sites
model q=2 d=1 range=1
term A=[0, 1] B=[] c=-1.0
term A=[1, 2] B=[] c=-1.0
term A=[1] B=[] c=(-0.2, 0.0)
"""

TFI = """\
model q=2 d=1 range=1
term A=[0, 1] B=[] c=-1.0
term A=[1, 2] B=[] c=-1.0
term A=[] B=[0] c=-0.6
term A=[] B=[1] c=-0.6
term A=[] B=[2] c=-0.6
"""

SINGLE = """\
model q=2 d=1 range=1
term A=[] B=[0] c=-1.0
"""

INVALID = """\
model q=2 d=1 range=1

term A=[0] B=[] c=(0.0, 1.0)
"""


class TestCli:
    """Test commands end to end."""

    def setup_method(self):
        self.temp_dir = Path(tempfile.mkdtemp())

    def teardown_method(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        reset_settings()

    def _model(self, text: str, name: str = "model.txt") -> str:
        path = self.temp_dir / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def _run(self, capsys, *argv: str) -> tuple[int, dict | None, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        report = json.loads(captured.out) if captured.out.strip() else None
        return code, report, captured.err

    def test_validate_valid_model(self, capsys):
        code, report, _ = self._run(capsys, "validate", self._model(ISING))
        assert code == EXIT_OK
        assert report["valid"] is True
        assert report["terms"] == 3
        assert report["manifest"]["command"] == "validate"
        assert len(report["manifest"]["model_digest"]) == 64

    def test_validate_invalid_model(self, capsys):
        code, report, err = self._run(capsys, "validate", self._model(INVALID))
        assert code == EXIT_FAILED
        assert report["valid"] is False
        assert report["violations"][0]["line"] == 3
        assert "line 3" in err

    def test_validate_empty_file(self, capsys):
        code, report, err = self._run(capsys, "validate", self._model(""))
        assert code == EXIT_USAGE
        assert report is None
        assert "model header" in err

    def test_missing_file(self, capsys):
        code, _, _ = self._run(capsys, "validate", str(self.temp_dir / "absent.txt"))
        assert code == EXIT_USAGE

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_gibbs_at_zero_beta_is_identity(self, capsys):
        code, report, _ = self._run(
            capsys, "gibbs", self._model(SINGLE), "--beta", "0", "--region", "0", "--ambient", "0"
        )
        assert code == EXIT_OK
        assert report["region"] == "{0}"
        density = np.array([[complex(*entry) for entry in row] for row in report["density"]])
        assert np.allclose(density, np.eye(2), atol=1e-14)
        assert report["partition_function"] == pytest.approx([2.0, 0.0])

    def test_gibbs_series_within_tail_bound(self, capsys):
        code, report, _ = self._run(
            capsys,
            "gibbs",
            self._model(SINGLE),
            "--region",
            "0",
            "--ambient",
            "0",
            "--method",
            "series",
            "--order",
            "20",
            "--compare",
        )
        assert code == EXIT_OK
        assert report["method"] == "series"
        assert report["comparison"]["within_bounds"] is True
        density = np.array([[complex(*entry) for entry in row] for row in report["density"]])
        expected = np.cosh(1.0) * np.eye(2) + np.sinh(1.0) * np.array([[0, 1], [1, 0]])
        assert np.allclose(density, expected, atol=1e-10)

    def test_gibbs_mc_on_classical_model(self, capsys):
        code, report, _ = self._run(
            capsys,
            "gibbs",
            self._model(ISING),
            "--region",
            "0:2",
            "--ambient",
            "0:2",
            "--method",
            "mc",
            "--samples",
            "200",
            "--compare",
        )
        assert code == EXIT_OK
        assert report["method"] == "mc"
        assert np.abs(np.array(report["standard_error"])).max() < 1e-6

    def test_gibbs_rejects_negative_beta(self, capsys):
        code, _, _ = self._run(capsys, "gibbs", self._model(SINGLE), "--beta", "-1", "--region", "0")
        assert code == EXIT_USAGE

    def test_check_dlr_on_classical_model(self, capsys):
        code, report, _ = self._run(
            capsys, "check", self._model(ISING), "--suite", "dlr", "--region", "1", "--ambient", "0:2"
        )
        assert code == EXIT_OK
        assert report["suite"] == "dlr"
        assert report["summary"]["failed"] == []
        assert "classical-kernel" in [c["name"] for c in report["checks"]]

    def test_check_kms_on_transverse_field_model(self, capsys):
        code, report, _ = self._run(
            capsys, "check", self._model(TFI), "--suite", "kms", "--region", "1", "--ambient", "0:2"
        )
        assert code == EXIT_OK
        assert report["summary"]["failed"] == []

    def test_check_with_corruption_fails_positivity(self, capsys):
        code, report, _ = self._run(
            capsys,
            "check",
            self._model(TFI),
            "--suite",
            "specification",
            "--region",
            "1",
            "--ambient",
            "0:2",
            "--inject-corruption",
        )
        assert code == EXIT_FAILED
        assert report["summary"]["failed"] == ["positivity"]
        assert report["manifest"]["parameters"]["inject_corruption"] is True

    def test_check_rejects_zero_beta(self, capsys):
        code, _, _ = self._run(
            capsys, "check", self._model(TFI), "--suite", "dlr", "--region", "1", "--beta", "0"
        )
        assert code == EXIT_USAGE

    def test_check_invalid_model(self, capsys):
        code, _, err = self._run(
            capsys, "check", self._model(INVALID), "--suite", "dlr", "--region", "0"
        )
        assert code == EXIT_FAILED
        assert "line 3" in err

    def test_pp_rejects_zero_samples(self, capsys):
        code, report, _ = self._run(capsys, "pp", "--samples", "0")
        assert code == EXIT_USAGE
        assert report is None

    def test_pp_rejects_non_positive_rate(self, capsys):
        code, _, _ = self._run(capsys, "pp", "--rate", "0")
        assert code == EXIT_USAGE

    def test_pp_convergence(self, capsys):
        code, report, _ = self._run(capsys, "pp", "--test", "convergence")
        assert code == EXIT_OK
        assert report["suite"] == "pp-convergence"
        assert len(report["checks"]) == 3

    def test_output_file(self, capsys):
        target = self.temp_dir / "out" / "report.json"
        code = main(["--output", str(target), "validate", self._model(ISING)])
        assert code == EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["valid"] is True


class TestDeterminism:
    """Identical inputs give identical report bodies."""

    def setup_method(self):
        self.temp_dir = Path(tempfile.mkdtemp())
        self.model = self.temp_dir / "tfi.txt"
        self.model.write_text(TFI, encoding="utf-8")

    def teardown_method(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        reset_settings()

    def _report(self, name: str, *argv: str) -> dict:
        target = self.temp_dir / name
        assert main(["--output", str(target), *argv]) in (EXIT_OK, EXIT_FAILED)
        return json.loads(target.read_text(encoding="utf-8"))

    def test_check_reports_repeat(self):
        args = ("check", str(self.model), "--suite", "lemmas", "--region", "1", "--ambient", "0:2")
        first = self._report("a.json", *args)
        second = self._report("b.json", *args)
        assert strip_timing(first) == strip_timing(second)

    def test_worker_count_does_not_change_mc(self):
        args = (
            "gibbs",
            str(self.model),
            "--region",
            "1",
            "--ambient",
            "0:2",
            "--method",
            "mc",
            "--samples",
            "3000",
            "--seed",
            "5",
        )
        single = self._report("one.json", "--workers", "1", *args)
        several = self._report("four.json", "--workers", "4", *args)
        assert strip_timing(single) == strip_timing(several)

    def test_pp_reports_repeat(self):
        args = ("pp", "--rate", "1.5", "--samples", "5000", "--seed", "9")
        assert strip_timing(self._report("a.json", *args)) == strip_timing(
            self._report("b.json", *args)
        )


class TestParseRegion:
    """Test the region flag syntax."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0:2", Region.of(0, 1, 2)),
            ("3, 1", Region.of(1, 3)),
            ("(0, 0); (0, 1)", Region.of((0, 0), (0, 1))),
        ],
    )
    def test_forms(self, text, expected):
        assert parse_region(text) == expected

    def test_garbage(self):
        with pytest.raises(UsageError):
            parse_region("a:b")
