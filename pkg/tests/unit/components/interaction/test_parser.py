"""
Tests for the model-file parser and loader.
"""

import hashlib
import shutil
import tempfile
from pathlib import Path

import pytest

from spinpath.components.groupoid import Region
from spinpath.components.interaction import (
    format_model,
    load_model,
    parse_model,
    transverse_field_ising,
)
from spinpath.core.errors import ModelParseError

TFI = """\
# transverse-field Ising on three sites
model q=2 d=1 range=1
term A=[0, 1] B=[] c=(-1.0, 0.0)
term A=[1, 2] B=[] c=-1.0
term A=[] B=[1] c=(-0.5, 0.0)
"""


class TestParseModel:
    """Test parsing of model-file text."""

    def test_valid_model(self):
        parsed = parse_model(TFI)
        phi = parsed.interaction
        assert parsed.is_valid
        assert len(phi) == 3
        assert phi.range == 1.0
        assert phi.coefficient([0, 1], []) == -1.0
        assert phi.coefficient([], [1]) == -0.5
        assert parsed.term_lines[(Region(), Region.of(1))] == 5

    def test_two_dimensional_sites(self):
        text = "model q=2 d=2 range=1\nterm A=[(0, 0), (0, 1)] B=[] c=-1.0\n"
        phi = parse_model(text).interaction
        assert phi.model.dimension == 2
        assert phi.coefficient([(0, 0), (0, 1)], []) == -1.0

    def test_violations_carry_line_numbers(self):
        text = "model q=2 d=1 range=1\n\nterm A=[0] B=[] c=(0.0, 1.0)\nterm A=[0, 3] B=[] c=1\n"
        parsed = parse_model(text)
        assert not parsed.is_valid
        by_kind = {v.kind: v.line_number for v in parsed.violations}
        assert by_kind == {"self-adjoint": 3, "range": 4}
        assert str(parsed.violations[0]).startswith("line ")

    @pytest.mark.parametrize(
        "text,line",
        [
            ("term A=[0] B=[] c=1\n", 1),
            ("model q=2 d=1 range=1\nmodel q=2 d=1 range=1\n", 2),
            ("model q=2 d=1 range=1\nfield A=[0]\n", 2),
            ("model q=2 d=1 range=1\nterm A=[0] B=[] c=1 D=[]\n", 2),
            ("model q=2 d=1 range=1\nterm A=[0] c=1\n", 2),
            ("model q=2 d=1 range=1\nterm A=[0 B=[] c=1\n", 2),
            ("model q=2 d=1 range=1\nterm A=[0, 0] B=[] c=1\n", 2),
            ("model q=2 d=1 range=1\nterm A=[(0, 1)] B=[] c=1\n", 2),
            ("model q=2 d=1 range=1\nterm A=[0] B=[] c='x'\n", 2),
            ("model q=2 d=1 range=-1\n", 1),
            ("model q=1 d=1 range=1\n", 1),
        ],
    )
    def test_syntax_errors(self, text, line):
        with pytest.raises(ModelParseError) as excinfo:
            parse_model(text)
        assert excinfo.value.line_number == line

    def test_missing_header(self):
        with pytest.raises(ModelParseError, match="Missing model header"):
            parse_model("# nothing here\n")

    def test_format_is_read_back(self):
        phi = transverse_field_ising(Region.box(0, 2), transverse=0.25, field=0.1)
        reparsed = parse_model(format_model(phi)).interaction
        assert reparsed.terms == phi.terms
        assert reparsed.range == phi.range


class TestLoadModel:
    """Test reading model files from disk."""

    def setup_method(self):
        self.temp_dir = Path(tempfile.mkdtemp())

    def teardown_method(self):
        if self.temp_dir.exists():
            shutil.rmtree(self.temp_dir)

    def test_load_records_digest_and_encoding(self):
        path = self.temp_dir / "tfi.model"
        path.write_text(TFI, encoding="utf-8")

        parsed = load_model(path)

        assert parsed.digest == hashlib.sha256(TFI.encode()).hexdigest()
        assert parsed.encoding == "utf-8"
        assert parsed.source == str(path)
        assert len(parsed.interaction) == 3

    def test_load_with_bom_and_crlf(self):
        path = self.temp_dir / "bom.model"
        path.write_bytes(b"\xef\xbb\xbf" + TFI.replace("\n", "\r\n").encode())

        parsed = load_model(path)

        assert parsed.encoding == "utf-8-sig"
        assert len(parsed.interaction) == 3

    def test_binary_file_rejected(self):
        path = self.temp_dir / "binary.model"
        path.write_bytes(b"\x00\x00\x01\x02" * 64)
        with pytest.raises(ModelParseError):
            load_model(path)

    def test_missing_file(self):
        with pytest.raises(FileNotFoundError):
            load_model(self.temp_dir / "absent.model")
