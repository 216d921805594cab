"""
Tests for EncodingDetector.

Tests BOM handling, binary detection and decoding fallbacks.
"""

from unittest.mock import patch

from spinpath.components.interaction import EncodingDetector


class TestEncodingDetector:

    def setup_method(self):
        """Set up test fixtures."""
        self.detector = EncodingDetector()

    def test_empty_data(self):
        assert self.detector.detect(b"") == ("utf-8", 1.0)

    def test_ascii_is_utf8(self):
        assert self.detector.detect(b"model q=2 d=1 range=1\n") == ("utf-8", 1.0)

    def test_bom_wins(self):
        assert self.detector.detect(b"\xef\xbb\xbfmodel") == ("utf-8-sig", 1.0)
        assert self.detector.detect("model".encode("utf-16")) == ("utf-16", 1.0)

    def test_utf8_roundtrip(self):
        content = "# Ising, coupling J = −1\nmodel q=2 d=1 range=1\n"
        text, _ = self.detector.decode(content.encode("utf-8"))
        assert text == content

    def test_newlines_normalized(self):
        text, _ = self.detector.decode(b"a\r\nb\rc\n")
        assert text == "a\nb\nc\n"

    def test_chardet_failure_falls_back(self):
        with patch("spinpath.components.interaction.encoding.chardet.detect") as mock_detect:
            mock_detect.side_effect = RuntimeError("boom")
            encoding, confidence = self.detector.detect("café".encode("utf-8"))
        assert encoding == "utf-8"
        assert confidence == 1.0

    def test_low_confidence_guess_is_ignored(self):
        with patch("spinpath.components.interaction.encoding.chardet.detect") as mock_detect:
            mock_detect.return_value = {"encoding": "koi8-r", "confidence": 0.2}
            encoding, _ = self.detector.detect(b"caf\xe9!")
        assert encoding == "latin-1"

    def test_binary_detection(self):
        assert self.detector.is_binary_data(b"\x00\x00abc")
        assert self.detector.is_binary_data(bytes(range(1, 9)) * 8)
        assert not self.detector.is_binary_data(b"term A=[0] B=[] c=1\n")
        assert not self.detector.is_binary_data(b"")

    def test_confidence_is_clamped(self):
        assert EncodingDetector(min_confidence=3.0).min_confidence == 1.0
