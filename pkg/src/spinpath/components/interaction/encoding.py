"""
Encoding detection for model files.

Model files are plain text but arrive from many editors; chardet guesses the
encoding, byte-order marks win over guesses, and a short fallback list keeps
undetectable files readable.
"""

import logging

import chardet

logger = logging.getLogger(__name__)


class EncodingDetector:
    """
    Decode model-file bytes with chardet and fallback strategies.
    """

    FALLBACK_ENCODINGS = ["utf-8", "utf-16", "latin-1", "cp1252"]
    MIN_CONFIDENCE = 0.7
    BOM_ENCODINGS = [
        (b"\xef\xbb\xbf", "utf-8-sig"),
        (b"\xff\xfe\x00\x00", "utf-32-le"),
        (b"\x00\x00\xfe\xff", "utf-32-be"),
        (b"\xff\xfe", "utf-16"),
        (b"\xfe\xff", "utf-16"),
    ]

    def __init__(self, min_confidence: float = MIN_CONFIDENCE) -> None:
        self.min_confidence = max(0.0, min(1.0, min_confidence))

    def get_bom_encoding(self, data: bytes) -> str | None:
        for bom, encoding in self.BOM_ENCODINGS:
            if data.startswith(bom):
                return encoding
        return None

    def detect(self, data: bytes) -> tuple[str, float]:
        """
        Returns:
            (encoding, confidence) for the given bytes
        """
        if not data:
            return "utf-8", 1.0

        bom = self.get_bom_encoding(data)
        if bom:
            return bom, 1.0

        try:
            data.decode("ascii")
            return "utf-8", 1.0
        except UnicodeDecodeError:
            pass

        try:
            result = chardet.detect(data)
        except Exception as e:
            logger.debug(f"Chardet detection failed: {e}")
            result = None

        if result and result.get("encoding"):
            confidence = float(result.get("confidence") or 0.0)
            encoding = self._normalize_encoding_name(result["encoding"])
            logger.debug(f"Chardet result: {encoding} (confidence: {confidence:.2f})")
            if confidence >= self.min_confidence and self._can_decode(data, encoding):
                return encoding, confidence

        for position, encoding in enumerate(self.FALLBACK_ENCODINGS):
            if self._can_decode(data, encoding):
                return encoding, max(0.1, 1.0 - 0.2 * position)

        return "latin-1", 0.1

    def decode(self, data: bytes) -> tuple[str, str]:
        """
        Returns:
            (text, encoding) with universal newlines applied
        """
        encoding, confidence = self.detect(data)
        if confidence < self.min_confidence:
            logger.warning(f"Low-confidence encoding guess {encoding} ({confidence:.2f})")
        text = data.decode(encoding, errors="replace")
        return text.replace("\r\n", "\n").replace("\r", "\n"), encoding

    def is_binary_data(self, data: bytes) -> bool:
        if not data or self.get_bom_encoding(data):
            return False
        sample = data[:512]
        control = sum(1 for byte in sample if byte < 32 and byte not in (9, 10, 13))
        return b"\x00\x00" in data or control / len(sample) > 0.1

    def _can_decode(self, data: bytes, encoding: str) -> bool:
        try:
            data.decode(encoding)
            return True
        except (UnicodeDecodeError, LookupError):
            return False

    def _normalize_encoding_name(self, encoding: str) -> str:
        encoding = encoding.lower().replace("_", "-")
        normalizations = {
            "utf8": "utf-8",
            "utf16": "utf-16",
            "ascii": "utf-8",
            "iso8859-1": "iso-8859-1",
            "windows-1252": "cp1252",
        }
        return normalizations.get(encoding, encoding)
