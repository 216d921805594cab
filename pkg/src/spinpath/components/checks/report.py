"""
Deterministic JSON reports.

Keys keep insertion order, complex numbers are [re, im] pairs, matrices are
row-major lists of such pairs and floats are written at full round-trip
precision. Runtimes live in the manifest's ``timing`` block, which is the
only part of a report that may differ between identical runs.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ... import __version__
from ...core.interfaces import CheckResult


def model_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def encode_float(value: float) -> float | str:
    """Floats at 17 significant digits; non-finite values as strings."""
    value = float(value)
    if math.isfinite(value):
        return float(f"{value:.17g}")
    return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")


def encode_complex(value: complex) -> list[float | str]:
    value = complex(value)
    return [encode_float(value.real), encode_float(value.imag)]


def encode_matrix(matrix: np.ndarray) -> list[list[list[float | str]]]:
    return [[encode_complex(entry) for entry in row] for row in np.asarray(matrix)]


def to_jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, (float, np.floating)):
        return encode_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        if value.ndim == 2:
            return encode_matrix(value)
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


@dataclass
class RunManifest:
    """
    Provenance of a run.

    ``timing`` holds the wall time and per-check runtimes.
    """

    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    model_digest: str | None = None
    version: str = __version__
    timing: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tool": "spinpath",
            "version": self.version,
            "command": self.command,
            "model_digest": self.model_digest,
            "parameters": to_jsonable(self.parameters),
            "timing": to_jsonable(self.timing),
        }


def check_entry(result: CheckResult) -> dict[str, Any]:
    return {
        "name": result.name,
        "instance": result.instance,
        "residual": encode_float(result.residual),
        "tolerance": encode_float(result.tolerance),
        "passed": bool(result.passed),
        "seed": result.seed,
    }


def check_report(manifest: RunManifest, suite: str, results: list[CheckResult]) -> dict[str, Any]:
    manifest.timing.setdefault("checks", {})
    for result in results:
        manifest.timing["checks"][result.name] = result.runtime
    failed = [r.name for r in results if not r.passed]
    return {
        "manifest": manifest.to_dict(),
        "suite": suite,
        "checks": [check_entry(r) for r in results],
        "summary": {"passed": len(results) - len(failed), "failed": failed},
    }


def build_report(manifest: RunManifest, body: dict[str, Any]) -> dict[str, Any]:
    return {"manifest": manifest.to_dict(), **to_jsonable(body)}


def render_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def strip_timing(report: dict[str, Any]) -> dict[str, Any]:
    """The report body covered by the determinism contract."""
    manifest = {k: v for k, v in report.get("manifest", {}).items() if k != "timing"}
    return {**report, "manifest": manifest}


def write_report(text: str, output: Path | None) -> None:
    if output is None:
        print(text, end="")
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
