"""
Model-file parser.

Line-oriented structured text::

    # nearest-neighbour Ising chain with a transverse field
    model q=2 d=1 range=1
    term A=[0, 1] B=[] c=(-1.0, 0.0)
    term A=[] B=[0] c=(-0.5, 0.0)

Sites are integers for d = 1 and tuples otherwise; ``c`` is a (re, im) pair
or a real literal. Syntax errors raise ModelParseError with the line number;
admissibility violations are returned with the line of the offending term.
"""

import ast
import hashlib
import logging
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from ...core.errors import ModelParseError
from ..groupoid import Region, SpinModel, as_site
from .encoding import EncodingDetector
from .interaction import Interaction, PauliTerm, Violation, validate

logger = logging.getLogger(__name__)

DIRECTIVE_PATTERN = re.compile(r"^(?P<directive>\w+)\b\s*(?P<body>.*)$")
FIELD_PATTERN = re.compile(r"(?P<key>\w+)\s*=\s*(?P<value>\[[^\]]*\]|\([^)]*\)|\S+)")

HEADER_FIELDS = ("q", "d", "range")
TERM_FIELDS = ("A", "B", "c")


@dataclass
class ParsedModel:
    """Interaction read from a model file, with line-numbered diagnostics."""

    interaction: Interaction
    violations: list[Violation] = field(default_factory=list)
    term_lines: dict[tuple[Region, Region], int] = field(default_factory=dict)
    digest: str = ""
    encoding: str = "utf-8"
    source: str = "<string>"

    @property
    def is_valid(self) -> bool:
        return not self.violations


def _fields(body: str, expected: tuple[str, ...], line_number: int) -> dict[str, str]:
    found: dict[str, str] = {}
    consumed = 0
    for match in FIELD_PATTERN.finditer(body):
        if body[consumed : match.start()].strip():
            raise ModelParseError(f"Unexpected text {body[consumed:match.start()].strip()!r}", line_number)
        key = match.group("key")
        if key not in expected:
            raise ModelParseError(f"Unknown field {key!r}", line_number)
        if key in found:
            raise ModelParseError(f"Duplicate field {key!r}", line_number)
        found[key] = match.group("value")
        consumed = match.end()
    if body[consumed:].strip():
        raise ModelParseError(f"Unexpected text {body[consumed:].strip()!r}", line_number)
    missing = [k for k in expected if k not in found]
    if missing:
        raise ModelParseError(f"Missing field(s) {', '.join(missing)}", line_number)
    return found


def _literal(text: str, line_number: int) -> Any:
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError) as e:
        raise ModelParseError(f"Malformed literal {text!r}", line_number, e) from e


def _parse_sites(text: str, dimension: int, line_number: int) -> Region:
    value = _literal(text, line_number)
    if not isinstance(value, (list, tuple)):
        raise ModelParseError(f"Site list expected, got {text!r}", line_number)
    sites = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, tuple, list)):
            raise ModelParseError(f"Invalid site {item!r}", line_number)
        if isinstance(item, (tuple, list)) and not all(
            isinstance(c, int) and not isinstance(c, bool) for c in item
        ):
            raise ModelParseError(f"Invalid site {item!r}", line_number)
        site = as_site(item)
        if len(site) != dimension:
            raise ModelParseError(
                f"Site {item!r} has dimension {len(site)}, model has d = {dimension}",
                line_number,
            )
        sites.append(site)
    if len(set(sites)) != len(sites):
        raise ModelParseError(f"Repeated site in {text!r}", line_number)
    return Region(tuple(sites))


def _parse_coefficient(text: str, line_number: int) -> complex:
    value = _literal(text, line_number)
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value, 0.0)
    if (
        isinstance(value, tuple)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ModelParseError(f"Coefficient must be (re, im), got {text!r}", line_number)


def _parse_header(body: str, line_number: int) -> tuple[SpinModel, float]:
    values = _fields(body, HEADER_FIELDS, line_number)
    try:
        q, d, radius = int(values["q"]), int(values["d"]), float(values["range"])
        model = SpinModel(q=q, dimension=d)
    except ValueError as e:
        raise ModelParseError(f"Invalid model header: {e}", line_number, e) from e
    if radius < 0:
        raise ModelParseError("Negative interaction range", line_number)
    return model, radius


def parse_model(text: str, source: str = "<string>") -> ParsedModel:
    """
    Parse model-file text.

    Raises:
        ModelParseError: On a missing or repeated header, unknown directives or
            malformed fields
    """
    model: SpinModel | None = None
    radius = 0.0
    terms: list[PauliTerm] = []
    term_lines: dict[tuple[Region, Region], int] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = DIRECTIVE_PATTERN.match(line)
        if not match:
            raise ModelParseError(f"Cannot parse {line!r}", line_number)
        directive, body = match.group("directive"), match.group("body")

        if directive == "model":
            if model is not None:
                raise ModelParseError("Repeated model header", line_number)
            model, radius = _parse_header(body, line_number)
        elif directive == "term":
            if model is None:
                raise ModelParseError("Term before model header", line_number)
            values = _fields(body, TERM_FIELDS, line_number)
            a = _parse_sites(values["A"], model.dimension, line_number)
            b = _parse_sites(values["B"], model.dimension, line_number)
            c = _parse_coefficient(values["c"], line_number)
            terms.append(PauliTerm(a, b, c))
            term_lines.setdefault((a, b), line_number)
        else:
            raise ModelParseError(f"Unknown directive {directive!r}", line_number)

    if model is None:
        raise ModelParseError("Missing model header")

    interaction = Interaction(terms, range=radius, model=model)
    violations = [
        replace(v, line_number=term_lines.get(v.term.key, 0)) if v.term else v
        for v in validate(interaction)
    ]
    logger.debug(f"Parsed {source}: {len(interaction)} terms, {len(violations)} violations")
    return ParsedModel(interaction, violations, term_lines, source=source)


def load_model(path: Path | str) -> ParsedModel:
    """
    Read, decode and parse a model file.

    Raises:
        FileNotFoundError: If the file does not exist
        ModelParseError: If the content is binary or malformed
    """
    file_path = Path(path)
    data = file_path.read_bytes()
    detector = EncodingDetector()
    if detector.is_binary_data(data):
        raise ModelParseError(f"{file_path} does not look like a text model file")
    text, encoding = detector.decode(data)
    parsed = parse_model(text, source=str(file_path))
    parsed.digest = hashlib.sha256(data).hexdigest()
    parsed.encoding = encoding
    return parsed


def _format_sites(region: Region) -> str:
    if region.dimension in (None, 1):
        return "[" + ", ".join(str(s[0]) for s in region.sites) + "]"
    return "[" + ", ".join(str(s) for s in region.sites) + "]"


def format_model(phi: Interaction) -> str:
    """Model-file text for ``phi``; parse_model reads it back unchanged."""
    lines = [f"model q={phi.model.q} d={phi.model.dimension} range={phi.range!r}"]
    for term in phi.terms:
        c = term.coefficient
        lines.append(
            f"term A={_format_sites(term.sign_sites)} B={_format_sites(term.flip_sites)} "
            f"c=({c.real!r}, {c.imag!r})"
        )
    return "\n".join(lines) + "\n"
