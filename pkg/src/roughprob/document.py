"""JSON space documents.

A document describes one approximation space plus optional named random
variables and events::

    {
      "elements": ["1", "2", "3"],
      "map": {"1": ["1"], "2": ["1", "2"], "3": ["3"]},
      "weights": {"1": "1/2", "2": "1/4", "3": "1/4"},
      "variables": {"U": {"1": "1", "2": "2", "3": "3"}},
      "events": {"A": ["1", "3"]}
    }

Fractions are strings of the form ``-?digits(/digits)?``; they are
canonicalised on load, so ``"2/6"`` reads back as ``"1/3"``.  Unknown
fields anywhere in the document are rejected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Annotated, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer, ValidationError

from .errors import DocumentSyntaxError, RoughError, SchemaError, SpaceError
from .space import ApproximationSpace, Event, Universe, build_space
from .variable import RoughVariable, build_variable

__all__ = [
    "SpaceDocument",
    "parse_fraction",
    "parse_space_document",
    "load_space_document",
    "dump_space_document",
    "fixture_path",
    "FIXTURES",
]

_FRACTION = re.compile(r"-?\d+(/\d+)?")

FIXTURES = ("example_2_1.json", "identity_map.json")


def parse_fraction(text) -> Fraction:
    """Parse a fraction string; reject floats, bare numbers and zero denominators."""
    if not isinstance(text, str):
        raise ValueError(f"fraction must be a string like \"1/6\", got {type(text).__name__}")
    if not _FRACTION.fullmatch(text):
        raise ValueError(f"malformed fraction {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def _fraction_field(value) -> Fraction:
    # Fraction objects are exact already; everything else must be a string
    return value if isinstance(value, Fraction) else parse_fraction(value)


FractionStr = Annotated[Fraction, BeforeValidator(_fraction_field), PlainSerializer(str, return_type=str)]


class SpaceDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True, frozen=True, arbitrary_types_allowed=True)

    elements: list[str]
    map: dict[str, list[str]]
    weights: Optional[dict[str, FractionStr]] = None
    variables: dict[str, dict[str, FractionStr]] = {}
    events: dict[str, list[str]] = {}

    def space(self) -> ApproximationSpace:
        return build_space(self.elements, self.map, self.weights)

    def variable(self, name: str, space: ApproximationSpace | None = None) -> RoughVariable:
        return build_variable(space or self.space(), self.variables[name])

    def event(self, name: str, space: ApproximationSpace | None = None) -> Event:
        return (space or self.space()).universe.event(self.events[name])


def _location(loc: tuple) -> str:
    return ".".join(str(part) for part in loc) or "document"


def parse_space_document(text: str | bytes) -> SpaceDocument:
    """Parse and fully validate a document.

    Raises :class:`DocumentSyntaxError` for malformed JSON (with
    ``line:column``), :class:`SchemaError` for structural problems, and the
    matching :class:`SpaceError` subclass, tagged with the offending field,
    when the content does not form a valid space, variable or event.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"not UTF-8: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, f"{exc.lineno}:{exc.colno}") from None
    if not isinstance(raw, dict):
        raise SchemaError("top level must be an object", "document")
    try:
        doc = SpaceDocument.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise SchemaError(first["msg"], _location(first["loc"])) from None

    missing = [label for label in doc.elements if label not in doc.map]
    if missing:
        raise SchemaError(f"no image given for {missing[0]!r}", "map")

    # validate in stages so each failure names the field responsible
    stages = (("elements", lambda: Universe(tuple(doc.elements))),
              ("map", lambda: build_space(doc.elements, doc.map)),
              ("weights", doc.space))
    for field, stage in stages:
        try:
            space = stage()
        except SpaceError as exc:
            raise type(exc)(exc.message, field) from None
    for name, values in doc.variables.items():
        try:
            build_variable(space, values)
        except SpaceError as exc:
            raise type(exc)(exc.message, f"variables.{name}") from None
    for name, labels in doc.events.items():
        try:
            space.universe.event(labels)
        except SpaceError as exc:
            raise type(exc)(exc.message, f"events.{name}") from None
    return doc


def load_space_document(path: str | Path) -> SpaceDocument:
    """Read a document from ``path``; a bare shipped fixture name also works."""
    path = Path(path)
    if not path.exists() and path.name in FIXTURES and path.parent == Path("."):
        path = fixture_path(path.name)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise DocumentSyntaxError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_space_document(data)
    except RoughError as exc:
        exc.args = (f"{path}: {exc}",)
        raise


def dump_space_document(doc: SpaceDocument) -> str:
    """Canonical JSON text; :func:`parse_space_document` inverts it."""
    data = doc.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def fixture_path(name: str) -> Path:
    """Filesystem path of a fixture shipped with the package."""
    if name not in FIXTURES:
        raise KeyError(name)
    return Path(str(resources.files("roughprob") / "fixtures" / name))
